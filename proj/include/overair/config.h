// overair/config.h

// Copyright 2026  Overair Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef OVERAIR_CONFIG_H_
#define OVERAIR_CONFIG_H_

#include <string>
#include <vector>

#include "overair/attack.h"
#include "overair/corpus.h"
#include "overair/mfcc.h"
#include "overair/train.h"

namespace overair {

// Whole-toolkit configuration, loadable from one JSON file. Unknown keys are
// rejected with the offending path named. Seeds are not part of the file;
// all randomness flows from the command line --seed.
struct RunConfig {
  SyntheticCorpusConfig corpus;
  double corpus_holdout_fraction = 0.2;

  int model_hidden = 128;
  MfccConfig mfcc;

  TrainConfig train;

  int channel_train_irs = 64;
  int channel_eval_irs = 16;
  uint64_t channel_train_seed_base = 100000;
  uint64_t channel_eval_seed_base = 900000;
  double channel_noise_sigma = 0.01;
  double channel_gain_jitter_db = 3.0;
  bool channel_device_band = true;
  double channel_device_low_hz = 100.0;
  double channel_device_high_hz = 7500.0;
  std::vector<double> channel_rt60_grid = {0.1, 0.2, 0.3, 0.5};
  double channel_direct_ratio = 0.6;

  AttackConfig attack;

  int eval_trials = 100;
};

RunConfig load_run_config(const std::string& path);

// Strata built from the configured rt60 grid and direct ratio.
std::vector<IrSynthesisParams> config_ir_strata(const RunConfig& cfg);

}  // namespace overair

#endif  // OVERAIR_CONFIG_H_
