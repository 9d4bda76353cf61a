// overair/eval.h

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

#ifndef OVERAIR_EVAL_H_
#define OVERAIR_EVAL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "overair/channel.h"
#include "overair/model.h"

namespace overair {

// Levenshtein distance with unit insert/delete/replace costs.
int edit_distance(const std::string& a, const std::string& b);

// Result of repeated trials of one clip through a channel. Success counts
// only exact transcript matches; any one-character difference is a failure.
struct EvalRecord {
  std::string input_label;
  std::string target;
  double snr_db = 0.0;  // filled by the caller, who knows the perturbation
  int trials = 0;
  double success_rate = 0.0;
  double mean_edit_distance = 0.0;
  std::vector<std::string> decodes;
};

// Runs `trials` independent channel draws, decoding each simulated playback.
// Per-trial seeds derive from the master seed by trial index, so concurrent
// evaluation reproduces the sequential report exactly.
EvalRecord evaluate(const AudioClip& adv, const TargetPhrase& target,
                    const SurrogateModel& model, const ChannelConfig& eval_channel,
                    int trials, uint64_t seed);

}  // namespace overair

#endif  // OVERAIR_EVAL_H_
