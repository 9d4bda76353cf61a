// overair/train.h

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

#ifndef OVERAIR_TRAIN_H_
#define OVERAIR_TRAIN_H_

#include <cstdint>
#include <vector>

#include "overair/corpus.h"
#include "overair/model.h"

namespace overair {

struct TrainConfig {
  int epochs = 36;
  int batch_size = 16;
  double learning_rate = 2e-3;
  // Per-utterance augmentation, drawn fresh every epoch: a uniform gain in
  // +-gain_jitter_db and additive Gaussian noise. Makes the recognizer
  // tolerate the playback channel's loudness jitter and noise floor.
  double gain_jitter_db = 6.0;
  double noise_sigma = 0.01;
  uint64_t seed = 1;
};

struct TrainResult {
  std::vector<double> epoch_loss;  // mean CTC loss per epoch
};

// Adam training on CTC loss. Deterministic per seed for any job count:
// utterance gradients are computed in parallel into indexed slots and summed
// in index order. Aborts with diagnostics when the loss turns non-finite.
// Zero epochs returns the initialization untouched.
TrainResult train(SurrogateModel* model, const std::vector<LabeledClip>& corpus,
                  const TrainConfig& cfg);

// Fraction of clips whose greedy decode matches their phrase exactly.
double decode_accuracy(const SurrogateModel& model,
                       const std::vector<LabeledClip>& clips);

}  // namespace overair

#endif  // OVERAIR_TRAIN_H_
