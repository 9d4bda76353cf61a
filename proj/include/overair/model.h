// overair/model.h

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

#ifndef OVERAIR_MODEL_H_
#define OVERAIR_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "overair/alphabet.h"
#include "overair/matrix.h"
#include "overair/mfcc.h"

namespace overair {

// Parameters of the recognizer: input projection, unidirectional tanh
// recurrence, output projection. Stored row-major.
struct ModelParams {
  int input_dim = 0;
  int hidden = 0;
  int num_classes = 0;
  std::vector<double> w_in;   // [hidden x input_dim]
  std::vector<double> w_rec;  // [hidden x hidden]
  std::vector<double> bias;   // [hidden]
  std::vector<double> w_out;  // [num_classes x hidden]
  std::vector<double> b_out;  // [num_classes]

  std::size_t count() const;
  std::vector<double> flatten() const;
  void unflatten(const std::vector<double>& flat);
};

// Gradients share the parameter layout.
using ModelGrads = ModelParams;

// Small recurrent CTC acoustic model over MFCC features. Immutable once
// trained; forward and gradient evaluation are const and safe to share
// across concurrent workers.
class SurrogateModel {
 public:
  static constexpr const char* kVersionTag = "overair-rnn-ctc-v1";

  SurrogateModel(const MfccConfig& mfcc_cfg, const Alphabet& alphabet,
                 int hidden_size, uint64_t init_seed);

  const Alphabet& alphabet() const { return alphabet_; }
  const MfccConfig& mfcc_config() const { return mfcc_.config(); }
  const MfccExtractor& extractor() const { return mfcc_; }
  const ModelParams& params() const { return params_; }
  ModelParams& mutable_params() { return params_; }
  const std::string& version() const { return version_; }

  // Per-frame logits [T x num_classes]. When hidden_cache is non-null the
  // hidden states are recorded for backpropagation.
  Matrix forward(const FeatureMatrix& features, Matrix* hidden_cache = nullptr) const;

  // Backpropagation through time. Returns d(loss)/d(features); accumulates
  // parameter gradients into *grads when non-null.
  Matrix backward(const FeatureMatrix& features, const Matrix& hidden_cache,
                  const Matrix& dlogits, ModelGrads* grads) const;

  // Full chain loss: MFCC -> recurrence -> CTC for the given labels.
  double loss_wav(const std::vector<double>& waveform,
                  const std::vector<int>& labels) const;

  // Same, plus the exact waveform gradient (CTC -> BPTT -> MFCC adjoint).
  double loss_and_grad_wav(const std::vector<double>& waveform,
                           const std::vector<int>& labels,
                           std::vector<double>* grad) const;

  std::string decode_wav(const std::vector<double>& waveform) const;

  void save(const std::string& path) const;
  static SurrogateModel load(const std::string& path);

 private:
  MfccExtractor mfcc_;
  Alphabet alphabet_;
  ModelParams params_;
  std::string version_;
};

ModelGrads zero_grads_like(const ModelParams& params);

}  // namespace overair

#endif  // OVERAIR_MODEL_H_
