// overair/mfcc.h

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

#ifndef OVERAIR_MFCC_H_
#define OVERAIR_MFCC_H_

#include <vector>

#include "overair/matrix.h"

namespace overair {

// Front-end geometry and knobs. Defaults: 25 ms frames, 10 ms hop, HTK mel
// scale, Hann window, orthonormal DCT-II. No pre-emphasis, no liftering.
struct MfccConfig {
  int frame_length = 400;
  int hop = 160;
  int fft_size = 512;
  int num_mel_filters = 26;
  int num_coefficients = 13;
  double log_floor = 1e-10;
  int sample_rate = 16000;
};

// values is [num_frames x num_coefficients]; the frame geometry rides along
// so downstream code can map frames back to sample positions.
struct FeatureMatrix {
  Matrix values;
  int frame_length = 0;
  int hop = 0;
};

// Number of complete frames: 1 + floor((len - frame_length) / hop).
int mfcc_num_frames(std::size_t signal_len, const MfccConfig& cfg);

// Differentiable MFCC pipeline with precomputed window, filterbank, and DCT
// tables. Forward and the exact vector-Jacobian product share the tables.
class MfccExtractor {
 public:
  explicit MfccExtractor(const MfccConfig& cfg);

  const MfccConfig& config() const { return cfg_; }

  // Center frequency of mel filter m (peak of its triangle), in Hz.
  double filter_center_hz(int m) const;

  // Per frame: Hann window -> zero-padded FFT -> power spectrum -> triangular
  // mel filterbank -> ln(max(., log_floor)) -> DCT-II, first coefficients.
  // Frames are independent; evaluation is bit-identical for any job count.
  FeatureMatrix forward(const std::vector<double>& signal) const;

  // d(sum upstream.values (.) forward(signal)) / d(signal). Floored
  // filterbank outputs contribute zero gradient.
  std::vector<double> vjp(const std::vector<double>& signal,
                          const FeatureMatrix& upstream) const;

 private:
  void frame_forward(const double* frame, double* coeffs,
                     std::vector<double>* scratch_power,
                     std::vector<double>* scratch_energy) const;

  MfccConfig cfg_;
  std::vector<double> window_;
  std::vector<double> dct_;          // [num_coefficients x num_mel_filters]
  std::vector<int> filter_start_;    // first FFT bin of each filter
  std::vector<std::vector<double>> filter_weights_;
  std::vector<double> filter_center_hz_;
};

// One-shot conveniences over a throwaway extractor.
FeatureMatrix mfcc_forward(const std::vector<double>& signal, const MfccConfig& cfg);
std::vector<double> mfcc_vjp(const std::vector<double>& signal, const MfccConfig& cfg,
                             const FeatureMatrix& upstream);

}  // namespace overair

#endif  // OVERAIR_MFCC_H_
