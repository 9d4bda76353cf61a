// overair/audio.h

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

#ifndef OVERAIR_AUDIO_H_
#define OVERAIR_AUDIO_H_

#include <cstddef>
#include <limits>
#include <vector>

namespace overair {

// Every pipeline in the toolkit runs at one canonical rate; mixed-rate
// operations are rejected rather than resampled.
constexpr int kCanonicalSampleRate = 16000;

// Mono sampled waveform. Amplitudes are dimensionless with nominal range
// [-1, 1]; values outside the range are legal in memory and only clipped
// when written to 16-bit PCM.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = kCanonicalSampleRate;

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

class Rng;

// signal + i.i.d. N(0, sigma^2) draws from the given source. sigma == 0
// returns the input unchanged; sigma < 0 is an error.
std::vector<double> add_noise(const std::vector<double>& signal, double sigma,
                              Rng* rng);

// Mean of squares over the whole signal. Errors on empty input.
double power(const std::vector<double>& signal);

// Returned by snr_db when the perturbation has zero power.
constexpr double kInfiniteSnrDb = std::numeric_limits<double>::infinity();

// 10 * log10(P_x / P_v). Zero perturbation power yields kInfiniteSnrDb.
double snr_db(const std::vector<double>& x, const std::vector<double>& v);

}  // namespace overair

#endif  // OVERAIR_AUDIO_H_
