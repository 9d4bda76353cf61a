// overair/fir.h

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

#ifndef OVERAIR_FIR_H_
#define OVERAIR_FIR_H_

#include <vector>

namespace overair {

// Linear-phase FIR band-pass. Taps are odd in count and exactly symmetric
// about the center, so the centered application below is self-adjoint.
struct FirFilter {
  std::vector<double> taps;
  double low_hz = 0.0;
  double high_hz = 0.0;
  int sample_rate = 0;

  std::size_t group_delay() const { return (taps.size() - 1) / 2; }
};

// Windowed-sinc (Blackman) band-pass design. num_taps must be odd and the
// band must satisfy 0 < low_hz < high_hz < sample_rate / 2.
FirFilter design_bandpass(double low_hz, double high_hz, int sample_rate,
                          int num_taps);

// Filters the signal with group delay compensated: the output keeps the input
// length and stays time-aligned with it.
std::vector<double> apply_fir(const std::vector<double>& signal,
                              const FirFilter& filter);

// Adjoint of apply_fir in the signal argument (correlation with the taps).
// Coincides with apply_fir for symmetric taps.
std::vector<double> apply_fir_adjoint(const std::vector<double>& grad,
                                      const FirFilter& filter);

// Magnitude response at the given frequency, measured directly from the taps.
double fir_gain_at(const FirFilter& filter, double freq_hz);

}  // namespace overair

#endif  // OVERAIR_FIR_H_
