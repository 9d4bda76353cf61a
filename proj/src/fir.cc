// overair/fir.cc

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

#include "overair/fir.h"

#include <cmath>
#include <complex>

#include "overair/error.h"
#include "overair/fft.h"

namespace overair {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

double blackman(std::size_t i, std::size_t n) {
  const double u = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n - 1);
  return 0.42 - 0.5 * std::cos(u) + 0.08 * std::cos(2.0 * u);
}

}  // namespace

FirFilter design_bandpass(double low_hz, double high_hz, int sample_rate,
                          int num_taps) {
  if (sample_rate <= 0 || !(low_hz > 0.0) || !(low_hz < high_hz) ||
      !(high_hz < sample_rate / 2.0)) {
    throw Error(ErrorKind::kDomain, "design_bandpass: invalid band");
  }
  if (num_taps < 3 || num_taps % 2 == 0) {
    throw Error(ErrorKind::kDomain, "design_bandpass: tap count must be odd and >= 3");
  }

  // Cutoffs sit half a transition width inside the requested band, putting
  // the stopband edges at low_hz/high_hz: everything outside [low, high]
  // is attenuated by the full stopband depth, not by a half-open transition.
  const double transition_hz = 6.0 * static_cast<double>(sample_rate) / num_taps;
  const double cut_low = low_hz + 0.5 * transition_hz;
  const double cut_high = high_hz - 0.5 * transition_hz;
  if (!(cut_low < cut_high)) {
    throw Error(ErrorKind::kDomain, "design_bandpass: band too narrow for the tap count");
  }

  FirFilter filter;
  filter.low_hz = low_hz;
  filter.high_hz = high_hz;
  filter.sample_rate = sample_rate;
  filter.taps.assign(num_taps, 0.0);

  const std::size_t n = static_cast<std::size_t>(num_taps);
  const std::size_t center = (n - 1) / 2;
  const double fl = cut_low / sample_rate;  // normalized, cycles per sample
  const double fh = cut_high / sample_rate;

  // Compute one half and mirror it so the symmetry is exact in floating point.
  for (std::size_t i = 0; i <= center; ++i) {
    const double t = static_cast<double>(i) - static_cast<double>(center);
    const double ideal = 2.0 * fh * sinc(2.0 * fh * t) - 2.0 * fl * sinc(2.0 * fl * t);
    const double tap = ideal * blackman(i, n);
    filter.taps[i] = tap;
    filter.taps[n - 1 - i] = tap;
  }
  return filter;
}

std::vector<double> apply_fir(const std::vector<double>& signal,
                              const FirFilter& filter) {
  if (signal.empty()) {
    throw Error(ErrorKind::kDomain, "apply_fir: empty signal");
  }
  const std::size_t delay = filter.group_delay();
  std::vector<double> full = fft_convolve_full(signal, filter.taps);
  std::vector<double> out(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) out[i] = full[i + delay];
  return out;
}

std::vector<double> apply_fir_adjoint(const std::vector<double>& grad,
                                      const FirFilter& filter) {
  if (grad.empty()) {
    throw Error(ErrorKind::kDomain, "apply_fir_adjoint: empty gradient");
  }
  const std::size_t delay = filter.group_delay();
  std::vector<double> reversed(filter.taps.rbegin(), filter.taps.rend());
  std::vector<double> full = fft_convolve_full(grad, reversed);
  std::vector<double> out(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) out[i] = full[i + delay];
  return out;
}

double fir_gain_at(const FirFilter& filter, double freq_hz) {
  // Direct DTFT of the taps; exact at any frequency, no padding grid.
  const double omega = 2.0 * M_PI * freq_hz / filter.sample_rate;
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = 0; k < filter.taps.size(); ++k) {
    acc += filter.taps[k] * std::polar(1.0, -omega * static_cast<double>(k));
  }
  return std::abs(acc);
}

}  // namespace overair
