// overair/audio.cc

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

#include "overair/audio.h"

#include <cmath>

#include "overair/error.h"
#include "overair/rng.h"

namespace overair {

std::vector<double> add_noise(const std::vector<double>& signal, double sigma,
                              Rng* rng) {
  if (sigma < 0.0) {
    throw Error(ErrorKind::kDomain, "add_noise: negative sigma");
  }
  if (sigma == 0.0) return signal;
  std::vector<double> out(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) {
    out[i] = signal[i] + rng->normal(sigma);
  }
  return out;
}

double power(const std::vector<double>& signal) {
  if (signal.empty()) {
    throw Error(ErrorKind::kDomain, "power: empty signal");
  }
  double sum = 0.0;
  for (double s : signal) sum += s * s;
  return sum / static_cast<double>(signal.size());
}

double snr_db(const std::vector<double>& x, const std::vector<double>& v) {
  const double px = power(x);
  const double pv = power(v);
  if (pv == 0.0) return kInfiniteSnrDb;
  return 10.0 * std::log10(px / pv);
}

}  // namespace overair
