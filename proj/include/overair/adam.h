// overair/adam.h

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

#ifndef OVERAIR_ADAM_H_
#define OVERAIR_ADAM_H_

#include <cstddef>
#include <vector>

namespace overair {

// Adam moment buffers for one optimized vector.
struct AdamState {
  std::vector<double> m;  // first moment
  std::vector<double> u;  // second moment
  long long t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double stability = 1e-8;

  explicit AdamState(std::size_t n) : m(n, 0.0), u(n, 0.0) {}
};

// One bias-corrected Adam update in place. When max_norm > 0 each coordinate
// of x is clamped into [-max_norm, max_norm] after the step. Errors on
// non-finite gradient entries.
void adam_step(AdamState* state, std::vector<double>* x,
               const std::vector<double>& grad, double learning_rate,
               double max_norm = 0.0);

}  // namespace overair

#endif  // OVERAIR_ADAM_H_
