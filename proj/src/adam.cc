// overair/adam.cc

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

#include "overair/adam.h"

#include <cmath>

#include "overair/error.h"

namespace overair {

void adam_step(AdamState* state, std::vector<double>* x,
               const std::vector<double>& grad, double learning_rate,
               double max_norm) {
  if (x->size() != grad.size() || x->size() != state->m.size()) {
    throw Error(ErrorKind::kDomain, "adam_step: size mismatch");
  }
  for (double g : grad) {
    if (!std::isfinite(g)) {
      throw Error(ErrorKind::kDivergence,
                  "adam_step: non-finite gradient at step " +
                      std::to_string(state->t + 1));
    }
  }

  state->t += 1;
  const double bc1 = 1.0 - std::pow(state->beta1, static_cast<double>(state->t));
  const double bc2 = 1.0 - std::pow(state->beta2, static_cast<double>(state->t));
  for (std::size_t i = 0; i < x->size(); ++i) {
    const double g = grad[i];
    state->m[i] = state->beta1 * state->m[i] + (1.0 - state->beta1) * g;
    state->u[i] = state->beta2 * state->u[i] + (1.0 - state->beta2) * g * g;
    const double m_hat = state->m[i] / bc1;
    const double u_hat = state->u[i] / bc2;
    double value = (*x)[i] - learning_rate * m_hat / (std::sqrt(u_hat) + state->stability);
    if (max_norm > 0.0) {
      if (value > max_norm) value = max_norm;
      if (value < -max_norm) value = -max_norm;
    }
    (*x)[i] = value;
  }
}

}  // namespace overair
