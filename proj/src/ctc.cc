// overair/ctc.cc

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

#include "overair/ctc.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "overair/error.h"

namespace overair {

namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Blank-augmented label sequence: blank, l1, blank, l2, ..., blank.
std::vector<int> extend_labels(const std::vector<int>& labels) {
  std::vector<int> ext(2 * labels.size() + 1, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) ext[2 * i + 1] = labels[i];
  return ext;
}

// Row-wise log-softmax of the logits.
Matrix log_probs_of(const Matrix& logits) {
  Matrix lp(logits.rows, logits.cols);
  for (int t = 0; t < logits.rows; ++t) {
    const double* row = logits.row(t);
    double hi = row[0];
    for (int k = 1; k < logits.cols; ++k) hi = std::max(hi, row[k]);
    double sum = 0.0;
    for (int k = 0; k < logits.cols; ++k) sum += std::exp(row[k] - hi);
    const double lse = hi + std::log(sum);
    double* out = lp.row(t);
    for (int k = 0; k < logits.cols; ++k) out[k] = row[k] - lse;
  }
  return lp;
}

void check_admissible(const Matrix& logits, const std::vector<int>& labels) {
  if (logits.rows <= 0 || logits.cols <= 1) {
    throw Error(ErrorKind::kDomain, "ctc: empty logit matrix");
  }
  for (int id : labels) {
    if (id <= 0 || id >= logits.cols) {
      throw Error(ErrorKind::kDomain, "ctc: label id outside the class range");
    }
  }
  if (logits.rows < ctc_min_frames(labels)) {
    throw Error(ErrorKind::kDomain,
                "ctc: target needs more frames than the input provides");
  }
}

// Forward variables in log space; alpha.at(t, s) includes the emission at t.
Matrix ctc_alpha(const Matrix& lp, const std::vector<int>& ext) {
  const int T = lp.rows;
  const int S = static_cast<int>(ext.size());
  Matrix alpha(T, S);
  std::fill(alpha.v.begin(), alpha.v.end(), kLogZero);

  alpha.at(0, 0) = lp.at(0, ext[0]);
  if (S > 1) alpha.at(0, 1) = lp.at(0, ext[1]);
  for (int t = 1; t < T; ++t) {
    for (int s = 0; s < S; ++s) {
      double acc = alpha.at(t - 1, s);
      if (s >= 1) acc = log_add(acc, alpha.at(t - 1, s - 1));
      if (s >= 2 && ext[s] != Alphabet::kBlank && ext[s] != ext[s - 2]) {
        acc = log_add(acc, alpha.at(t - 1, s - 2));
      }
      alpha.at(t, s) = (acc == kLogZero) ? kLogZero : acc + lp.at(t, ext[s]);
    }
  }
  return alpha;
}

double total_log_prob(const Matrix& alpha) {
  const int T = alpha.rows, S = alpha.cols;
  double lp = alpha.at(T - 1, S - 1);
  if (S > 1) lp = log_add(lp, alpha.at(T - 1, S - 2));
  return lp;
}

}  // namespace

int ctc_min_frames(const std::vector<int>& labels) {
  int repeats = 0;
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] == labels[i - 1]) ++repeats;
  }
  return static_cast<int>(labels.size()) + repeats;
}

double ctc_loss(const Matrix& logits, const std::vector<int>& labels) {
  check_admissible(logits, labels);
  const Matrix lp = log_probs_of(logits);
  const std::vector<int> ext = extend_labels(labels);
  const Matrix alpha = ctc_alpha(lp, ext);
  const double log_p = total_log_prob(alpha);
  if (log_p == kLogZero) {
    throw Error(ErrorKind::kDivergence, "ctc: zero-probability target");
  }
  return -log_p;
}

Matrix ctc_grad(const Matrix& logits, const std::vector<int>& labels,
                double* loss_out) {
  check_admissible(logits, labels);
  const Matrix lp = log_probs_of(logits);
  const std::vector<int> ext = extend_labels(labels);
  const int T = lp.rows;
  const int S = static_cast<int>(ext.size());

  const Matrix alpha = ctc_alpha(lp, ext);
  const double log_p = total_log_prob(alpha);
  if (log_p == kLogZero) {
    throw Error(ErrorKind::kDivergence, "ctc: zero-probability target");
  }
  if (loss_out != nullptr) *loss_out = -log_p;

  // beta.at(t, s): completion probability from state s after emitting at t,
  // so alpha + beta is the through-state path mass at every t.
  Matrix beta(T, S);
  std::fill(beta.v.begin(), beta.v.end(), kLogZero);
  beta.at(T - 1, S - 1) = 0.0;
  if (S > 1) beta.at(T - 1, S - 2) = 0.0;
  for (int t = T - 2; t >= 0; --t) {
    for (int s = S - 1; s >= 0; --s) {
      double acc = beta.at(t + 1, s) + lp.at(t + 1, ext[s]);
      if (s + 1 < S) {
        acc = log_add(acc, beta.at(t + 1, s + 1) + lp.at(t + 1, ext[s + 1]));
      }
      if (s + 2 < S && ext[s + 2] != Alphabet::kBlank && ext[s + 2] != ext[s]) {
        acc = log_add(acc, beta.at(t + 1, s + 2) + lp.at(t + 1, ext[s + 2]));
      }
      beta.at(t, s) = acc;
    }
  }

  // d(-log p)/d(logit_k) = softmax_k - occupancy_k.
  Matrix grad(T, logits.cols);
  std::vector<double> occupancy(logits.cols);
  for (int t = 0; t < T; ++t) {
    std::fill(occupancy.begin(), occupancy.end(), kLogZero);
    for (int s = 0; s < S; ++s) {
      const double mass = alpha.at(t, s) + beta.at(t, s);
      if (mass != kLogZero) {
        occupancy[ext[s]] = log_add(occupancy[ext[s]], mass);
      }
    }
    double* out = grad.row(t);
    for (int k = 0; k < logits.cols; ++k) {
      const double occ =
          (occupancy[k] == kLogZero) ? 0.0 : std::exp(occupancy[k] - log_p);
      out[k] = std::exp(lp.at(t, k)) - occ;
    }
  }
  return grad;
}

std::string greedy_decode(const Matrix& logits, const Alphabet& alphabet) {
  std::string out;
  int previous = Alphabet::kBlank;
  for (int t = 0; t < logits.rows; ++t) {
    const double* row = logits.row(t);
    int best = 0;
    for (int k = 1; k < logits.cols; ++k) {
      if (row[k] > row[best]) best = k;
    }
    if (best != Alphabet::kBlank && best != previous) {
      out += alphabet.char_at(best);
    }
    previous = best;
  }
  return out;
}

}  // namespace overair
