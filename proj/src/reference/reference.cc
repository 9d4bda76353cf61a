// overair/reference.cc

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

#include "overair/reference.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace overair::reference {

std::vector<double> naive_convolve_full(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

std::vector<double> naive_convolve_truncated(const std::vector<double>& signal,
                                             const std::vector<double>& ir) {
  std::vector<double> out(signal.size(), 0.0);
  for (std::size_t i = 0; i < signal.size(); ++i) {
    for (std::size_t k = 0; k < ir.size() && k <= i; ++k) {
      out[i] += ir[k] * signal[i - k];
    }
  }
  return out;
}

std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& input) {
  const std::size_t n = input.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double angle = -2.0 * M_PI * static_cast<double>(k * t % n) / n;
      acc += input[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

Matrix naive_rnn_forward(const ModelParams& params, const Matrix& features) {
  const int T = features.rows;
  Matrix logits(T, params.num_classes);
  std::vector<double> state(params.hidden, 0.0);
  for (int t = 0; t < T; ++t) {
    std::vector<double> next(params.hidden);
    for (int i = 0; i < params.hidden; ++i) {
      double acc = params.bias[i];
      for (int j = 0; j < params.input_dim; ++j) {
        acc += params.w_in[static_cast<std::size_t>(i) * params.input_dim + j] *
               features.at(t, j);
      }
      for (int j = 0; j < params.hidden; ++j) {
        acc += params.w_rec[static_cast<std::size_t>(i) * params.hidden + j] * state[j];
      }
      next[i] = std::tanh(acc);
    }
    for (int k = 0; k < params.num_classes; ++k) {
      double acc = params.b_out[k];
      for (int j = 0; j < params.hidden; ++j) {
        acc += params.w_out[static_cast<std::size_t>(k) * params.hidden + j] * next[j];
      }
      logits.at(t, k) = acc;
    }
    state = next;
  }
  return logits;
}

double exhaustive_ctc_loss(const Matrix& logits, const std::vector<int>& labels) {
  const int T = logits.rows;
  const int C = logits.cols;

  // Per-frame softmax, straightforwardly.
  Matrix probs(T, C);
  for (int t = 0; t < T; ++t) {
    double hi = logits.at(t, 0);
    for (int k = 1; k < C; ++k) hi = std::max(hi, logits.at(t, k));
    double z = 0.0;
    for (int k = 0; k < C; ++k) z += std::exp(logits.at(t, k) - hi);
    for (int k = 0; k < C; ++k) probs.at(t, k) = std::exp(logits.at(t, k) - hi) / z;
  }

  double total = 0.0;
  std::vector<int> path(T, 0);
  while (true) {
    // Collapse: drop repeats, then blanks (class 0).
    std::vector<int> collapsed;
    int prev = -1;
    for (int t = 0; t < T; ++t) {
      if (path[t] != prev && path[t] != 0) collapsed.push_back(path[t]);
      prev = path[t];
    }
    if (collapsed == labels) {
      double p = 1.0;
      for (int t = 0; t < T; ++t) p *= probs.at(t, path[t]);
      total += p;
    }
    // Next path in odometer order.
    int pos = T - 1;
    while (pos >= 0 && path[pos] == C - 1) path[pos--] = 0;
    if (pos < 0) break;
    ++path[pos];
  }
  return -std::log(total);
}

int recursive_edit_distance(const std::string& a, const std::string& b) {
  if (a.empty()) return static_cast<int>(b.size());
  if (b.empty()) return static_cast<int>(a.size());
  const std::string a_head = a.substr(0, a.size() - 1);
  const std::string b_head = b.substr(0, b.size() - 1);
  const int replace =
      recursive_edit_distance(a_head, b_head) + (a.back() == b.back() ? 0 : 1);
  const int erase = recursive_edit_distance(a_head, b) + 1;
  const int insert = recursive_edit_distance(a, b_head) + 1;
  return std::min({replace, erase, insert});
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::vector<double> rx = average_ranks(xs);
  const std::vector<double> ry = average_ranks(ys);
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace overair::reference
