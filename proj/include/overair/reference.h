// overair/reference.h

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

#ifndef OVERAIR_REFERENCE_H_
#define OVERAIR_REFERENCE_H_

#include <complex>
#include <string>
#include <vector>

#include "overair/matrix.h"
#include "overair/model.h"

// Slow, obviously-correct serial implementations. Tests and benchmarks
// compare the optimized kernels against these; production code never links
// this library, so the two paths stay independent.
namespace overair::reference {

// O(n*m) time-domain linear convolution, full length n + m - 1.
std::vector<double> naive_convolve_full(const std::vector<double>& a,
                                        const std::vector<double>& b);

// Same, truncated to the first input's length.
std::vector<double> naive_convolve_truncated(const std::vector<double>& signal,
                                             const std::vector<double>& ir);

// O(n^2) discrete Fourier transform.
std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& input);

// Step-by-step scalar recurrence: input projection, tanh cell, output
// projection, written independently of the production forward pass.
Matrix naive_rnn_forward(const ModelParams& params, const Matrix& features);

// Exhaustive CTC: enumerate every label path of length T, collapse repeats,
// drop blanks, and accumulate the probability of paths matching the target.
// Feasible for num_classes^T up to a few million.
double exhaustive_ctc_loss(const Matrix& logits, const std::vector<int>& labels);

// Plain recursion on (prefix, prefix) subproblems; exponential, tiny inputs.
int recursive_edit_distance(const std::string& a, const std::string& b);

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace overair::reference

#endif  // OVERAIR_REFERENCE_H_
