// overair/ctc.h

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

#ifndef OVERAIR_CTC_H_
#define OVERAIR_CTC_H_

#include <string>
#include <vector>

#include "overair/alphabet.h"
#include "overair/matrix.h"

namespace overair {

// Shortest frame count that can align the label sequence: its length plus
// one mandatory blank between each adjacent repeated label.
int ctc_min_frames(const std::vector<int>& labels);

// Negative log probability of all alignments collapsing to the labels, by
// the forward algorithm in log space over the blank-augmented sequence.
// logits is [T x num_classes] with class 0 the blank; rows are unnormalized.
// Errors when T < ctc_min_frames(labels).
double ctc_loss(const Matrix& logits, const std::vector<int>& labels);

// Exact d(loss)/d(logits) via forward-backward; same preconditions.
// When loss_out is non-null the loss is reported from the same pass.
Matrix ctc_grad(const Matrix& logits, const std::vector<int>& labels,
                double* loss_out = nullptr);

// Per-frame argmax, collapse repeats, drop blanks. Ties resolve to the
// lowest class index.
std::string greedy_decode(const Matrix& logits, const Alphabet& alphabet);

}  // namespace overair

#endif  // OVERAIR_CTC_H_
