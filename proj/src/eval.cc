// overair/eval.cc

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

#include "overair/eval.h"

#include <algorithm>

#include "overair/error.h"
#include "overair/parallel.h"

namespace overair {

int edit_distance(const std::string& a, const std::string& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<int> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

EvalRecord evaluate(const AudioClip& adv, const TargetPhrase& target,
                    const SurrogateModel& model, const ChannelConfig& eval_channel,
                    int trials, uint64_t seed) {
  if (trials < 1) {
    throw Error(ErrorKind::kDomain, "evaluate: trials must be >= 1");
  }

  EvalRecord record;
  record.target = target.text;
  record.trials = trials;
  record.decodes.assign(trials, "");

  std::vector<int> distances(trials, 0);
  parallel_for(trials, [&](std::int64_t t) {
    Rng rng(derive_seed(seed, static_cast<uint64_t>(t)));
    const ChannelDraw draw = sample_channel(eval_channel, &rng);
    const AudioClip captured = simulate(adv, draw, eval_channel);
    record.decodes[t] = model.decode_wav(captured.samples);
    distances[t] = edit_distance(record.decodes[t], target.text);
  });

  int hits = 0;
  long dist_sum = 0;
  for (int t = 0; t < trials; ++t) {
    if (record.decodes[t] == target.text) ++hits;
    dist_sum += distances[t];
  }
  record.success_rate = static_cast<double>(hits) / trials;
  record.mean_edit_distance = static_cast<double>(dist_sum) / trials;
  return record;
}

}  // namespace overair
