// overair/rng.h

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

#ifndef OVERAIR_RNG_H_
#define OVERAIR_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

namespace overair {

// splitmix64 finalizer; used to derive independent child seeds from a master
// seed so that per-draw / per-trial streams never depend on worker scheduling.
uint64_t mix_seed(uint64_t seed);

// Child seed for the index-th independent stream of a master seed.
uint64_t derive_seed(uint64_t master, uint64_t index);

// Deterministic random source. mt19937_64 is fully specified by the standard,
// and the uniform/normal transforms below are our own, so the byte stream of
// any seeded run is reproducible across builds.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(mix_seed(seed)) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n); n > 0. Rejection sampling keeps it unbiased.
  uint64_t uniform_int(uint64_t n);

  // Standard normal via Box-Muller. The spare draw is cached, so a single
  // Rng instance yields one fixed sequence regardless of call grouping.
  double normal();

  double normal(double sigma) { return sigma * normal(); }

  std::vector<double> normal_vector(std::size_t n, double sigma);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace overair

#endif  // OVERAIR_RNG_H_
