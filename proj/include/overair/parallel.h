// overair/parallel.h

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

#ifndef OVERAIR_PARALLEL_H_
#define OVERAIR_PARALLEL_H_

#include <cstdint>
#include <exception>

namespace overair {

// Worker-count control for the OpenMP kernels. 0 means "runtime default".
// Every parallel loop in the toolkit writes to disjoint, index-addressed
// slots and reduces them in index order afterwards, so results are
// bit-identical for any job count.
void set_jobs(int jobs);
int jobs();

// Runs body(i) for i in [0, n) across the configured workers. Exceptions are
// captured inside the region and rethrown once it has drained.
template <typename Body>
void parallel_for(std::int64_t n, const Body& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(overair_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace overair

#endif  // OVERAIR_PARALLEL_H_
