// overair/error.h

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

#ifndef OVERAIR_ERROR_H_
#define OVERAIR_ERROR_H_

#include <stdexcept>
#include <string>

namespace overair {

// All toolkit failures carry a machine-parsable kind so the CLI can emit a
// single-line "error [<kind>]: <message>" diagnostic.
enum class ErrorKind {
  kConfig,     // malformed or contradictory configuration
  kIo,         // file system / file format trouble
  kDomain,     // precondition violated (shapes, ranges, rates)
  kDivergence  // numerical blow-up (NaN loss, non-finite gradient)
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kDivergence: return "divergence";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* kind_name() const { return error_kind_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace overair

#endif  // OVERAIR_ERROR_H_
