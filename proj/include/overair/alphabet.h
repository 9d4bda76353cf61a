// overair/alphabet.h

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

#ifndef OVERAIR_ALPHABET_H_
#define OVERAIR_ALPHABET_H_

#include <string>
#include <vector>

namespace overair {

// Character inventory of the recognizer. Class 0 is the CTC blank; real
// characters occupy classes 1..size(). Indices are stable and serialized
// with model checkpoints.
class Alphabet {
 public:
  static constexpr int kBlank = 0;

  // 'a'..'z', space, apostrophe.
  static Alphabet default_alphabet();

  explicit Alphabet(std::string characters);

  int size() const { return static_cast<int>(characters_.size()); }
  int num_classes() const { return size() + 1; }

  bool contains(char c) const;
  // Class index in [1, size()], or -1 when absent.
  int index_of(char c) const;
  // Character for a non-blank class index.
  char char_at(int class_index) const;

  const std::string& characters() const { return characters_; }

 private:
  std::string characters_;
  int lookup_[256];
};

struct TargetPhrase {
  std::string text;
  std::vector<int> label_ids;  // classes over the alphabet, blank excluded
};

// Errors when text contains a character outside the alphabet.
TargetPhrase make_target(const std::string& text, const Alphabet& alphabet);

}  // namespace overair

#endif  // OVERAIR_ALPHABET_H_
