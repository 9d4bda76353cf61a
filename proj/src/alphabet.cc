// overair/alphabet.cc

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

#include "overair/alphabet.h"

#include "overair/error.h"

namespace overair {

Alphabet Alphabet::default_alphabet() {
  return Alphabet("abcdefghijklmnopqrstuvwxyz '");
}

Alphabet::Alphabet(std::string characters) : characters_(std::move(characters)) {
  if (characters_.empty()) {
    throw Error(ErrorKind::kConfig, "alphabet: empty character set");
  }
  for (int& slot : lookup_) slot = -1;
  for (int i = 0; i < size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(characters_[i]);
    if (lookup_[c] != -1) {
      throw Error(ErrorKind::kConfig, "alphabet: duplicate character");
    }
    lookup_[c] = i + 1;  // class 0 stays the blank
  }
}

bool Alphabet::contains(char c) const {
  return lookup_[static_cast<unsigned char>(c)] != -1;
}

int Alphabet::index_of(char c) const {
  return lookup_[static_cast<unsigned char>(c)];
}

char Alphabet::char_at(int class_index) const {
  if (class_index <= 0 || class_index > size()) {
    throw Error(ErrorKind::kDomain, "alphabet: class index out of range");
  }
  return characters_[class_index - 1];
}

TargetPhrase make_target(const std::string& text, const Alphabet& alphabet) {
  TargetPhrase target;
  target.text = text;
  target.label_ids.reserve(text.size());
  for (char c : text) {
    const int id = alphabet.index_of(c);
    if (id < 0) {
      throw Error(ErrorKind::kDomain,
                  std::string("target phrase contains out-of-alphabet character '") +
                      c + "'");
    }
    target.label_ids.push_back(id);
  }
  return target;
}

}  // namespace overair
