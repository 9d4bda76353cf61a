// overair/corpus.h

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

#ifndef OVERAIR_CORPUS_H_
#define OVERAIR_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "overair/alphabet.h"
#include "overair/audio.h"

namespace overair {

// Deterministic synthetic speech stand-in: every character renders as a pair
// of formant-like tones, distinct per character and all inside 300-3800 Hz so
// band-limited playback keeps legitimate clips recognizable.
struct SyntheticCorpusConfig {
  std::vector<std::string> phrases;  // explicit list; when empty, generated
  int num_phrases = 260;
  int max_words = 3;                 // phrases draw 1..max_words words
  std::vector<std::string> vocabulary;  // empty selects the default word list
  double char_duration_ms = 120.0;
  double crossfade_ms = 10.0;
  // Quiet padding around the phrase. The recurrent recognizer emits each
  // character roughly one character-duration late, so the tail must leave
  // room for the final emissions.
  double leading_silence_ms = 40.0;
  double trailing_silence_ms = 240.0;
  double tone_amplitude = 0.3;       // per tone; two tones per character
  double noise_sigma = 0.005;        // additive augmentation at synthesis
  uint64_t seed = 1;
};

struct LabeledClip {
  AudioClip clip;
  TargetPhrase phrase;
};

// Tone pair of a character class (1-based class index over the alphabet).
// f1 ascends over the inventory, f2 descends, so no two characters share
// a pair and both stay inside the 300-3800 Hz band.
void character_tones(int class_index, double* f1_hz, double* f2_hz);

// The built-in vocabulary; covers every character of the default alphabet.
const std::vector<std::string>& default_vocabulary();

// Renders the configured phrases at the canonical rate. Deterministic per
// seed; bit-identical across reruns.
std::vector<LabeledClip> synth_corpus(const SyntheticCorpusConfig& cfg,
                                      const Alphabet& alphabet);

// Deterministic split into train and held-out parts.
void split_corpus(const std::vector<LabeledClip>& corpus, double holdout_fraction,
                  uint64_t seed, std::vector<LabeledClip>* train,
                  std::vector<LabeledClip>* holdout);

// Non-speech input material for attacks: a plucked-string style arpeggio
// with a few harmonics per note. Deterministic per seed.
AudioClip synth_music_clip(double duration_s, int sample_rate, uint64_t seed);

}  // namespace overair

#endif  // OVERAIR_CORPUS_H_
