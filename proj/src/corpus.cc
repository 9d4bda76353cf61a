// overair/corpus.cc

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

#include "overair/corpus.h"

#include <algorithm>
#include <cmath>

#include "overair/error.h"
#include "overair/rng.h"

namespace overair {

namespace {

// Tone pairs sit on a coarse 7 x 4 grid. The steps are chosen to exceed the
// mel filterbank's bandwidth at the respective frequencies (roughly 105 Hz
// near 1 kHz and 400 Hz near 3.5 kHz for 26 filters), so every character is
// separable in feature space, not merely in raw frequency.
constexpr int kToneGridWidth = 7;
constexpr double kToneF1BaseHz = 400.0;
constexpr double kToneF1StepHz = 216.0;
constexpr double kToneF2BaseHz = 2300.0;
constexpr double kToneF2StepHz = 466.0;

std::size_t ms_to_samples(double ms, int rate) {
  return static_cast<std::size_t>(std::lround(ms * rate / 1000.0));
}

}  // namespace

void character_tones(int class_index, double* f1_hz, double* f2_hz) {
  if (class_index <= 0) {
    throw Error(ErrorKind::kDomain, "character_tones: blank has no tones");
  }
  const int cell = class_index - 1;
  *f1_hz = kToneF1BaseHz + kToneF1StepHz * (cell % kToneGridWidth);
  *f2_hz = kToneF2BaseHz + kToneF2StepHz * (cell / kToneGridWidth);
}

const std::vector<std::string>& default_vocabulary() {
  static const std::vector<std::string> words = {
      "hello", "world",  "open",   "the",  "door",  "ok",    "google",
      "quick", "brown",  "fox",    "jumps", "over", "lazy",  "dog",
      "pack",  "my",     "box",    "with", "five",  "dozen", "liquor",
      "jugs",  "don't",  "it's",   "vex",  "whisky", "zeal", "quartz"};
  return words;
}

std::vector<LabeledClip> synth_corpus(const SyntheticCorpusConfig& cfg,
                                      const Alphabet& alphabet) {
  const int rate = kCanonicalSampleRate;
  const std::size_t seg_len = ms_to_samples(cfg.char_duration_ms, rate);
  const std::size_t fade = ms_to_samples(cfg.crossfade_ms, rate);
  if (seg_len == 0 || fade * 2 > seg_len) {
    throw Error(ErrorKind::kConfig, "synth_corpus: bad segment/crossfade geometry");
  }

  std::vector<std::string> phrases = cfg.phrases;
  if (phrases.empty()) {
    const std::vector<std::string>& vocab =
        cfg.vocabulary.empty() ? default_vocabulary() : cfg.vocabulary;
    if (vocab.empty() || cfg.num_phrases <= 0 || cfg.max_words <= 0) {
      throw Error(ErrorKind::kConfig, "synth_corpus: empty phrase generator");
    }
    Rng rng(derive_seed(cfg.seed, 0));
    phrases.reserve(cfg.num_phrases);
    for (int p = 0; p < cfg.num_phrases; ++p) {
      const int words = 1 + static_cast<int>(rng.uniform_int(cfg.max_words));
      std::string phrase;
      for (int w = 0; w < words; ++w) {
        if (w > 0) phrase += ' ';
        phrase += vocab[rng.uniform_int(vocab.size())];
      }
      phrases.push_back(std::move(phrase));
    }
  }

  std::vector<LabeledClip> corpus;
  corpus.reserve(phrases.size());
  for (std::size_t p = 0; p < phrases.size(); ++p) {
    LabeledClip item;
    item.phrase = make_target(phrases[p], alphabet);  // rejects foreign characters

    const std::size_t n_chars = item.phrase.label_ids.size();
    if (n_chars == 0) {
      throw Error(ErrorKind::kDomain, "synth_corpus: empty phrase");
    }
    const std::size_t lead = ms_to_samples(cfg.leading_silence_ms, rate);
    const std::size_t trail = ms_to_samples(cfg.trailing_silence_ms, rate);
    const std::size_t stride = seg_len - fade;
    const std::size_t total = lead + seg_len + (n_chars - 1) * stride + trail;

    item.clip.sample_rate = rate;
    item.clip.samples.assign(total, 0.0);
    for (std::size_t c = 0; c < n_chars; ++c) {
      double f1 = 0.0, f2 = 0.0;
      character_tones(item.phrase.label_ids[c], &f1, &f2);
      const std::size_t offset = lead + c * stride;
      for (std::size_t i = 0; i < seg_len; ++i) {
        // Linear crossfade envelope at both segment edges.
        double env = 1.0;
        if (i < fade) env = static_cast<double>(i) / fade;
        if (seg_len - 1 - i < fade) {
          env = std::min(env, static_cast<double>(seg_len - 1 - i) / fade);
        }
        const double t = static_cast<double>(i) / rate;
        item.clip.samples[offset + i] +=
            env * cfg.tone_amplitude *
            (std::sin(2.0 * M_PI * f1 * t) + std::sin(2.0 * M_PI * f2 * t));
      }
    }

    if (cfg.noise_sigma > 0.0) {
      Rng noise_rng(derive_seed(cfg.seed, 1000 + p));
      for (double& s : item.clip.samples) s += noise_rng.normal(cfg.noise_sigma);
    }
    corpus.push_back(std::move(item));
  }
  return corpus;
}

void split_corpus(const std::vector<LabeledClip>& corpus, double holdout_fraction,
                  uint64_t seed, std::vector<LabeledClip>* train,
                  std::vector<LabeledClip>* holdout) {
  if (holdout_fraction < 0.0 || holdout_fraction >= 1.0) {
    throw Error(ErrorKind::kConfig, "split_corpus: fraction must be in [0, 1)");
  }
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {  // Fisher-Yates
    std::swap(order[i - 1], order[rng.uniform_int(i)]);
  }
  const std::size_t holdout_count =
      static_cast<std::size_t>(std::lround(holdout_fraction * corpus.size()));
  train->clear();
  holdout->clear();
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i < holdout_count) {
      holdout->push_back(corpus[order[i]]);
    } else {
      train->push_back(corpus[order[i]]);
    }
  }
}

AudioClip synth_music_clip(double duration_s, int sample_rate, uint64_t seed) {
  if (!(duration_s > 0.0) || sample_rate <= 0) {
    throw Error(ErrorKind::kDomain, "synth_music_clip: bad duration or rate");
  }
  // A minor pentatonic, two octaves.
  static const double kScaleHz[] = {220.0, 261.63, 293.66, 329.63, 392.0,
                                    440.0, 523.25, 587.33, 659.26, 784.0};
  constexpr int kNumNotes = 10;
  const std::size_t total = static_cast<std::size_t>(std::lround(duration_s * sample_rate));
  const std::size_t note_len = static_cast<std::size_t>(std::lround(0.2 * sample_rate));

  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.assign(total, 0.0);

  Rng rng(seed);
  for (std::size_t start = 0; start < total; start += note_len) {
    const double f = kScaleHz[rng.uniform_int(kNumNotes)];
    const std::size_t len = std::min(note_len * 2, total - start);  // ring past the next onset
    for (std::size_t i = 0; i < len; ++i) {
      const double t = static_cast<double>(i) / sample_rate;
      const double env = std::exp(-4.0 * t);
      clip.samples[start + i] +=
          env * (0.28 * std::sin(2.0 * M_PI * f * t) +
                 0.14 * std::sin(2.0 * M_PI * 2.0 * f * t) +
                 0.07 * std::sin(2.0 * M_PI * 3.0 * f * t));
    }
  }
  return clip;
}

}  // namespace overair
