// overair/config.cc

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

#include "overair/config.h"

#include <fstream>
#include <set>

#include <json.hpp>

#include "overair/error.h"

namespace overair {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& scope,
                    const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.count(it.key()) == 0) {
      throw Error(ErrorKind::kConfig,
                  "config: unknown key '" + scope + it.key() + "'");
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T* out) {
  if (obj.contains(key)) {
    try {
      *out = obj.at(key).get<T>();
    } catch (const json::exception&) {
      throw Error(ErrorKind::kConfig,
                  std::string("config: bad value type for '") + key + "'");
    }
  }
}

void parse_band(const json& obj, const char* key, double* low, double* high,
                bool* enabled) {
  if (!obj.contains(key)) return;
  const json& band = obj.at(key);
  if (band.is_null()) {
    if (enabled != nullptr) *enabled = false;
    return;
  }
  if (!band.is_array() || band.size() != 2) {
    throw Error(ErrorKind::kConfig,
                std::string("config: '") + key + "' must be [low_hz, high_hz] or null");
  }
  *low = band[0].get<double>();
  *high = band[1].get<double>();
  if (enabled != nullptr) *enabled = true;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIo, "config: cannot open '" + path + "'");
  }
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("config: parse failure: ") + e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorKind::kConfig, "config: top level must be an object");
  }

  RunConfig cfg;
  reject_unknown(root, "", {"corpus", "model", "train", "channel", "attack", "eval"});

  if (root.contains("corpus")) {
    const json& c = root.at("corpus");
    reject_unknown(c, "corpus.",
                   {"phrases", "num_phrases", "max_words", "vocabulary",
                    "char_duration_ms", "crossfade_ms", "tone_amplitude",
                    "noise_sigma", "holdout_fraction"});
    read(c, "phrases", &cfg.corpus.phrases);
    read(c, "num_phrases", &cfg.corpus.num_phrases);
    read(c, "max_words", &cfg.corpus.max_words);
    read(c, "vocabulary", &cfg.corpus.vocabulary);
    read(c, "char_duration_ms", &cfg.corpus.char_duration_ms);
    read(c, "crossfade_ms", &cfg.corpus.crossfade_ms);
    read(c, "tone_amplitude", &cfg.corpus.tone_amplitude);
    read(c, "noise_sigma", &cfg.corpus.noise_sigma);
    read(c, "holdout_fraction", &cfg.corpus_holdout_fraction);
  }

  if (root.contains("model")) {
    const json& m = root.at("model");
    reject_unknown(m, "model.", {"hidden", "mfcc"});
    read(m, "hidden", &cfg.model_hidden);
    if (m.contains("mfcc")) {
      const json& f = m.at("mfcc");
      reject_unknown(f, "model.mfcc.",
                     {"frame_length", "hop", "fft_size", "num_mel_filters",
                      "num_coefficients", "log_floor", "sample_rate"});
      read(f, "frame_length", &cfg.mfcc.frame_length);
      read(f, "hop", &cfg.mfcc.hop);
      read(f, "fft_size", &cfg.mfcc.fft_size);
      read(f, "num_mel_filters", &cfg.mfcc.num_mel_filters);
      read(f, "num_coefficients", &cfg.mfcc.num_coefficients);
      read(f, "log_floor", &cfg.mfcc.log_floor);
      read(f, "sample_rate", &cfg.mfcc.sample_rate);
    }
  }

  if (root.contains("train")) {
    const json& t = root.at("train");
    reject_unknown(t, "train.",
                   {"epochs", "batch_size", "learning_rate", "gain_jitter_db",
                    "noise_sigma"});
    read(t, "epochs", &cfg.train.epochs);
    read(t, "batch_size", &cfg.train.batch_size);
    read(t, "learning_rate", &cfg.train.learning_rate);
    read(t, "gain_jitter_db", &cfg.train.gain_jitter_db);
    read(t, "noise_sigma", &cfg.train.noise_sigma);
  }

  if (root.contains("channel")) {
    const json& ch = root.at("channel");
    reject_unknown(ch, "channel.",
                   {"train_irs", "eval_irs", "train_seed_base", "eval_seed_base",
                    "noise_sigma", "gain_jitter_db", "device_band", "rt60_grid",
                    "direct_ratio"});
    read(ch, "train_irs", &cfg.channel_train_irs);
    read(ch, "eval_irs", &cfg.channel_eval_irs);
    read(ch, "train_seed_base", &cfg.channel_train_seed_base);
    read(ch, "eval_seed_base", &cfg.channel_eval_seed_base);
    read(ch, "noise_sigma", &cfg.channel_noise_sigma);
    read(ch, "gain_jitter_db", &cfg.channel_gain_jitter_db);
    parse_band(ch, "device_band", &cfg.channel_device_low_hz,
               &cfg.channel_device_high_hz, &cfg.channel_device_band);
    read(ch, "rt60_grid", &cfg.channel_rt60_grid);
    read(ch, "direct_ratio", &cfg.channel_direct_ratio);
  }

  if (root.contains("attack")) {
    const json& a = root.at("attack");
    reject_unknown(a, "attack.",
                   {"epsilon", "learning_rate", "max_steps", "transforms_per_step",
                    "band", "band_taps", "noise_sigma", "bandpass", "impulse",
                    "noise", "clamp", "checkpoint_every", "success_streak"});
    read(a, "epsilon", &cfg.attack.epsilon);
    read(a, "learning_rate", &cfg.attack.learning_rate);
    read(a, "max_steps", &cfg.attack.max_steps);
    read(a, "transforms_per_step", &cfg.attack.transforms_per_step);
    parse_band(a, "band", &cfg.attack.band_low_hz, &cfg.attack.band_high_hz, nullptr);
    read(a, "band_taps", &cfg.attack.band_taps);
    read(a, "noise_sigma", &cfg.attack.noise_sigma);
    read(a, "bandpass", &cfg.attack.bandpass);
    read(a, "impulse", &cfg.attack.impulse);
    read(a, "noise", &cfg.attack.noise);
    read(a, "clamp", &cfg.attack.clamp);
    read(a, "checkpoint_every", &cfg.attack.checkpoint_every);
    read(a, "success_streak", &cfg.attack.success_streak);
  }

  if (root.contains("eval")) {
    const json& e = root.at("eval");
    reject_unknown(e, "eval.", {"trials"});
    read(e, "trials", &cfg.eval_trials);
  }

  return cfg;
}

std::vector<IrSynthesisParams> config_ir_strata(const RunConfig& cfg) {
  if (cfg.channel_rt60_grid.empty()) {
    throw Error(ErrorKind::kConfig, "config: empty rt60 grid");
  }
  std::vector<IrSynthesisParams> strata;
  for (double rt60 : cfg.channel_rt60_grid) {
    IrSynthesisParams p;
    p.rt60 = rt60;
    p.direct_ratio = cfg.channel_direct_ratio;
    p.length_s = std::max(0.1, rt60);
    strata.push_back(p);
  }
  return strata;
}

}  // namespace overair
