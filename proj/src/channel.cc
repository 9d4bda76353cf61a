// overair/channel.cc

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

#include "overair/channel.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "overair/error.h"
#include "overair/fft.h"
#include "overair/fir.h"

namespace overair {

namespace {

void check_config(const ChannelConfig& cfg) {
  if (cfg.ir_bank.empty()) {
    throw Error(ErrorKind::kConfig, "channel: empty impulse response bank");
  }
  if (cfg.noise_sigma < 0.0) {
    throw Error(ErrorKind::kConfig, "channel: negative noise sigma");
  }
}

FirFilter device_filter(const ChannelConfig& cfg, int sample_rate) {
  return design_bandpass(cfg.device_band_low_hz, cfg.device_band_high_hz,
                         sample_rate, cfg.device_band_taps);
}

}  // namespace

ChannelDraw sample_channel(const ChannelConfig& cfg, Rng* rng) {
  check_config(cfg);
  ChannelDraw draw;
  draw.ir_index = static_cast<int>(rng->uniform_int(cfg.ir_bank.size()));
  draw.noise_seed = rng->next_u64();
  draw.gain = (cfg.gain_jitter_db > 0.0)
                  ? std::pow(10.0, rng->uniform(-cfg.gain_jitter_db,
                                                cfg.gain_jitter_db) / 20.0)
                  : 1.0;
  return draw;
}

AudioClip simulate(const AudioClip& clip, const ChannelDraw& draw,
                   const ChannelConfig& cfg) {
  check_config(cfg);
  const ImpulseResponse& ir = cfg.ir_bank.at(draw.ir_index);
  if (ir.sample_rate != clip.sample_rate) {
    throw Error(ErrorKind::kDomain, "simulate: sample rate mismatch");
  }

  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples = convolve_truncated(clip.samples, ir.taps);
  if (draw.gain != 1.0) {
    for (double& s : out.samples) s *= draw.gain;
  }
  if (cfg.device_band_enabled) {
    out.samples = apply_fir(out.samples, device_filter(cfg, clip.sample_rate));
  }
  if (cfg.noise_sigma > 0.0) {
    Rng rng(draw.noise_seed);
    out.samples = add_noise(out.samples, cfg.noise_sigma, &rng);
  }
  return out;
}

std::vector<double> simulate_adjoint(const std::vector<double>& grad,
                                     const ChannelDraw& draw,
                                     const ChannelConfig& cfg) {
  check_config(cfg);
  const ImpulseResponse& ir = cfg.ir_bank.at(draw.ir_index);

  std::vector<double> g = grad;
  if (cfg.device_band_enabled) {
    g = apply_fir_adjoint(g, device_filter(cfg, ir.sample_rate));
  }
  if (draw.gain != 1.0) {
    for (double& s : g) s *= draw.gain;
  }
  return convolve_truncated_adjoint(g, ir.taps);
}

IrBank synth_ir_bank(const std::vector<IrSynthesisParams>& strata,
                     const std::vector<uint64_t>& seeds, int sample_rate,
                     const std::string& prefix) {
  if (strata.empty() || seeds.empty()) {
    throw Error(ErrorKind::kConfig, "synth_ir_bank: empty strata or seed list");
  }
  IrBank bank;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const IrSynthesisParams& params = strata[i % strata.size()];
    ImpulseResponse ir = synth_ir(params, sample_rate, seeds[i]);

    IrBankRecord rec;
    rec.label = prefix + "_" + std::to_string(i);
    rec.seed = seeds[i];
    rec.params = params;
    rec.file = rec.label + ".wav";
    ir.label = rec.label;

    bank.irs.push_back(std::move(ir));
    bank.records.push_back(std::move(rec));
  }
  return bank;
}

IrBank synth_ir_bank(const std::vector<IrSynthesisParams>& strata, int count,
                     uint64_t seed_base, int sample_rate,
                     const std::string& prefix) {
  if (count <= 0) {
    throw Error(ErrorKind::kConfig, "synth_ir_bank: count must be positive");
  }
  std::vector<uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) seeds[i] = seed_base + static_cast<uint64_t>(i);
  return synth_ir_bank(strata, seeds, sample_rate, prefix);
}

std::vector<uint64_t> ir_seed_range(uint64_t master, uint64_t base, int count) {
  std::vector<uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) {
    seeds[i] = derive_seed(master, base + static_cast<uint64_t>(i));
  }
  return seeds;
}

ChannelConfig make_channel(const IrBank& bank, double noise_sigma,
                           double gain_jitter_db) {
  ChannelConfig cfg;
  cfg.ir_bank = bank.irs;
  cfg.ir_seeds.reserve(bank.records.size());
  for (const IrBankRecord& rec : bank.records) cfg.ir_seeds.push_back(rec.seed);
  cfg.noise_sigma = noise_sigma;
  cfg.gain_jitter_db = gain_jitter_db;
  check_config(cfg);
  return cfg;
}

ChannelConfig make_eval_channel(const std::vector<IrSynthesisParams>& strata,
                                const std::vector<uint64_t>& seeds,
                                const std::vector<uint64_t>& train_seeds,
                                int sample_rate, double noise_sigma,
                                double gain_jitter_db) {
  const std::unordered_set<uint64_t> train(train_seeds.begin(), train_seeds.end());
  for (uint64_t seed : seeds) {
    if (train.count(seed) != 0) {
      throw Error(ErrorKind::kConfig,
                  "make_eval_channel: evaluation seed overlaps the training bank");
    }
  }
  const IrBank bank = synth_ir_bank(strata, seeds, sample_rate, "ir_eval");
  return make_channel(bank, noise_sigma, gain_jitter_db);
}

ChannelConfig make_eval_channel(const std::vector<IrSynthesisParams>& strata,
                                int count, uint64_t seed_base,
                                const std::vector<uint64_t>& train_seeds,
                                int sample_rate, double noise_sigma,
                                double gain_jitter_db) {
  if (count <= 0) {
    throw Error(ErrorKind::kConfig, "make_eval_channel: count must be positive");
  }
  std::vector<uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) seeds[i] = seed_base + static_cast<uint64_t>(i);
  return make_eval_channel(strata, seeds, train_seeds, sample_rate, noise_sigma,
                           gain_jitter_db);
}

std::vector<IrSynthesisParams> default_ir_strata() {
  std::vector<IrSynthesisParams> strata;
  for (double rt60 : {0.1, 0.2, 0.3, 0.5}) {
    IrSynthesisParams p;
    p.rt60 = rt60;
    p.direct_ratio = 0.6;
    p.length_s = std::max(0.1, rt60);
    strata.push_back(p);
  }
  return strata;
}

}  // namespace overair
