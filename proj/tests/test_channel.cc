// tests/test_channel.cc

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

#include <doctest.h>

#include "test_util.h"

#include <cmath>

#include "overair/channel.h"
#include "overair/error.h"

using namespace overair;

namespace {

ImpulseResponse delta_ir() {
  ImpulseResponse ir;
  ir.taps = {1.0};
  ir.sample_rate = 16000;
  ir.label = "delta";
  return ir;
}

ChannelConfig identity_channel() {
  ChannelConfig cfg;
  cfg.ir_bank = {delta_ir()};
  cfg.noise_sigma = 0.0;
  cfg.device_band_enabled = false;
  cfg.gain_jitter_db = 0.0;
  return cfg;
}

AudioClip random_clip(std::size_t n, uint64_t seed) {
  AudioClip clip;
  clip.sample_rate = 16000;
  clip.samples.resize(n);
  Rng rng(seed);
  for (double& s : clip.samples) s = rng.uniform(-0.5, 0.5);
  return clip;
}

}  // namespace

TEST_CASE("sampling draws uniformly over the bank") {
  IrSynthesisParams params;
  const IrBank bank = synth_ir_bank({params}, 4, 100, 16000, "ir");
  ChannelConfig cfg = make_channel(bank, 0.01, 3.0);

  Rng rng(1);
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 10000; ++i) ++counts[sample_channel(cfg, &rng).ir_index];
  for (int c : counts) {
    CHECK(c >= 2200);
    CHECK(c <= 2800);
  }

  SUBCASE("single response banks always pick it") {
    ChannelConfig one = identity_channel();
    Rng r(2);
    for (int i = 0; i < 20; ++i) CHECK(sample_channel(one, &r).ir_index == 0);
  }
  SUBCASE("same seed gives the identical draw sequence") {
    Rng a(3), b(3);
    for (int i = 0; i < 50; ++i) {
      const ChannelDraw da = sample_channel(cfg, &a);
      const ChannelDraw db = sample_channel(cfg, &b);
      CHECK(da.ir_index == db.ir_index);
      CHECK(da.noise_seed == db.noise_seed);
      CHECK(da.gain == db.gain);
    }
  }
  SUBCASE("gain jitter stays inside its range") {
    Rng r(4);
    for (int i = 0; i < 200; ++i) {
      const double gain_db = 20.0 * std::log10(sample_channel(cfg, &r).gain);
      CHECK(gain_db >= -3.0);
      CHECK(gain_db <= 3.0);
    }
  }
}

TEST_CASE("identity draw is the identity map") {
  const ChannelConfig cfg = identity_channel();
  const AudioClip clip = random_clip(500, 7);
  ChannelDraw draw;  // delta response, unit gain, unused noise seed
  const AudioClip out = simulate(clip, draw, cfg);
  REQUIRE(out.size() == clip.size());
  for (std::size_t i = 0; i < clip.size(); ++i) {
    CHECK_NEAR(out.samples[i], clip.samples[i], 1e-9);
  }
}

TEST_CASE("noise power comes out at sigma squared") {
  ChannelConfig cfg = identity_channel();
  cfg.noise_sigma = 0.01;
  AudioClip zero;
  zero.sample_rate = 16000;
  zero.samples.assign(65536, 0.0);
  ChannelDraw draw;
  draw.noise_seed = 99;
  const AudioClip out = simulate(zero, draw, cfg);
  const double p = power(out.samples);
  CHECK(p > 1e-4 * 0.95);
  CHECK(p < 1e-4 * 1.05);
}

TEST_CASE("simulate is affine in the input for a fixed draw") {
  IrSynthesisParams params;
  params.length_s = 0.05;
  params.rt60 = 0.05;
  ChannelConfig cfg;
  cfg.ir_bank = {synth_ir(params, 16000, 3)};
  cfg.noise_sigma = 0.02;
  cfg.gain_jitter_db = 0.0;
  cfg.device_band_enabled = true;

  ChannelDraw draw;
  draw.noise_seed = 5;
  draw.gain = 1.3;

  const AudioClip a = random_clip(1200, 11);
  const AudioClip b = random_clip(1200, 12);
  AudioClip zero = a;
  std::fill(zero.samples.begin(), zero.samples.end(), 0.0);

  // simulate(x) - simulate(0) must be linear in x.
  const auto sim_zero = simulate(zero, draw, cfg).samples;
  auto linear_part = [&](const AudioClip& clip) {
    auto s = simulate(clip, draw, cfg).samples;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] -= sim_zero[i];
    return s;
  };
  const auto la = linear_part(a);
  const auto lb = linear_part(b);
  AudioClip mix = a;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    mix.samples[i] = 2.0 * a.samples[i] - 0.5 * b.samples[i];
  }
  const auto lmix = linear_part(mix);
  for (std::size_t i = 0; i < lmix.size(); ++i) {
    CHECK_NEAR(lmix[i], 2.0 * la[i] - 0.5 * lb[i], 1e-9);
  }
}

TEST_CASE("simulate adjoint matches finite differences of a scalar probe") {
  IrSynthesisParams params;
  params.length_s = 0.03;
  params.rt60 = 0.05;
  ChannelConfig cfg;
  cfg.ir_bank = {synth_ir(params, 16000, 8)};
  cfg.noise_sigma = 0.01;
  cfg.gain_jitter_db = 0.0;
  cfg.device_band_enabled = true;
  cfg.device_band_taps = 255;

  ChannelDraw draw;
  draw.noise_seed = 17;
  draw.gain = 0.8;

  AudioClip x = random_clip(700, 21);
  Rng wrng(22);
  std::vector<double> weights(x.size());
  for (double& w : weights) w = wrng.uniform(-1.0, 1.0);

  auto probe = [&](const AudioClip& clip) {
    const auto s = simulate(clip, draw, cfg).samples;
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += weights[i] * s[i];
    return acc;
  };

  const auto grad = simulate_adjoint(weights, draw, cfg);
  Rng pick(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t i = pick.uniform_int(x.size());
    const double h = 1e-5;
    AudioClip xp = x, xm = x;
    xp.samples[i] += h;
    xm.samples[i] -= h;
    const double fd = (probe(xp) - probe(xm)) / (2.0 * h);
    const double rel =
        std::abs(grad[i] - fd) / std::max({std::abs(grad[i]), std::abs(fd), 1e-10});
    CHECK(rel < 1e-4);
  }
}

TEST_CASE("evaluation banks must not share seeds with training banks") {
  IrSynthesisParams params;
  const IrBank train_bank = synth_ir_bank({params}, 8, 1000, 16000, "ir_train");
  const ChannelConfig train_cfg = make_channel(train_bank, 0.01, 3.0);

  CHECK_THROWS_AS(make_eval_channel({params}, 4, 1004, train_cfg.ir_seeds, 16000,
                                    0.01, 3.0),
                  Error);

  const ChannelConfig eval_cfg =
      make_eval_channel(default_ir_strata(), 8, 9000, train_cfg.ir_seeds, 16000, 0.01, 3.0);
  CHECK(eval_cfg.ir_bank.size() == 8);

  SUBCASE("stratification covers the rt60 grid") {
    // 8 responses over 4 strata: each rt60 appears twice.
    const auto strata = default_ir_strata();
    CHECK(strata.size() == 4);
    for (std::size_t s = 0; s < strata.size(); ++s) {
      int count = 0;
      for (std::size_t i = 0; i < 8; ++i) {
        if (i % strata.size() == s) ++count;
      }
      CHECK(count == 2);
    }
  }
}

TEST_CASE("rate mismatches are rejected") {
  ChannelConfig cfg = identity_channel();
  cfg.ir_bank[0].sample_rate = 8000;
  const AudioClip clip = random_clip(100, 1);
  ChannelDraw draw;
  CHECK_THROWS_AS(simulate(clip, draw, cfg), Error);
}
