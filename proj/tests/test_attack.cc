// tests/test_attack.cc

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

#include <cmath>
#include <complex>

#include "overair/attack.h"
#include "overair/error.h"
#include "overair/parallel.h"
#include "overair/reference.h"

using namespace overair;

namespace {

MfccConfig small_mfcc() {
  MfccConfig cfg;
  cfg.frame_length = 64;
  cfg.hop = 32;
  cfg.fft_size = 64;
  cfg.num_mel_filters = 12;
  cfg.num_coefficients = 6;
  return cfg;
}

SurrogateModel small_model(uint64_t seed = 3) {
  return SurrogateModel(small_mfcc(), Alphabet("abcd"), 16, seed);
}

AudioClip small_clip(std::size_t n = 700, uint64_t seed = 7) {
  AudioClip clip;
  clip.sample_rate = 16000;
  clip.samples.resize(n);
  Rng rng(seed);
  for (double& s : clip.samples) s = rng.uniform(-0.4, 0.4);
  return clip;
}

ChannelConfig small_channel(double noise_sigma = 0.01) {
  IrSynthesisParams params;
  params.rt60 = 0.02;
  params.length_s = 0.02;
  const IrBank bank = synth_ir_bank({params}, 3, 500, 16000, "ir_train");
  ChannelConfig cfg = make_channel(bank, noise_sigma, 0.0);
  cfg.device_band_enabled = false;
  return cfg;
}

AttackConfig small_attack_cfg() {
  AttackConfig cfg;
  cfg.band_taps = 127;
  cfg.max_steps = 20;
  cfg.transforms_per_step = 2;
  cfg.checkpoint_every = 5;
  cfg.learning_rate = 2e-3;
  cfg.epsilon = 0.01;
  cfg.noise_sigma = 0.01;
  cfg.seed = 9;
  return cfg;
}

}  // namespace

TEST_CASE("adam step algebra") {
  SUBCASE("zero gradient leaves the vector untouched") {
    AdamState state(4);
    std::vector<double> x = {1.0, -2.0, 3.0, 0.5};
    const std::vector<double> before = x;
    adam_step(&state, &x, std::vector<double>(4, 0.0), 0.1);
    CHECK(x == before);
    CHECK(state.t == 1);
  }
  SUBCASE("first step moves by almost exactly the learning rate") {
    AdamState state(3);
    std::vector<double> x = {0.0, 0.0, 0.0};
    const std::vector<double> grad = {1.0, -0.5, 4.0};
    const double lr = 0.01;
    adam_step(&state, &x, grad, lr);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double step = std::abs(x[i]);
      CHECK(step >= 0.99 * lr);
      CHECK(step <= lr);
      CHECK(x[i] * grad[i] < 0.0);  // moves against the gradient
    }
  }
  SUBCASE("max-norm clamp applies after the update") {
    AdamState state(1);
    std::vector<double> x = {0.149};
    adam_step(&state, &x, {-1.0}, 0.01, 0.15);
    CHECK(x[0] == doctest::Approx(0.15));
  }
  SUBCASE("non-finite gradients abort") {
    AdamState state(1);
    std::vector<double> x = {0.0};
    CHECK_THROWS_AS(adam_step(&state, &x, {std::nan("")}, 0.01), Error);
  }
}

TEST_CASE("objective with all flags off reduces to the direct attack bit for bit") {
  const SurrogateModel model = small_model();
  const AudioClip x = small_clip();
  const TargetPhrase target = make_target("ab", model.alphabet());
  const ChannelConfig channel = small_channel();

  AttackConfig cfg = small_attack_cfg();
  cfg.bandpass = false;
  cfg.impulse = false;
  cfg.noise = false;
  cfg.epsilon = 0.05;
  AttackEngine engine(model, x, target, channel, cfg);

  Rng rng(41);
  std::vector<double> v(x.size());
  for (double& s : v) s = rng.uniform(-0.01, 0.01);

  std::vector<ChannelDraw> draws(1);
  std::vector<double> grad;
  const double loss = engine.objective(v, draws, &grad);

  // Directly coded objective: CTC loss of x + v plus the norm penalty.
  std::vector<double> direct(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) direct[i] = x.samples[i] + v[i];
  std::vector<double> gwav;
  double expected = model.loss_and_grad_wav(direct, target.label_ids, &gwav);
  double norm = 0.0;
  for (double vi : v) norm += vi * vi;
  norm = std::sqrt(norm);
  expected += cfg.epsilon * norm;
  const double scale = cfg.epsilon / norm;
  for (std::size_t i = 0; i < gwav.size(); ++i) gwav[i] += scale * v[i];

  CHECK(loss == expected);  // bit-equal, no tolerance
  REQUIRE(grad.size() == gwav.size());
  for (std::size_t i = 0; i < grad.size(); ++i) CHECK(grad[i] == gwav[i]);
}

TEST_CASE("objective at v = 0 with a clean channel is the clean ctc loss") {
  const SurrogateModel model = small_model();
  const AudioClip x = small_clip();
  const TargetPhrase target = make_target("ab", model.alphabet());

  // Single delta response, no noise, epsilon 0.
  ChannelConfig channel;
  ImpulseResponse delta;
  delta.taps = {1.0};
  delta.sample_rate = 16000;
  delta.label = "delta";
  channel.ir_bank = {delta};
  channel.noise_sigma = 0.0;
  channel.device_band_enabled = false;
  channel.gain_jitter_db = 0.0;

  AttackConfig cfg = small_attack_cfg();
  cfg.bandpass = false;
  cfg.impulse = true;
  cfg.noise = false;
  cfg.epsilon = 0.0;
  AttackEngine engine(model, x, target, channel, cfg);

  std::vector<ChannelDraw> draws(1);
  std::vector<double> grad;
  const double loss = engine.objective(std::vector<double>(x.size(), 0.0), draws, &grad);
  CHECK(loss == doctest::Approx(model.loss_wav(x.samples, target.label_ids)).epsilon(1e-9));
}

TEST_CASE("objective gradient matches finite differences under fixed draws") {
  const SurrogateModel model = small_model(19);
  const AudioClip x = small_clip(700, 23);
  const TargetPhrase target = make_target("ca", model.alphabet());
  const ChannelConfig channel = small_channel(0.02);

  AttackConfig cfg = small_attack_cfg();
  cfg.epsilon = 0.03;
  AttackEngine engine(model, x, target, channel, cfg);

  Rng drng(51);
  std::vector<ChannelDraw> draws(4);
  for (ChannelDraw& d : draws) d = sample_channel(channel, &drng);

  Rng vrng(52);
  std::vector<double> v(x.size());
  for (double& s : v) s = vrng.uniform(-0.02, 0.02);

  std::vector<double> grad;
  engine.objective(v, draws, &grad);

  std::vector<double> scratch;
  Rng pick(53);
  int total = 0, good = 0;
  for (int probe = 0; probe < 30; ++probe) {
    const std::size_t i = pick.uniform_int(v.size());
    const double h = 1e-4;
    auto vp = v, vm = v;
    vp[i] += h;
    vm[i] -= h;
    const double up = engine.objective(vp, draws, &scratch);
    const double down = engine.objective(vm, draws, &scratch);
    const double fd = (up - down) / (2.0 * h);
    if (std::abs(grad[i]) <= 1e-8 && std::abs(fd) <= 1e-6) continue;
    ++total;
    const double rel =
        std::abs(grad[i] - fd) / std::max({std::abs(grad[i]), std::abs(fd), 1e-12});
    if (rel < 1e-3) ++good;
  }
  REQUIRE(total >= 20);
  CHECK(good == total);
}

TEST_CASE("objective is bit-identical across job counts") {
  const SurrogateModel model = small_model(19);
  const AudioClip x = small_clip(700, 23);
  const TargetPhrase target = make_target("b", model.alphabet());
  const ChannelConfig channel = small_channel(0.02);
  AttackEngine engine(model, x, target, channel, small_attack_cfg());

  Rng drng(61);
  std::vector<ChannelDraw> draws(4);
  for (ChannelDraw& d : draws) d = sample_channel(channel, &drng);
  Rng vrng(62);
  std::vector<double> v(x.size());
  for (double& s : v) s = vrng.uniform(-0.02, 0.02);

  set_jobs(1);
  std::vector<double> g1;
  const double l1 = engine.objective(v, draws, &g1);
  set_jobs(4);
  std::vector<double> g4;
  const double l4 = engine.objective(v, draws, &g4);
  set_jobs(0);
  CHECK(l1 == l4);
  CHECK(g1 == g4);
}

TEST_CASE("short runs keep their contracts") {
  const SurrogateModel model = small_model(29);
  const AudioClip x = small_clip(900, 31);
  const TargetPhrase target = make_target("db", model.alphabet());
  const ChannelConfig channel = small_channel();

  AttackConfig cfg = small_attack_cfg();
  cfg.max_steps = 20;
  cfg.checkpoint_every = 5;
  cfg.learning_rate = 5e-3;

  AttackEngine engine(model, x, target, channel, cfg);
  const AttackResult result = engine.run();

  SUBCASE("checkpoints are ordered and carry consistent snr") {
    REQUIRE(!result.checkpoints.empty());
    int last_step = 0;
    for (const AttackCheckpoint& ckpt : result.checkpoints) {
      CHECK(ckpt.step > last_step);
      last_step = ckpt.step;
      const auto veff = engine.effective_perturbation(ckpt.v);
      CHECK(ckpt.snr_db == doctest::Approx(snr_db(x.samples, veff)).epsilon(1e-12));
    }
    CHECK(result.steps_run == 20);
    CHECK(result.checkpoints.back().step == result.steps_run);
  }

  SUBCASE("reruns are deterministic") {
    AttackEngine again(model, x, target, channel, cfg);
    const AttackResult repeat = again.run();
    CHECK(repeat.v == result.v);
    REQUIRE(repeat.checkpoints.size() == result.checkpoints.size());
    for (std::size_t i = 0; i < repeat.checkpoints.size(); ++i) {
      CHECK(repeat.checkpoints[i].sampled_loss == result.checkpoints[i].sampled_loss);
      CHECK(repeat.checkpoints[i].probe_decode == result.checkpoints[i].probe_decode);
    }
  }

  SUBCASE("effective perturbation stays inside the band") {
    // Hann-windowed spectrum of BPF(v): energy outside [low, high] at least
    // 40 dB under the in-band energy.
    const auto veff = engine.effective_perturbation(result.v);
    REQUIRE(power(veff) > 0.0);
    const std::size_t n = next_pow2(veff.size()) * 2;
    std::vector<std::complex<double>> buf(n, {0.0, 0.0});
    for (std::size_t i = 0; i < veff.size(); ++i) {
      const double w =
          0.5 - 0.5 * std::cos(2.0 * M_PI * i / (veff.size() - 1));
      buf[i] = veff[i] * w;
    }
    fft(&buf);
    double in_band = 0.0, out_band = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
      const double freq = static_cast<double>(k) * 16000.0 / static_cast<double>(n);
      const double e = std::norm(buf[k]);
      if (freq >= cfg.band_low_hz && freq <= cfg.band_high_hz) {
        in_band += e;
      } else {
        out_band += e;
      }
    }
    CHECK(out_band / in_band < 1e-4);
  }

  SUBCASE("helper matches the engine's effective perturbation") {
    const auto a = engine.effective_perturbation(result.v);
    const auto b = attack_effective_perturbation(result.v, cfg, x.sample_rate);
    CHECK(a == b);
  }
}

TEST_CASE("generate rejects bad setups") {
  const SurrogateModel model = small_model();
  const ChannelConfig channel = small_channel();
  AttackConfig cfg = small_attack_cfg();

  SUBCASE("target longer than the frame budget") {
    const AudioClip tiny = small_clip(80);  // one frame at 64/32
    const TargetPhrase target = make_target("abcd", model.alphabet());
    CHECK_THROWS_AS(generate(model, tiny, target, channel, cfg), Error);
  }
  SUBCASE("empty draws are rejected") {
    const AudioClip x = small_clip();
    const TargetPhrase target = make_target("a", model.alphabet());
    AttackEngine engine(model, x, target, channel, cfg);
    std::vector<double> grad;
    CHECK_THROWS_AS(
        engine.objective(std::vector<double>(x.size(), 0.0), {}, &grad), Error);
  }
  SUBCASE("config validation") {
    cfg.max_steps = 0;
    const AudioClip x = small_clip();
    const TargetPhrase target = make_target("a", model.alphabet());
    CHECK_THROWS_AS(AttackEngine(model, x, target, channel, cfg), Error);
  }
}
