// tests/test_model.cc

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
#include <filesystem>
#include <fstream>

#include "overair/ctc.h"
#include "overair/error.h"
#include "overair/model.h"
#include "overair/reference.h"
#include "overair/rng.h"

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

FeatureMatrix random_features(int T, int D, Rng* rng) {
  FeatureMatrix feats;
  feats.values = Matrix(T, D);
  for (double& v : feats.values.v) v = rng->uniform(-1.0, 1.0);
  return feats;
}

}  // namespace

TEST_CASE("zero parameters produce zero logits") {
  SurrogateModel model = small_model();
  ModelParams& p = model.mutable_params();
  std::fill(p.w_in.begin(), p.w_in.end(), 0.0);
  std::fill(p.w_rec.begin(), p.w_rec.end(), 0.0);
  std::fill(p.w_out.begin(), p.w_out.end(), 0.0);

  Rng rng(1);
  const Matrix logits = model.forward(random_features(5, 6, &rng));
  for (double v : logits.v) CHECK(v == 0.0);
}

TEST_CASE("doubling the output projection doubles the logits") {
  SurrogateModel model = small_model();
  Rng rng(2);
  const FeatureMatrix feats = random_features(7, 6, &rng);
  const Matrix base = model.forward(feats);

  for (double& w : model.mutable_params().w_out) w *= 2.0;
  for (double& b : model.mutable_params().b_out) b *= 2.0;
  const Matrix doubled = model.forward(feats);
  for (std::size_t i = 0; i < base.v.size(); ++i) {
    CHECK(doubled.v[i] == doctest::Approx(2.0 * base.v[i]).epsilon(1e-12));
  }
}

TEST_CASE("forward matches the step-by-step scalar recurrence oracle") {
  SurrogateModel model = small_model(17);
  Rng rng(5);
  const FeatureMatrix feats = random_features(9, 6, &rng);
  const Matrix fast = model.forward(feats);
  const Matrix slow = reference::naive_rnn_forward(model.params(), feats.values);
  REQUIRE(fast.v.size() == slow.v.size());
  for (std::size_t i = 0; i < fast.v.size(); ++i) {
    CHECK_NEAR(fast.v[i], slow.v[i], 1e-9);
  }
}

TEST_CASE("bptt gradients match finite differences on the parameters") {
  SurrogateModel model = small_model(23);
  Rng rng(7);
  const FeatureMatrix feats = random_features(6, 6, &rng);
  const std::vector<int> labels = {1, 3};

  Matrix hidden;
  const Matrix logits = model.forward(feats, &hidden);
  const Matrix dlogits = ctc_grad(logits, labels);
  ModelGrads grads = zero_grads_like(model.params());
  const Matrix dfeats = model.backward(feats, hidden, dlogits, &grads);

  auto loss_with = [&](SurrogateModel* m) {
    return ctc_loss(m->forward(feats), labels);
  };

  const double h = 1e-6;
  Rng pick(9);
  // Probe a few coordinates in every parameter block.
  struct Block {
    std::vector<double>* values;
    std::vector<double>* grad;
  };
  SurrogateModel mutated = model;
  std::vector<Block> blocks = {
      {&mutated.mutable_params().w_in, &grads.w_in},
      {&mutated.mutable_params().w_rec, &grads.w_rec},
      {&mutated.mutable_params().bias, &grads.bias},
      {&mutated.mutable_params().w_out, &grads.w_out},
      {&mutated.mutable_params().b_out, &grads.b_out},
  };
  for (const Block& block : blocks) {
    for (int probe = 0; probe < 6; ++probe) {
      const std::size_t i = pick.uniform_int(block.values->size());
      const double saved = (*block.values)[i];
      (*block.values)[i] = saved + h;
      const double up = loss_with(&mutated);
      (*block.values)[i] = saved - h;
      const double down = loss_with(&mutated);
      (*block.values)[i] = saved;
      const double fd = (up - down) / (2.0 * h);
      CHECK_CLOSE((*block.grad)[i], fd, 1e-4, 1e-8);
    }
  }

  // And on the features via the returned upstream gradient.
  FeatureMatrix fcopy = feats;
  for (int probe = 0; probe < 12; ++probe) {
    const std::size_t i = pick.uniform_int(fcopy.values.v.size());
    const double saved = fcopy.values.v[i];
    fcopy.values.v[i] = saved + h;
    const double up = ctc_loss(model.forward(fcopy), labels);
    fcopy.values.v[i] = saved - h;
    const double down = ctc_loss(model.forward(fcopy), labels);
    fcopy.values.v[i] = saved;
    const double fd = (up - down) / (2.0 * h);
    CHECK_CLOSE(dfeats.v[i], fd, 1e-4, 1e-8);
  }
}

TEST_CASE("waveform gradient matches finite differences through the full chain") {
  SurrogateModel model = small_model(29);
  Rng rng(11);
  std::vector<double> wav(220);
  for (double& s : wav) s = rng.uniform(-0.5, 0.5);
  const std::vector<int> labels = {2, 1};

  std::vector<double> grad;
  const double loss = model.loss_and_grad_wav(wav, labels, &grad);
  CHECK(loss == doctest::Approx(model.loss_wav(wav, labels)).epsilon(1e-12));
  REQUIRE(grad.size() == wav.size());

  int total = 0, good = 0;
  for (int probe = 0; probe < 50; ++probe) {
    const std::size_t i = rng.uniform_int(wav.size());
    const double h = 1e-4;
    auto wp = wav, wm = wav;
    wp[i] += h;
    wm[i] -= h;
    const double fd = (model.loss_wav(wp, labels) - model.loss_wav(wm, labels)) / (2.0 * h);
    if (std::abs(grad[i]) <= 1e-8 && std::abs(fd) <= 1e-6) continue;
    ++total;
    const double rel =
        std::abs(grad[i] - fd) / std::max({std::abs(grad[i]), std::abs(fd), 1e-12});
    if (rel < 1e-3) ++good;
  }
  REQUIRE(total >= 30);
  CHECK(good == total);
}

TEST_CASE("checkpoints round-trip bit-exactly") {
  SurrogateModel model = small_model(31);
  const auto path =
      (std::filesystem::temp_directory_path() / "overair_test_model.json").string();
  model.save(path);
  const SurrogateModel loaded = SurrogateModel::load(path);

  CHECK(loaded.params().w_in == model.params().w_in);
  CHECK(loaded.params().w_rec == model.params().w_rec);
  CHECK(loaded.params().bias == model.params().bias);
  CHECK(loaded.params().w_out == model.params().w_out);
  CHECK(loaded.params().b_out == model.params().b_out);
  CHECK(loaded.alphabet().characters() == model.alphabet().characters());
  CHECK(loaded.version() == model.version());

  Rng rng(13);
  const FeatureMatrix feats = random_features(5, 6, &rng);
  CHECK(loaded.forward(feats).v == model.forward(feats).v);
  std::filesystem::remove(path);
}

TEST_CASE("loading garbage fails cleanly") {
  namespace fs = std::filesystem;
  const auto path = (fs::temp_directory_path() / "overair_test_bad_model.json").string();
  {
    std::ofstream out(path);
    out << "{\"version\": \"something-else\"}";
  }
  CHECK_THROWS_AS(SurrogateModel::load(path), Error);
  fs::remove(path);
  CHECK_THROWS_AS(SurrogateModel::load("/nonexistent/model.json"), Error);
}
