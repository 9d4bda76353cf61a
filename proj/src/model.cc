// overair/model.cc

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

#include "overair/model.h"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "overair/ctc.h"
#include "overair/error.h"
#include "overair/rng.h"

namespace overair {

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::kDivergence,
                  std::string("model: non-finite value in ") + what);
    }
  }
}

}  // namespace

std::size_t ModelParams::count() const {
  return w_in.size() + w_rec.size() + bias.size() + w_out.size() + b_out.size();
}

std::vector<double> ModelParams::flatten() const {
  std::vector<double> flat;
  flat.reserve(count());
  for (const auto* block : {&w_in, &w_rec, &bias, &w_out, &b_out}) {
    flat.insert(flat.end(), block->begin(), block->end());
  }
  return flat;
}

void ModelParams::unflatten(const std::vector<double>& flat) {
  if (flat.size() != count()) {
    throw Error(ErrorKind::kDomain, "model: flat parameter size mismatch");
  }
  std::size_t off = 0;
  for (auto* block : {&w_in, &w_rec, &bias, &w_out, &b_out}) {
    std::copy(flat.begin() + off, flat.begin() + off + block->size(), block->begin());
    off += block->size();
  }
}

ModelGrads zero_grads_like(const ModelParams& params) {
  ModelGrads grads;
  grads.input_dim = params.input_dim;
  grads.hidden = params.hidden;
  grads.num_classes = params.num_classes;
  grads.w_in.assign(params.w_in.size(), 0.0);
  grads.w_rec.assign(params.w_rec.size(), 0.0);
  grads.bias.assign(params.bias.size(), 0.0);
  grads.w_out.assign(params.w_out.size(), 0.0);
  grads.b_out.assign(params.b_out.size(), 0.0);
  return grads;
}

SurrogateModel::SurrogateModel(const MfccConfig& mfcc_cfg, const Alphabet& alphabet,
                               int hidden_size, uint64_t init_seed)
    : mfcc_(mfcc_cfg), alphabet_(alphabet), version_(kVersionTag) {
  if (hidden_size <= 0) {
    throw Error(ErrorKind::kConfig, "model: hidden size must be positive");
  }
  params_.input_dim = mfcc_cfg.num_coefficients;
  params_.hidden = hidden_size;
  params_.num_classes = alphabet.num_classes();
  params_.w_in.resize(static_cast<std::size_t>(hidden_size) * params_.input_dim);
  params_.w_rec.resize(static_cast<std::size_t>(hidden_size) * hidden_size);
  params_.bias.assign(hidden_size, 0.0);
  params_.w_out.resize(static_cast<std::size_t>(params_.num_classes) * hidden_size);
  params_.b_out.assign(params_.num_classes, 0.0);

  Rng rng(init_seed);
  const double in_scale = 1.0 / std::sqrt(params_.input_dim);
  for (double& w : params_.w_in) w = rng.uniform(-in_scale, in_scale);
  const double rec_scale = 1.0 / std::sqrt(hidden_size);
  for (double& w : params_.w_rec) w = rng.uniform(-rec_scale, rec_scale);
  for (double& w : params_.w_out) w = rng.uniform(-rec_scale, rec_scale);
}

Matrix SurrogateModel::forward(const FeatureMatrix& features, Matrix* hidden_cache) const {
  const Matrix& x = features.values;
  if (x.cols != params_.input_dim) {
    throw Error(ErrorKind::kDomain, "model_forward: feature width mismatch");
  }
  const int T = x.rows;
  const int H = params_.hidden;
  const int C = params_.num_classes;

  Matrix logits(T, C);
  if (hidden_cache != nullptr) *hidden_cache = Matrix(T, H);

  std::vector<double> h_prev(H, 0.0), h(H);
  for (int t = 0; t < T; ++t) {
    const double* xt = x.row(t);
    for (int i = 0; i < H; ++i) {
      double pre = params_.bias[i];
      const double* wi = params_.w_in.data() + static_cast<std::size_t>(i) * params_.input_dim;
      for (int j = 0; j < params_.input_dim; ++j) pre += wi[j] * xt[j];
      const double* wr = params_.w_rec.data() + static_cast<std::size_t>(i) * H;
      for (int j = 0; j < H; ++j) pre += wr[j] * h_prev[j];
      h[i] = std::tanh(pre);
    }
    double* ut = logits.row(t);
    for (int k = 0; k < C; ++k) {
      double u = params_.b_out[k];
      const double* wo = params_.w_out.data() + static_cast<std::size_t>(k) * H;
      for (int j = 0; j < H; ++j) u += wo[j] * h[j];
      ut[k] = u;
    }
    if (hidden_cache != nullptr) {
      std::copy(h.begin(), h.end(), hidden_cache->row(t));
    }
    std::swap(h_prev, h);
  }
  return logits;
}

Matrix SurrogateModel::backward(const FeatureMatrix& features, const Matrix& hidden_cache,
                                const Matrix& dlogits, ModelGrads* grads) const {
  const Matrix& x = features.values;
  const int T = x.rows;
  const int H = params_.hidden;
  const int C = params_.num_classes;
  const int D = params_.input_dim;
  if (dlogits.rows != T || dlogits.cols != C || hidden_cache.rows != T ||
      hidden_cache.cols != H) {
    throw Error(ErrorKind::kDomain, "model_backward: shape mismatch");
  }

  Matrix dfeatures(T, D);
  std::vector<double> delta_next(H, 0.0);  // dL/d(pre-activation) at t+1
  std::vector<double> dh(H), delta(H);

  for (int t = T - 1; t >= 0; --t) {
    const double* du = dlogits.row(t);
    const double* ht = hidden_cache.row(t);

    // dL/dh_t from the output projection and from the next step's recurrence.
    for (int j = 0; j < H; ++j) {
      double acc = 0.0;
      for (int k = 0; k < C; ++k) acc += params_.w_out[static_cast<std::size_t>(k) * H + j] * du[k];
      for (int i = 0; i < H; ++i) acc += params_.w_rec[static_cast<std::size_t>(i) * H + j] * delta_next[i];
      dh[j] = acc;
    }
    for (int j = 0; j < H; ++j) delta[j] = dh[j] * (1.0 - ht[j] * ht[j]);

    if (grads != nullptr) {
      for (int k = 0; k < C; ++k) {
        double* wo = grads->w_out.data() + static_cast<std::size_t>(k) * H;
        for (int j = 0; j < H; ++j) wo[j] += du[k] * ht[j];
        grads->b_out[k] += du[k];
      }
      const double* xt = x.row(t);
      const double* h_prev = (t > 0) ? hidden_cache.row(t - 1) : nullptr;
      for (int i = 0; i < H; ++i) {
        double* wi = grads->w_in.data() + static_cast<std::size_t>(i) * D;
        for (int j = 0; j < D; ++j) wi[j] += delta[i] * xt[j];
        if (h_prev != nullptr) {
          double* wr = grads->w_rec.data() + static_cast<std::size_t>(i) * H;
          for (int j = 0; j < H; ++j) wr[j] += delta[i] * h_prev[j];
        }
        grads->bias[i] += delta[i];
      }
    }

    double* dx = dfeatures.row(t);
    for (int j = 0; j < D; ++j) {
      double acc = 0.0;
      for (int i = 0; i < H; ++i) acc += params_.w_in[static_cast<std::size_t>(i) * D + j] * delta[i];
      dx[j] = acc;
    }
    std::swap(delta_next, delta);
  }
  return dfeatures;
}

double SurrogateModel::loss_wav(const std::vector<double>& waveform,
                                const std::vector<int>& labels) const {
  const FeatureMatrix feats = mfcc_.forward(waveform);
  const Matrix logits = forward(feats);
  return ctc_loss(logits, labels);
}

double SurrogateModel::loss_and_grad_wav(const std::vector<double>& waveform,
                                         const std::vector<int>& labels,
                                         std::vector<double>* grad) const {
  const FeatureMatrix feats = mfcc_.forward(waveform);
  Matrix hidden;
  const Matrix logits = forward(feats, &hidden);
  double loss = 0.0;
  const Matrix dlogits = ctc_grad(logits, labels, &loss);
  const Matrix dfeats = backward(feats, hidden, dlogits, nullptr);
  FeatureMatrix upstream;
  upstream.values = dfeats;
  upstream.frame_length = feats.frame_length;
  upstream.hop = feats.hop;
  *grad = mfcc_.vjp(waveform, upstream);
  return loss;
}

std::string SurrogateModel::decode_wav(const std::vector<double>& waveform) const {
  const FeatureMatrix feats = mfcc_.forward(waveform);
  const Matrix logits = forward(feats);
  return greedy_decode(logits, alphabet_);
}

void SurrogateModel::save(const std::string& path) const {
  nlohmann::json j;
  j["version"] = version_;
  j["alphabet"] = alphabet_.characters();
  const MfccConfig& cfg = mfcc_.config();
  j["mfcc"] = {{"frame_length", cfg.frame_length},
               {"hop", cfg.hop},
               {"fft_size", cfg.fft_size},
               {"num_mel_filters", cfg.num_mel_filters},
               {"num_coefficients", cfg.num_coefficients},
               {"log_floor", cfg.log_floor},
               {"sample_rate", cfg.sample_rate}};
  j["hidden"] = params_.hidden;
  j["num_classes"] = params_.num_classes;
  j["w_in"] = params_.w_in;
  j["w_rec"] = params_.w_rec;
  j["bias"] = params_.bias;
  j["w_out"] = params_.w_out;
  j["b_out"] = params_.b_out;

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kIo, "model save: cannot write '" + path + "'");
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw Error(ErrorKind::kIo, "model save: write failed for '" + path + "'");
  }
}

SurrogateModel SurrogateModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIo, "model load: cannot open '" + path + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("model load: ") + e.what());
  }
  if (j.value("version", "") != kVersionTag) {
    throw Error(ErrorKind::kIo, "model load: unknown checkpoint version");
  }

  MfccConfig cfg;
  const auto& m = j.at("mfcc");
  cfg.frame_length = m.at("frame_length").get<int>();
  cfg.hop = m.at("hop").get<int>();
  cfg.fft_size = m.at("fft_size").get<int>();
  cfg.num_mel_filters = m.at("num_mel_filters").get<int>();
  cfg.num_coefficients = m.at("num_coefficients").get<int>();
  cfg.log_floor = m.at("log_floor").get<double>();
  cfg.sample_rate = m.at("sample_rate").get<int>();

  SurrogateModel model(cfg, Alphabet(j.at("alphabet").get<std::string>()),
                       j.at("hidden").get<int>(), /*init_seed=*/0);
  if (model.params_.num_classes != j.at("num_classes").get<int>()) {
    throw Error(ErrorKind::kIo, "model load: class count mismatch");
  }
  model.params_.w_in = j.at("w_in").get<std::vector<double>>();
  model.params_.w_rec = j.at("w_rec").get<std::vector<double>>();
  model.params_.bias = j.at("bias").get<std::vector<double>>();
  model.params_.w_out = j.at("w_out").get<std::vector<double>>();
  model.params_.b_out = j.at("b_out").get<std::vector<double>>();

  const std::size_t h = model.params_.hidden, d = model.params_.input_dim,
                    c = model.params_.num_classes;
  if (model.params_.w_in.size() != h * d || model.params_.w_rec.size() != h * h ||
      model.params_.bias.size() != h || model.params_.w_out.size() != c * h ||
      model.params_.b_out.size() != c) {
    throw Error(ErrorKind::kIo, "model load: parameter shape mismatch");
  }
  check_finite(model.params_.w_in, "w_in");
  check_finite(model.params_.w_rec, "w_rec");
  check_finite(model.params_.bias, "bias");
  check_finite(model.params_.w_out, "w_out");
  check_finite(model.params_.b_out, "b_out");
  return model;
}

}  // namespace overair
