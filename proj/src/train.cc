// overair/train.cc

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

#include "overair/train.h"

#include <cmath>

#include "overair/adam.h"
#include "overair/ctc.h"
#include "overair/error.h"
#include "overair/parallel.h"
#include "overair/rng.h"

namespace overair {

namespace {

// Gain/noise augmentation for one utterance; the stream is a pure function
// of (seed, epoch, utterance index), so scheduling cannot change it.
std::vector<double> augment(const std::vector<double>& samples, const TrainConfig& cfg,
                            uint64_t epoch, uint64_t index) {
  Rng rng(derive_seed(cfg.seed, (epoch << 24) ^ index));
  const double gain =
      std::pow(10.0, rng.uniform(-cfg.gain_jitter_db, cfg.gain_jitter_db) / 20.0);
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i] = gain * samples[i] + (cfg.noise_sigma > 0.0 ? rng.normal(cfg.noise_sigma) : 0.0);
  }
  return out;
}

// CTC loss and parameter gradients for one utterance.
double utterance_grad(const SurrogateModel& model, const std::vector<double>& samples,
                      const std::vector<int>& labels, ModelGrads* grads) {
  const FeatureMatrix feats = model.extractor().forward(samples);
  Matrix hidden;
  const Matrix logits = model.forward(feats, &hidden);
  double loss = 0.0;
  const Matrix dlogits = ctc_grad(logits, labels, &loss);
  model.backward(feats, hidden, dlogits, grads);
  return loss;
}

}  // namespace

TrainResult train(SurrogateModel* model, const std::vector<LabeledClip>& corpus,
                  const TrainConfig& cfg) {
  if (corpus.empty()) {
    throw Error(ErrorKind::kDomain, "train: empty corpus");
  }
  if (cfg.batch_size <= 0 || cfg.epochs < 0) {
    throw Error(ErrorKind::kConfig, "train: bad epochs/batch size");
  }

  TrainResult result;
  if (cfg.epochs == 0) return result;

  std::vector<double> flat = model->mutable_params().flatten();
  AdamState adam(flat.size());

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(cfg.seed, 0x5500000 + epoch));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.uniform_int(i)]);
    }

    double epoch_loss_sum = 0.0;
    for (std::size_t base = 0; base < order.size();
         base += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t count =
          std::min<std::size_t>(cfg.batch_size, order.size() - base);

      std::vector<ModelGrads> slot_grads(count);
      std::vector<double> slot_loss(count, 0.0);
      parallel_for(static_cast<std::int64_t>(count), [&](std::int64_t s) {
        const std::size_t idx = order[base + s];
        const std::vector<double> wav =
            augment(corpus[idx].clip.samples, cfg, epoch, idx);
        slot_grads[s] = zero_grads_like(model->params());
        slot_loss[s] = utterance_grad(*model, wav, corpus[idx].phrase.label_ids,
                                      &slot_grads[s]);
      });

      ModelGrads batch = zero_grads_like(model->params());
      double batch_loss = 0.0;
      for (std::size_t s = 0; s < count; ++s) {  // fixed reduction order
        batch_loss += slot_loss[s];
        for (auto [dst, src] : {std::pair(&batch.w_in, &slot_grads[s].w_in),
                                std::pair(&batch.w_rec, &slot_grads[s].w_rec),
                                std::pair(&batch.bias, &slot_grads[s].bias),
                                std::pair(&batch.w_out, &slot_grads[s].w_out),
                                std::pair(&batch.b_out, &slot_grads[s].b_out)}) {
          for (std::size_t i = 0; i < dst->size(); ++i) (*dst)[i] += (*src)[i];
        }
      }
      if (!std::isfinite(batch_loss)) {
        throw Error(ErrorKind::kDivergence,
                    "train: non-finite loss in epoch " + std::to_string(epoch));
      }
      epoch_loss_sum += batch_loss;

      std::vector<double> grad = batch.flatten();
      const double inv = 1.0 / static_cast<double>(count);
      for (double& g : grad) g *= inv;
      adam_step(&adam, &flat, grad, cfg.learning_rate);
      model->mutable_params().unflatten(flat);
    }
    result.epoch_loss.push_back(epoch_loss_sum / static_cast<double>(corpus.size()));
  }
  return result;
}

double decode_accuracy(const SurrogateModel& model,
                       const std::vector<LabeledClip>& clips) {
  if (clips.empty()) {
    throw Error(ErrorKind::kDomain, "decode_accuracy: no clips");
  }
  std::vector<int> hits(clips.size(), 0);
  parallel_for(static_cast<std::int64_t>(clips.size()), [&](std::int64_t i) {
    hits[i] = model.decode_wav(clips[i].clip.samples) == clips[i].phrase.text ? 1 : 0;
  });
  int total = 0;
  for (int h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(clips.size());
}

}  // namespace overair
