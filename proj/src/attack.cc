// overair/attack.cc

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

#include "overair/attack.h"

#include <cmath>

#include "overair/ctc.h"
#include "overair/error.h"
#include "overair/eval.h"
#include "overair/mfcc.h"
#include "overair/parallel.h"

namespace overair {

namespace {

void check_attack_config(const AttackConfig& cfg) {
  if (cfg.max_steps <= 0 || cfg.transforms_per_step < 1 ||
      cfg.checkpoint_every <= 0 || cfg.success_streak < 1) {
    throw Error(ErrorKind::kConfig, "attack: bad step/draw counts");
  }
  if (cfg.epsilon < 0.0 || cfg.noise_sigma < 0.0 || cfg.clamp < 0.0 ||
      !(cfg.learning_rate > 0.0)) {
    throw Error(ErrorKind::kConfig, "attack: bad penalty/rate values");
  }
}

}  // namespace

AttackEngine::AttackEngine(const SurrogateModel& model, const AudioClip& x,
                           const TargetPhrase& target,
                           const ChannelConfig& training_channel,
                           const AttackConfig& cfg)
    : model_(model), x_(x), target_(target), channel_(training_channel), cfg_(cfg) {
  check_attack_config(cfg);
  if (x_.sample_rate != model.mfcc_config().sample_rate) {
    throw Error(ErrorKind::kDomain, "attack: clip rate differs from the model rate");
  }
  if (target_.label_ids.empty()) {
    throw Error(ErrorKind::kDomain, "attack: empty target phrase");
  }
  const int frames = mfcc_num_frames(x_.size(), model.mfcc_config());
  if (frames < ctc_min_frames(target_.label_ids)) {
    throw Error(ErrorKind::kDomain,
                "attack: target is too long for the clip's frame count");
  }

  if (cfg_.bandpass) {
    band_ = design_bandpass(cfg_.band_low_hz, cfg_.band_high_hz, x_.sample_rate,
                            cfg_.band_taps);
  }
  if (cfg_.impulse) {
    for (const ImpulseResponse& ir : channel_.ir_bank) {
      if (ir.sample_rate != x_.sample_rate) {
        throw Error(ErrorKind::kDomain, "attack: impulse response rate mismatch");
      }
      ir_spectra_.push_back(std::make_unique<IrSpectrum>(ir.taps, x_.size()));
    }
  }
}

std::vector<double> AttackEngine::effective_perturbation(
    const std::vector<double>& v) const {
  return cfg_.bandpass ? apply_fir(v, band_) : v;
}

std::vector<double> AttackEngine::transformed(const std::vector<double>& base,
                                              const ChannelDraw& draw) const {
  std::vector<double> out =
      cfg_.impulse ? ir_spectra_[draw.ir_index]->convolve(base) : base;
  if (cfg_.noise) {
    Rng rng(draw.noise_seed);
    out = add_noise(out, cfg_.noise_sigma, &rng);
  }
  return out;
}

double AttackEngine::objective(const std::vector<double>& v,
                               const std::vector<ChannelDraw>& draws,
                               std::vector<double>* grad) const {
  if (v.size() != x_.size()) {
    throw Error(ErrorKind::kDomain, "objective: perturbation length mismatch");
  }
  if (draws.empty()) {
    throw Error(ErrorKind::kDomain, "objective: no channel draws");
  }

  const std::vector<double> veff = effective_perturbation(v);
  std::vector<double> base(x_.size());
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = x_.samples[i] + veff[i];

  const int K = static_cast<int>(draws.size());
  std::vector<double> slot_loss(K, 0.0);
  std::vector<std::vector<double>> slot_grad(K);
  parallel_for(K, [&](std::int64_t d) {
    const std::vector<double> x_tilde = transformed(base, draws[d]);
    std::vector<double> gwav;
    slot_loss[d] = model_.loss_and_grad_wav(x_tilde, target_.label_ids, &gwav);
    slot_grad[d] =
        cfg_.impulse ? ir_spectra_[draws[d].ir_index]->adjoint(gwav) : std::move(gwav);
  });

  double loss_sum = 0.0;
  std::vector<double> grad_sum(x_.size(), 0.0);
  for (int d = 0; d < K; ++d) {  // fixed reduction order
    loss_sum += slot_loss[d];
    for (std::size_t i = 0; i < grad_sum.size(); ++i) grad_sum[i] += slot_grad[d][i];
  }
  const double inv = 1.0 / static_cast<double>(K);
  double loss = loss_sum * inv;
  for (double& g : grad_sum) g *= inv;

  *grad = cfg_.bandpass ? apply_fir_adjoint(grad_sum, band_) : std::move(grad_sum);

  // epsilon * ||v||_2, with gradient epsilon * v / ||v||, defined as 0 at 0.
  if (cfg_.epsilon > 0.0) {
    double norm_sq = 0.0;
    for (double vi : v) norm_sq += vi * vi;
    const double norm = std::sqrt(norm_sq);
    loss += cfg_.epsilon * norm;
    if (norm > 0.0) {
      const double scale = cfg_.epsilon / norm;
      for (std::size_t i = 0; i < grad->size(); ++i) (*grad)[i] += scale * v[i];
    }
  }
  return loss;
}

AttackResult AttackEngine::run() {
  const std::string clean_decode = model_.decode_wav(x_.samples);
  if (clean_decode == target_.text) {
    throw Error(ErrorKind::kDomain,
                "attack: the clip already decodes to the target phrase");
  }

  Rng draw_rng(derive_seed(cfg_.seed, 1));
  Rng probe_rng(derive_seed(cfg_.seed, 2));

  std::vector<double> v(x_.size(), 0.0);
  AdamState adam(v.size());
  AttackResult result;
  int streak = 0;

  std::vector<ChannelDraw> draws(cfg_.transforms_per_step);
  for (int step = 1; step <= cfg_.max_steps; ++step) {
    for (ChannelDraw& d : draws) d = sample_channel(channel_, &draw_rng);

    std::vector<double> grad;
    const double loss = objective(v, draws, &grad);
    if (!std::isfinite(loss)) {
      throw Error(ErrorKind::kDivergence,
                  "attack: non-finite objective at step " + std::to_string(step));
    }
    adam_step(&adam, &v, grad, cfg_.learning_rate, cfg_.clamp);
    result.steps_run = step;

    // Probe a fresh training-bank channel with the updated perturbation; the
    // held-out evaluation bank is never touched during generation.
    const std::vector<double> veff = effective_perturbation(v);
    AudioClip candidate;
    candidate.sample_rate = x_.sample_rate;
    candidate.samples.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
      candidate.samples[i] = x_.samples[i] + veff[i];
    }
    const ChannelDraw probe = sample_channel(channel_, &probe_rng);
    const std::string probe_decode =
        model_.decode_wav(simulate(candidate, probe, channel_).samples);
    streak = (probe_decode == target_.text) ? streak + 1 : 0;
    const bool success = streak >= cfg_.success_streak;

    if (step % cfg_.checkpoint_every == 0 || success || step == cfg_.max_steps) {
      AttackCheckpoint ckpt;
      ckpt.step = step;
      ckpt.v = v;
      ckpt.snr_db = snr_db(x_.samples, veff);
      ckpt.sampled_loss = loss;
      ckpt.probe_decode = probe_decode;
      ckpt.probe_edit_distance = edit_distance(probe_decode, target_.text);
      result.checkpoints.push_back(std::move(ckpt));
    }
    if (success) {
      result.status = AttackStatus::kSuccess;
      break;
    }
  }

  result.v = v;
  result.effective = effective_perturbation(v);
  return result;
}

AttackResult generate(const SurrogateModel& model, const AudioClip& x,
                      const TargetPhrase& target, const ChannelConfig& training_channel,
                      const AttackConfig& cfg) {
  AttackEngine engine(model, x, target, training_channel, cfg);
  return engine.run();
}

std::vector<double> attack_effective_perturbation(const std::vector<double>& v,
                                                  const AttackConfig& cfg,
                                                  int sample_rate) {
  if (!cfg.bandpass) return v;
  const FirFilter band =
      design_bandpass(cfg.band_low_hz, cfg.band_high_hz, sample_rate, cfg.band_taps);
  return apply_fir(v, band);
}

AblationReport ablate(const SurrogateModel& model, const AudioClip& x,
                      const TargetPhrase& target, const ChannelConfig& training_channel,
                      const ChannelConfig& eval_channel, const AttackConfig& base_cfg,
                      int trials_per_checkpoint) {
  if (trials_per_checkpoint < 1) {
    throw Error(ErrorKind::kDomain, "ablate: trials_per_checkpoint must be >= 1");
  }

  AblationReport report;
  for (int combo = 0; combo < 8; ++combo) {
    AttackConfig cfg = base_cfg;
    cfg.bandpass = (combo & 1) != 0;
    cfg.impulse = (combo & 2) != 0;
    cfg.noise = (combo & 4) != 0;
    cfg.seed = derive_seed(base_cfg.seed, 0xAB1A000 + combo);

    const AttackResult run = generate(model, x, target, training_channel, cfg);
    AttackEngine scorer(model, x, target, training_channel, cfg);

    AblationRow row;
    row.bandpass = cfg.bandpass;
    row.impulse = cfg.impulse;
    row.noise = cfg.noise;
    row.steps_run = run.steps_run;

    AudioClip direct;
    direct.sample_rate = x.sample_rate;
    direct.samples.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      direct.samples[i] = x.samples[i] + run.effective[i];
    }
    row.direct_success = model.decode_wav(direct.samples) == target.text;

    const uint64_t eval_seed = derive_seed(cfg.seed, 3);
    bool found = false;
    double best_snr = -1e300;
    for (const AttackCheckpoint& ckpt : run.checkpoints) {
      const std::vector<double> veff = scorer.effective_perturbation(ckpt.v);
      AudioClip adv;
      adv.sample_rate = x.sample_rate;
      adv.samples.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) adv.samples[i] = x.samples[i] + veff[i];
      const EvalRecord record =
          evaluate(adv, target, model, eval_channel, trials_per_checkpoint, eval_seed);
      if (record.success_rate >= 0.5) {
        found = true;
        best_snr = std::max(best_snr, ckpt.snr_db);
      }
      if (ckpt.step == run.steps_run) {
        row.final_success_rate = record.success_rate;
        row.final_snr_db = ckpt.snr_db;
      }
    }
    row.channel_success = found;
    row.best_snr_db = found ? best_snr : 0.0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace overair
