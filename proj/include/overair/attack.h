// overair/attack.h

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

#ifndef OVERAIR_ATTACK_H_
#define OVERAIR_ATTACK_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "overair/adam.h"
#include "overair/channel.h"
#include "overair/fft.h"
#include "overair/fir.h"
#include "overair/model.h"

namespace overair {

// Generator knobs. The three technique flags are independent; with all of
// them off and one transform per step the objective degrades to the plain
// direct-input attack.
struct AttackConfig {
  double epsilon = 0.02;          // L2 penalty weight on the raw variable
  double learning_rate = 1e-2;
  int max_steps = 2000;
  int transforms_per_step = 8;    // sampled channels per step
  double band_low_hz = 1000.0;    // perturbation band
  double band_high_hz = 4000.0;
  int band_taps = 511;
  double noise_sigma = 0.01;      // objective noise when the flag is on
  bool bandpass = true;
  bool impulse = true;
  bool noise = true;
  double clamp = 0.0;             // max-norm bound on v; 0 disables
  int checkpoint_every = 50;
  int success_streak = 8;         // consecutive probe hits that stop the run
  uint64_t seed = 1;
};

struct AttackCheckpoint {
  int step = 0;
  std::vector<double> v;          // raw optimized variable
  double snr_db = 0.0;            // of the effective perturbation against x
  double sampled_loss = 0.0;      // objective value at this step
  std::string probe_decode;
  int probe_edit_distance = 0;
};

enum class AttackStatus { kSuccess, kMaxSteps };

struct AttackResult {
  std::vector<double> v;
  std::vector<double> effective;  // what actually gets added to x
  AttackStatus status = AttackStatus::kMaxSteps;
  int steps_run = 0;
  std::vector<AttackCheckpoint> checkpoints;
};

// Shared state of one attack: input clip, target, designed perturbation
// filter, and per-response spectra cached for the clip length. Immutable
// during optimization; objective evaluations are const and thread-safe.
class AttackEngine {
 public:
  AttackEngine(const SurrogateModel& model, const AudioClip& x,
               const TargetPhrase& target, const ChannelConfig& training_channel,
               const AttackConfig& cfg);

  // Sample-approximated objective: mean over draws of the CTC loss of the
  // transformed clip, plus epsilon * ||v||_2. Writes d(objective)/d(v).
  // Draw evaluations run in parallel; the mean is reduced in draw order.
  double objective(const std::vector<double>& v,
                   const std::vector<ChannelDraw>& draws,
                   std::vector<double>* grad) const;

  // BPF(v) when the band-pass flag is on, otherwise v itself.
  std::vector<double> effective_perturbation(const std::vector<double>& v) const;

  // Adam loop with per-step fresh draws, periodic checkpoints, and the
  // consecutive-probe early stop. Deterministic per cfg.seed.
  AttackResult run();

  const AttackConfig& config() const { return cfg_; }
  const AudioClip& input() const { return x_; }

 private:
  std::vector<double> transformed(const std::vector<double>& base,
                                  const ChannelDraw& draw) const;

  const SurrogateModel& model_;
  AudioClip x_;
  TargetPhrase target_;
  ChannelConfig channel_;
  AttackConfig cfg_;
  FirFilter band_;
  std::vector<std::unique_ptr<IrSpectrum>> ir_spectra_;
};

// Convenience wrapper: build an engine and run it.
AttackResult generate(const SurrogateModel& model, const AudioClip& x,
                      const TargetPhrase& target, const ChannelConfig& training_channel,
                      const AttackConfig& cfg);

// Effective perturbation of a raw variable under a config, without an
// engine. Matches AttackEngine::effective_perturbation bit for bit.
std::vector<double> attack_effective_perturbation(const std::vector<double>& v,
                                                  const AttackConfig& cfg,
                                                  int sample_rate);

// One row of the technique-switching study.
struct AblationRow {
  bool bandpass = false;
  bool impulse = false;
  bool noise = false;
  int steps_run = 0;
  bool direct_success = false;      // decodes to the target with no channel
  bool channel_success = false;     // some checkpoint reached >= 50% held-out
  double best_snr_db = 0.0;         // highest SNR among qualifying checkpoints
  double final_success_rate = 0.0;  // held-out rate of the final perturbation
  double final_snr_db = 0.0;
};

struct AblationReport {
  std::vector<AblationRow> rows;  // all 8 flag combinations, fixed order
};

// Runs the generator once per flag combination under a shared step budget
// and scores every checkpoint against the held-out channel. Deterministic
// per cfg.seed.
AblationReport ablate(const SurrogateModel& model, const AudioClip& x,
                      const TargetPhrase& target, const ChannelConfig& training_channel,
                      const ChannelConfig& eval_channel, const AttackConfig& base_cfg,
                      int trials_per_checkpoint);

}  // namespace overair

#endif  // OVERAIR_ATTACK_H_
