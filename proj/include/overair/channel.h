// overair/channel.h

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

#ifndef OVERAIR_CHANNEL_H_
#define OVERAIR_CHANNEL_H_

#include <cstdint>
#include <vector>

#include "overair/audio.h"
#include "overair/ir.h"
#include "overair/rng.h"

namespace overair {

// Full playback-channel description: reverberation bank, noise floor,
// device band limits, and loudness jitter.
struct ChannelConfig {
  std::vector<ImpulseResponse> ir_bank;
  std::vector<uint64_t> ir_seeds;   // synthesis seeds, for split bookkeeping
  double noise_sigma = 0.01;
  bool device_band_enabled = true;
  double device_band_low_hz = 100.0;
  double device_band_high_hz = 7500.0;
  int device_band_taps = 511;
  double gain_jitter_db = 3.0;
};

// One concrete sampled channel realization; fully determines simulate().
struct ChannelDraw {
  int ir_index = 0;
  uint64_t noise_seed = 0;
  double gain = 1.0;
};

// Uniform response choice, fresh noise seed, gain from the jitter range.
ChannelDraw sample_channel(const ChannelConfig& cfg, Rng* rng);

// Fixed stage order: convolve -> gain -> device band-limit -> noise.
AudioClip simulate(const AudioClip& clip, const ChannelDraw& draw,
                   const ChannelConfig& cfg);

// Adjoint of simulate in the input signal for a fixed draw (the noise stage
// is an identity offset, so its adjoint is the identity).
std::vector<double> simulate_adjoint(const std::vector<double>& grad,
                                     const ChannelDraw& draw,
                                     const ChannelConfig& cfg);

// Synthesizes one response per seed, cycling through the strata; response i
// is labeled "<prefix>_<i>".
IrBank synth_ir_bank(const std::vector<IrSynthesisParams>& strata,
                     const std::vector<uint64_t>& seeds, int sample_rate,
                     const std::string& prefix);

// Convenience: `count` responses seeded seed_base .. seed_base + count - 1.
IrBank synth_ir_bank(const std::vector<IrSynthesisParams>& strata, int count,
                     uint64_t seed_base, int sample_rate,
                     const std::string& prefix);

// derive_seed(master, base + i) for i in [0, count): a disjoint seed range
// per (master, base) pair.
std::vector<uint64_t> ir_seed_range(uint64_t master, uint64_t base, int count);

// Channel over an IR bank; keeps the synthesis seeds for disjointness checks.
ChannelConfig make_channel(const IrBank& bank, double noise_sigma,
                           double gain_jitter_db);

// Held-out evaluation channel. Errors when any evaluation seed also occurs
// in train_seeds: evaluation responses must never be seen by the attack.
ChannelConfig make_eval_channel(const std::vector<IrSynthesisParams>& strata,
                                const std::vector<uint64_t>& seeds,
                                const std::vector<uint64_t>& train_seeds,
                                int sample_rate, double noise_sigma,
                                double gain_jitter_db);

// Convenience over a plain seed range, as above.
ChannelConfig make_eval_channel(const std::vector<IrSynthesisParams>& strata,
                                int count, uint64_t seed_base,
                                const std::vector<uint64_t>& train_seeds,
                                int sample_rate, double noise_sigma,
                                double gain_jitter_db);

// Default rt60 strata for synthetic banks: 0.1, 0.2, 0.3, 0.5 seconds.
std::vector<IrSynthesisParams> default_ir_strata();

}  // namespace overair

#endif  // OVERAIR_CHANNEL_H_
