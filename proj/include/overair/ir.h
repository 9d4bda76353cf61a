// overair/ir.h

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

#ifndef OVERAIR_IR_H_
#define OVERAIR_IR_H_

#include <cstdint>
#include <string>
#include <vector>

namespace overair {

// Room/channel impulse response, energy-normalized so sum(taps^2) == 1.
// Normalization decouples reverberation shape from loudness, keeping noise
// levels and SNR comparable across responses.
struct ImpulseResponse {
  std::vector<double> taps;
  int sample_rate = 0;
  std::string label;

  double energy() const;
};

// Parameters of the synthetic exponential-decay room model.
struct IrSynthesisParams {
  double rt60 = 0.2;         // seconds to decay by 60 dB
  double direct_ratio = 0.6; // direct-path fraction of total energy, (0, 1]
  double length_s = 0.25;    // response length in seconds, >= rt60 / 2
};

// Direct-path delta at t=0 plus Gaussian tail shaped by exp(-6.908 t / rt60),
// energy-normalized. Deterministic per seed.
ImpulseResponse synth_ir(const IrSynthesisParams& params, int sample_rate,
                         uint64_t seed);

// Loads an externally recorded IR from a mono WAV and energy-normalizes it.
ImpulseResponse load_ir_wav(const std::string& path, int required_rate);

// A persisted set of impulse responses: one WAV per response plus a manifest
// line carrying label, seed, and synthesis parameters.
struct IrBankRecord {
  std::string label;
  uint64_t seed = 0;
  IrSynthesisParams params;
  std::string file;
};

struct IrBank {
  std::vector<ImpulseResponse> irs;
  std::vector<IrBankRecord> records;
};

void save_ir_bank(const IrBank& bank, const std::string& dir);
IrBank load_ir_bank(const std::string& dir, int required_rate);

}  // namespace overair

#endif  // OVERAIR_IR_H_
