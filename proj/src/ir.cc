// overair/ir.cc

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

#include "overair/ir.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "overair/error.h"
#include "overair/rng.h"
#include "overair/wav.h"

namespace overair {

namespace {

// Amplitude decay constant: 60 dB down at t = rt60.
constexpr double kDecayLn = 6.908;

void normalize_energy(std::vector<double>* taps) {
  double energy = 0.0;
  for (double t : *taps) energy += t * t;
  if (energy <= 0.0) {
    throw Error(ErrorKind::kDomain, "impulse response has zero energy");
  }
  const double scale = 1.0 / std::sqrt(energy);
  for (double& t : *taps) t *= scale;
}

void validate(const IrSynthesisParams& params) {
  if (!(params.rt60 > 0.0)) {
    throw Error(ErrorKind::kDomain, "synth_ir: rt60 must be positive");
  }
  if (!(params.length_s >= params.rt60 / 2.0)) {
    throw Error(ErrorKind::kDomain, "synth_ir: length must be >= rt60 / 2");
  }
  if (!(params.direct_ratio > 0.0) || params.direct_ratio > 1.0) {
    throw Error(ErrorKind::kDomain, "synth_ir: direct_ratio must be in (0, 1]");
  }
}

}  // namespace

double ImpulseResponse::energy() const {
  double e = 0.0;
  for (double t : taps) e += t * t;
  return e;
}

ImpulseResponse synth_ir(const IrSynthesisParams& params, int sample_rate,
                         uint64_t seed) {
  validate(params);
  if (sample_rate <= 0) {
    throw Error(ErrorKind::kDomain, "synth_ir: sample rate must be positive");
  }

  const std::size_t length =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(params.length_s * sample_rate)));

  ImpulseResponse ir;
  ir.sample_rate = sample_rate;
  ir.label = "synth_" + std::to_string(seed);
  ir.taps.assign(length, 0.0);

  if (params.direct_ratio < 1.0 && length > 1) {
    Rng rng(seed);
    double tail_energy = 0.0;
    for (std::size_t t = 1; t < length; ++t) {
      const double seconds = static_cast<double>(t) / sample_rate;
      const double envelope = std::exp(-kDecayLn * seconds / params.rt60);
      ir.taps[t] = rng.normal() * envelope;
      tail_energy += ir.taps[t] * ir.taps[t];
    }
    const double tail_scale = std::sqrt((1.0 - params.direct_ratio) / tail_energy);
    for (std::size_t t = 1; t < length; ++t) ir.taps[t] *= tail_scale;
  }
  ir.taps[0] = std::sqrt(params.direct_ratio);

  normalize_energy(&ir.taps);
  return ir;
}

ImpulseResponse load_ir_wav(const std::string& path, int required_rate) {
  const AudioClip clip = load_wav(path, required_rate);
  ImpulseResponse ir;
  ir.taps = clip.samples;
  ir.sample_rate = clip.sample_rate;
  ir.label = std::filesystem::path(path).filename().string();
  normalize_energy(&ir.taps);
  return ir;
}

void save_ir_bank(const IrBank& bank, const std::string& dir) {
  if (bank.irs.size() != bank.records.size()) {
    throw Error(ErrorKind::kDomain, "save_ir_bank: irs/records size mismatch");
  }
  std::filesystem::create_directories(dir);
  std::ofstream manifest(std::filesystem::path(dir) / "manifest.tsv",
                         std::ios::trunc);
  if (!manifest) {
    throw Error(ErrorKind::kIo, "save_ir_bank: cannot write manifest in '" + dir + "'");
  }
  manifest << "# label\tseed\trt60_s\tdirect_ratio\tlength_s\tfile\n";
  for (std::size_t i = 0; i < bank.irs.size(); ++i) {
    const IrBankRecord& rec = bank.records[i];
    AudioClip clip;
    clip.samples = bank.irs[i].taps;
    clip.sample_rate = bank.irs[i].sample_rate;
    save_wav(clip, (std::filesystem::path(dir) / rec.file).string());
    manifest << rec.label << '\t' << rec.seed << '\t' << rec.params.rt60 << '\t'
             << rec.params.direct_ratio << '\t' << rec.params.length_s << '\t'
             << rec.file << '\n';
  }
}

IrBank load_ir_bank(const std::string& dir, int required_rate) {
  const auto manifest_path = std::filesystem::path(dir) / "manifest.tsv";
  std::ifstream manifest(manifest_path);
  if (!manifest) {
    throw Error(ErrorKind::kIo,
                "load_ir_bank: missing manifest '" + manifest_path.string() + "'");
  }

  IrBank bank;
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    IrBankRecord rec;
    if (!(row >> rec.label >> rec.seed >> rec.params.rt60 >>
          rec.params.direct_ratio >> rec.params.length_s >> rec.file)) {
      throw Error(ErrorKind::kIo, "load_ir_bank: malformed manifest line: " + line);
    }
    ImpulseResponse ir =
        load_ir_wav((std::filesystem::path(dir) / rec.file).string(), required_rate);
    ir.label = rec.label;
    bank.irs.push_back(std::move(ir));
    bank.records.push_back(std::move(rec));
  }
  if (bank.irs.empty()) {
    throw Error(ErrorKind::kIo, "load_ir_bank: '" + dir + "' holds no responses");
  }
  return bank;
}

}  // namespace overair
