// bench/bench_main.cc

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

// Optimized kernels against their serial references, and the parallel paths
// at one worker versus the runtime default.

#include <benchmark/benchmark.h>

#include "overair/attack.h"
#include "overair/ctc.h"
#include "overair/mfcc.h"
#include "overair/parallel.h"
#include "overair/reference.h"
#include "overair/rng.h"

using namespace overair;

namespace {

std::vector<double> random_signal(std::size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& s : out) s = rng.uniform(-0.5, 0.5);
  return out;
}

void BM_ConvolveFft(benchmark::State& state) {
  const auto signal = random_signal(16384, 1);
  const auto ir = random_signal(2048, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve_truncated(signal, ir));
  }
}

void BM_ConvolveNaive(benchmark::State& state) {
  const auto signal = random_signal(16384, 1);
  const auto ir = random_signal(2048, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::naive_convolve_truncated(signal, ir));
  }
}

void BM_MfccForward(benchmark::State& state) {
  set_jobs(static_cast<int>(state.range(0)));
  MfccConfig cfg;
  MfccExtractor mfcc(cfg);
  const auto signal = random_signal(32000, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfcc.forward(signal));
  }
  set_jobs(0);
}

void BM_CtcForwardBackward(benchmark::State& state) {
  Rng rng(4);
  Matrix logits(200, 29);
  for (double& v : logits.v) v = rng.uniform(-2.0, 2.0);
  const std::vector<int> labels = {15, 16, 5, 14, 27, 20, 8, 5, 27, 4, 15, 15, 18};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctc_grad(logits, labels));
  }
}

void BM_Objective(benchmark::State& state) {
  set_jobs(static_cast<int>(state.range(0)));
  MfccConfig mfcc;
  const Alphabet alphabet = Alphabet::default_alphabet();
  const SurrogateModel model(mfcc, alphabet, 64, 5);

  AudioClip x;
  x.sample_rate = 16000;
  x.samples = random_signal(16000, 6);
  const TargetPhrase target = make_target("open the door", alphabet);

  IrSynthesisParams params;
  const IrBank bank = synth_ir_bank({params}, 4, 100, 16000, "ir");
  const ChannelConfig channel = make_channel(bank, 0.01, 0.0);

  AttackConfig cfg;
  cfg.transforms_per_step = 4;
  AttackEngine engine(model, x, target, channel, cfg);

  Rng drng(7);
  std::vector<ChannelDraw> draws(4);
  for (ChannelDraw& d : draws) d = sample_channel(channel, &drng);
  const std::vector<double> v = random_signal(16000, 8);

  std::vector<double> grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.objective(v, draws, &grad));
  }
  set_jobs(0);
}

}  // namespace

BENCHMARK(BM_ConvolveFft);
BENCHMARK(BM_ConvolveNaive);
BENCHMARK(BM_MfccForward)->Arg(1)->Arg(0);
BENCHMARK(BM_CtcForwardBackward);
BENCHMARK(BM_Objective)->Arg(1)->Arg(0);

BENCHMARK_MAIN();
