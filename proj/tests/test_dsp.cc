// tests/test_dsp.cc

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
#include <cstdint>
#include <filesystem>
#include <fstream>

#include "overair/audio.h"
#include "overair/error.h"
#include "overair/fft.h"
#include "overair/fir.h"
#include "overair/ir.h"
#include "overair/reference.h"
#include "overair/rng.h"
#include "overair/wav.h"

using namespace overair;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("overair_test_" + name);
}

std::vector<double> random_signal(std::size_t n, Rng* rng, double amplitude = 1.0) {
  std::vector<double> out(n);
  for (double& s : out) s = rng->uniform(-amplitude, amplitude);
  return out;
}

std::vector<double> sine(double freq_hz, int rate, std::size_t n, double amp = 1.0) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = amp * std::sin(2.0 * M_PI * freq_hz * static_cast<double>(i) / rate);
  }
  return out;
}

double rms(const std::vector<double>& v) { return std::sqrt(power(v)); }

// Hand-rolled little-endian PCM16 WAV blob, independent of save_wav.
void write_pcm16_blob(const std::string& path, uint32_t rate, uint16_t channels,
                      const std::vector<int16_t>& interleaved) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  auto u32 = [&](uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
  auto u16 = [&](uint16_t v) { out.write(reinterpret_cast<const char*>(&v), 2); };
  const uint32_t data_bytes = 2u * static_cast<uint32_t>(interleaved.size());
  out.write("RIFF", 4);
  u32(36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  u32(16);
  u16(1);
  u16(channels);
  u32(rate);
  u32(rate * channels * 2);
  u16(channels * 2);
  u16(16);
  out.write("data", 4);
  u32(data_bytes);
  for (int16_t s : interleaved) u16(static_cast<uint16_t>(s));
}

}  // namespace

TEST_CASE("rng is reproducible and shaped correctly") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }

  // Sample std of 1e6 draws at sigma 0.01 must sit within 1%.
  Rng rng(7);
  const std::size_t n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.normal(0.01);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sum2 / n - mean * mean);
  CHECK(stddev > 0.0099);
  CHECK(stddev < 0.0101);

  // uniform_int stays unbiased across a 4-way split.
  Rng ints(11);
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 10000; ++i) ++counts[ints.uniform_int(4)];
  for (int c : counts) {
    CHECK(c > 2200);
    CHECK(c < 2800);
  }
}

TEST_CASE("add_noise basics") {
  Rng rng(5);
  const std::vector<double> x = random_signal(64, &rng);

  Rng r0(9);
  CHECK(add_noise(x, 0.0, &r0) == x);

  Rng r1(9), r2(9);
  CHECK(add_noise(x, 0.3, &r1) == add_noise(x, 0.3, &r2));

  Rng r3(9);
  CHECK_THROWS_AS(add_noise(x, -0.1, &r3), Error);
}

TEST_CASE("power and snr formulas") {
  CHECK(power(std::vector<double>(100, 0.5)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(power(std::vector<double>(10, 0.0)) == 0.0);
  CHECK_THROWS_AS(power({}), Error);

  // Unit-amplitude sine over whole periods has power 1/2.
  const auto s = sine(1000.0, 16000, 16000);
  CHECK(power(s) == doctest::Approx(0.5).epsilon(1e-9));

  Rng rng(3);
  const auto x = random_signal(512, &rng);
  const auto v = random_signal(512, &rng, 0.1);
  const double expected = 10.0 * std::log10(power(x) / power(v));
  CHECK(snr_db(x, v) == doctest::Approx(expected).epsilon(1e-12));

  CHECK(snr_db(x, x) == doctest::Approx(0.0).epsilon(1e-12));
  std::vector<double> tenth = x;
  for (double& t : tenth) t /= std::sqrt(10.0);
  CHECK(snr_db(x, tenth) == doctest::Approx(10.0).epsilon(1e-9));

  CHECK(snr_db(x, std::vector<double>(8, 0.0)) == kInfiniteSnrDb);
}

TEST_CASE("fft convolution matches the naive oracle") {
  Rng rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(1024);
    const std::size_t m = 1 + rng.uniform_int(64);
    const auto a = random_signal(n, &rng);
    const auto b = random_signal(m, &rng);

    const auto fast = fft_convolve_full(a, b);
    const auto slow = reference::naive_convolve_full(a, b);
    REQUIRE(fast.size() == slow.size());
    double max_err = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      max_err = std::max(max_err, std::abs(fast[i] - slow[i]));
    }
    CHECK(max_err < 1e-9);

    const auto fast_trunc = convolve_truncated(a, b);
    const auto slow_trunc = reference::naive_convolve_truncated(a, b);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK_NEAR(fast_trunc[i], slow_trunc[i], 1e-9);
    }
  }
}

TEST_CASE("fft agrees with the quadratic dft") {
  Rng rng(99);
  std::vector<std::complex<double>> input(64);
  for (auto& c : input) c = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  auto fast = input;
  fft(&fast);
  const auto slow = reference::naive_dft(input);
  for (std::size_t i = 0; i < input.size(); ++i) {
    CHECK(std::abs(fast[i] - slow[i]) < 1e-9);
  }
}

TEST_CASE("convolution identities") {
  Rng rng(17);
  const auto x = random_signal(300, &rng);

  SUBCASE("unit delta is the identity") {
    const auto y = convolve_truncated(x, {1.0});
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK_NEAR(y[i], x[i], 1e-9);
    }
  }
  SUBCASE("scaled delta scales") {
    const auto y = convolve_truncated(x, {0.5});
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK_NEAR(y[i], 0.5 * x[i], 1e-9);
    }
  }
  SUBCASE("linearity") {
    const auto a = random_signal(200, &rng);
    const auto b = random_signal(200, &rng);
    const auto h = random_signal(16, &rng);
    const double ca = rng.uniform(-2.0, 2.0), cb = rng.uniform(-2.0, 2.0);
    std::vector<double> mix(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mix[i] = ca * a[i] + cb * b[i];
    const auto lhs = convolve_truncated(mix, h);
    const auto ya = convolve_truncated(a, h);
    const auto yb = convolve_truncated(b, h);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK_NEAR(lhs[i], ca * ya[i] + cb * yb[i], 1e-9);
    }
  }
}

TEST_CASE("truncated-convolution adjoint satisfies the inner-product identity") {
  // <conv(x), g> == <x, adjoint(g)> pins both routes to one linear operator.
  Rng rng(21);
  const auto x = random_signal(256, &rng);
  const auto g = random_signal(256, &rng);
  const auto h = random_signal(24, &rng);

  const auto cx = convolve_truncated(x, h);
  const auto ag = convolve_truncated_adjoint(g, h);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lhs += cx[i] * g[i];
    rhs += x[i] * ag[i];
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

  // The cached-spectrum path must agree with the direct one.
  IrSpectrum spec(h, x.size());
  const auto cx2 = spec.convolve(x);
  const auto ag2 = spec.adjoint(g);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK_NEAR(cx2[i], cx[i], 1e-9);
    CHECK_NEAR(ag2[i], ag[i], 1e-9);
  }
}

TEST_CASE("band-pass design meets its response specs") {
  const FirFilter f = design_bandpass(1000.0, 4000.0, 16000, 511);

  SUBCASE("taps are odd and symmetric") {
    REQUIRE(f.taps.size() == 511);
    for (std::size_t i = 0; i < f.taps.size(); ++i) {
      CHECK_NEAR(f.taps[i], f.taps[f.taps.size() - 1 - i], 1e-12);
    }
  }
  SUBCASE("passband flat within half a dB, stopband 40 dB down") {
    for (double hz = 1250.0; hz <= 3200.0; hz += 75.0) {
      const double gain_db = 20.0 * std::log10(fir_gain_at(f, hz));
      CHECK(gain_db > -0.5);
      CHECK(gain_db < 0.5);
    }
    CHECK(20.0 * std::log10(fir_gain_at(f, 500.0)) < -40.0);
    CHECK(20.0 * std::log10(fir_gain_at(f, 6000.0)) < -40.0);
    CHECK(20.0 * std::log10(fir_gain_at(f, 100.0)) < -40.0);
  }
  SUBCASE("probe sines through apply_fir") {
    const std::size_t n = 16000;
    const auto in_band = sine(2000.0, 16000, n);
    const auto filtered = apply_fir(in_band, f);
    // Steady-state portion away from the edges.
    std::vector<double> mid(filtered.begin() + 2000, filtered.end() - 2000);
    std::vector<double> mid_in(in_band.begin() + 2000, in_band.end() - 2000);
    const double gain_db = 20.0 * std::log10(rms(mid) / rms(mid_in));
    CHECK(gain_db > -0.5);
    CHECK(gain_db < 0.5);

    const auto low = sine(100.0, 16000, n);
    const auto low_filtered = apply_fir(low, f);
    std::vector<double> low_mid(low_filtered.begin() + 2000, low_filtered.end() - 2000);
    CHECK(20.0 * std::log10(rms(low_mid) / rms(mid_in)) < -40.0);
  }
  SUBCASE("invalid designs are rejected") {
    CHECK_THROWS_AS(design_bandpass(1000.0, 4000.0, 16000, 510), Error);
    CHECK_THROWS_AS(design_bandpass(4000.0, 1000.0, 16000, 511), Error);
    CHECK_THROWS_AS(design_bandpass(1000.0, 9000.0, 16000, 511), Error);
    CHECK_THROWS_AS(design_bandpass(0.0, 4000.0, 16000, 511), Error);
  }
}

TEST_CASE("apply_fir is linear, aligned, and self-adjoint for symmetric taps") {
  const FirFilter f = design_bandpass(1000.0, 4000.0, 16000, 127);
  Rng rng(31);

  SUBCASE("zero in, zero out") {
    const auto y = apply_fir(std::vector<double>(256, 0.0), f);
    for (double v : y) CHECK(v == 0.0);
  }
  SUBCASE("linearity") {
    const auto a = random_signal(256, &rng);
    const auto b = random_signal(256, &rng);
    std::vector<double> ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] + b[i];
    const auto ya = apply_fir(a, f);
    const auto yb = apply_fir(b, f);
    const auto yab = apply_fir(ab, f);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK_NEAR(yab[i], ya[i] + yb[i], 1e-9);
    }
  }
  SUBCASE("self-adjoint on symmetric taps") {
    const auto g = random_signal(200, &rng);
    const auto forward = apply_fir(g, f);
    const auto adjoint = apply_fir_adjoint(g, f);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK_NEAR(forward[i], adjoint[i], 1e-9);
    }
  }
  SUBCASE("group delay is compensated") {
    // A band-centered tone must come out in phase, not shifted by the filter.
    const auto tone = sine(2000.0, 16000, 2048);
    const auto y = apply_fir(tone, f);
    double best_dot = -1e300;
    int best_shift = -999;
    for (int shift = -8; shift <= 8; ++shift) {
      double dot = 0.0;
      for (int i = 200; i < 1800; ++i) dot += y[i] * tone[i + shift];
      if (dot > best_dot) {
        best_dot = dot;
        best_shift = shift;
      }
    }
    CHECK(best_shift == 0);
  }
  SUBCASE("gradient of sum(apply_fir(v)) matches finite differences") {
    auto v = random_signal(128, &rng, 0.5);
    const auto grad = apply_fir_adjoint(std::vector<double>(v.size(), 1.0), f);
    Rng pick(77);
    for (int probe = 0; probe < 20; ++probe) {
      const std::size_t i = pick.uniform_int(v.size());
      const double h = 1e-6;
      auto vp = v, vm = v;
      vp[i] += h;
      vm[i] -= h;
      double sp = 0.0, sm = 0.0;
      for (double s : apply_fir(vp, f)) sp += s;
      for (double s : apply_fir(vm, f)) sm += s;
      const double fd = (sp - sm) / (2.0 * h);
      CHECK_CLOSE(grad[i], fd, 1e-6, 1e-9);
    }
  }
}

TEST_CASE("wav io") {
  SUBCASE("sine round-trip stays within one quantization step") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples = sine(440.0, 16000, 16000, 0.9);
    const auto path = temp_file("roundtrip.wav").string();
    CHECK(save_wav(clip, path) == 0);
    const AudioClip back = load_wav(path, 16000);
    REQUIRE(back.size() == clip.size());
    for (std::size_t i = 0; i < clip.size(); ++i) {
      CHECK(std::abs(back.samples[i] - clip.samples[i]) <= 1.0 / 32768.0);
    }
    std::filesystem::remove(path);
  }
  SUBCASE("out-of-range amplitudes clip and are counted") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples = {0.0, 1.5, -2.0, 0.25};
    const auto path = temp_file("clip.wav").string();
    CHECK(save_wav(clip, path) == 2);
    const AudioClip back = load_wav(path);
    CHECK(back.samples[1] == doctest::Approx(32767.0 / 32768.0));
    CHECK(back.samples[2] == doctest::Approx(-1.0));
    std::filesystem::remove(path);
  }
  SUBCASE("empty path and unreadable files error") {
    AudioClip clip;
    clip.samples = {0.1};
    CHECK_THROWS_AS(save_wav(clip, ""), Error);
    CHECK_THROWS_AS(load_wav("/nonexistent/nowhere.wav"), Error);
  }
  SUBCASE("scale oracle: sample value 16384 reads as 0.5") {
    const auto path = temp_file("scale.wav").string();
    write_pcm16_blob(path, 16000, 1, {16384, -16384, 0, 32767});
    const AudioClip clip = load_wav(path, 16000);
    REQUIRE(clip.size() == 4);
    CHECK(clip.samples[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(clip.samples[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(clip.samples[2] == 0.0);
    std::filesystem::remove(path);
  }
  SUBCASE("stereo averages to mono") {
    const auto path = temp_file("stereo.wav").string();
    // Interleaved (L, R) = (0.5, -0.5) everywhere.
    std::vector<int16_t> frames;
    for (int i = 0; i < 32; ++i) {
      frames.push_back(16384);
      frames.push_back(-16384);
    }
    write_pcm16_blob(path, 16000, 2, frames);
    const AudioClip clip = load_wav(path);
    REQUIRE(clip.size() == 32);
    for (double s : clip.samples) CHECK(s == 0.0);
    std::filesystem::remove(path);
  }
  SUBCASE("header arithmetic: one second is 16000 samples") {
    const auto path = temp_file("second.wav").string();
    write_pcm16_blob(path, 16000, 1, std::vector<int16_t>(16000, 123));
    CHECK(load_wav(path).size() == 16000);
    std::filesystem::remove(path);
  }
  SUBCASE("rate mismatch rejected in strict mode") {
    const auto path = temp_file("rate.wav").string();
    write_pcm16_blob(path, 8000, 1, std::vector<int16_t>(100, 5));
    CHECK_THROWS_AS(load_wav(path, 16000), Error);
    CHECK(load_wav(path).sample_rate == 8000);
    std::filesystem::remove(path);
  }
}

TEST_CASE("impulse response synthesis") {
  SUBCASE("direct ratio one gives a pure unit delta") {
    IrSynthesisParams params;
    params.direct_ratio = 1.0;
    params.rt60 = 0.2;
    params.length_s = 0.25;
    const ImpulseResponse ir = synth_ir(params, 16000, 7);
    CHECK(ir.taps[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < ir.taps.size(); ++i) CHECK(ir.taps[i] == 0.0);
  }
  SUBCASE("unit energy after normalization") {
    IrSynthesisParams params;
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      const ImpulseResponse ir = synth_ir(params, 16000, seed);
      CHECK(ir.energy() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("tail decays 60 dB over rt60 within ten percent") {
    IrSynthesisParams params;
    params.rt60 = 0.3;
    params.length_s = 0.3;
    params.direct_ratio = 0.5;
    const ImpulseResponse ir = synth_ir(params, 16000, 11);

    // Regress ln(local rms) on time over the tail; expect -6.908 / rt60 per s.
    const std::size_t window = 160;
    std::vector<double> ts, ys;
    for (std::size_t start = 320; start + window < ir.taps.size(); start += window) {
      double e = 0.0;
      for (std::size_t i = start; i < start + window; ++i) e += ir.taps[i] * ir.taps[i];
      ts.push_back((start + window / 2.0) / 16000.0);
      ys.push_back(0.5 * std::log(e / window));
    }
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      mt += ts[i];
      my += ys[i];
    }
    mt /= ts.size();
    my /= ys.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      num += (ts[i] - mt) * (ys[i] - my);
      den += (ts[i] - mt) * (ts[i] - mt);
    }
    const double slope = num / den;
    const double expected = -6.908 / params.rt60;
    CHECK(slope == doctest::Approx(expected).epsilon(0.10));
  }
  SUBCASE("deterministic per seed and parameter validation") {
    IrSynthesisParams params;
    CHECK(synth_ir(params, 16000, 5).taps == synth_ir(params, 16000, 5).taps);
    params.rt60 = -1.0;
    CHECK_THROWS_AS(synth_ir(params, 16000, 5), Error);
    params.rt60 = 0.4;
    params.length_s = 0.1;  // below rt60 / 2
    CHECK_THROWS_AS(synth_ir(params, 16000, 5), Error);
    params.length_s = 0.4;
    params.direct_ratio = 0.0;
    CHECK_THROWS_AS(synth_ir(params, 16000, 5), Error);
  }
}

TEST_CASE("ir bank round-trips through disk") {
  IrSynthesisParams params;
  IrBank bank;
  for (int i = 0; i < 3; ++i) {
    IrBankRecord rec;
    rec.label = "ir_" + std::to_string(i);
    rec.seed = 100 + i;
    rec.params = params;
    rec.file = rec.label + ".wav";
    ImpulseResponse ir = synth_ir(params, 16000, rec.seed);
    ir.label = rec.label;
    bank.irs.push_back(ir);
    bank.records.push_back(rec);
  }
  const auto dir = temp_file("irbank");
  save_ir_bank(bank, dir.string());
  const IrBank loaded = load_ir_bank(dir.string(), 16000);
  REQUIRE(loaded.irs.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(loaded.records[i].seed == bank.records[i].seed);
    CHECK(loaded.irs[i].energy() == doctest::Approx(1.0).epsilon(1e-9));
    // Quantized taps stay close to the synthesized ones.
    for (std::size_t t = 0; t < 64; ++t) {
      CHECK_NEAR(loaded.irs[i].taps[t], bank.irs[i].taps[t], 2e-4);
    }
  }
  std::filesystem::remove_all(dir);
}
