// overair/fft.cc

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

#include "overair/fft.h"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "overair/error.h"

namespace overair {

namespace {

// exp(-2*pi*i*j/n) for j in [0, n/2); computed directly per entry so twiddle
// error stays at one ulp instead of accumulating around the circle.
struct TwiddleTable {
  explicit TwiddleTable(std::size_t n) : w(n / 2) {
    for (std::size_t j = 0; j < n / 2; ++j) {
      const double angle = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
      w[j] = {std::cos(angle), std::sin(angle)};
    }
  }
  std::vector<std::complex<double>> w;
};

const TwiddleTable& twiddle_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<TwiddleTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<TwiddleTable>(n);
  return *slot;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_raw(std::vector<std::complex<double>>* a, bool invert_sign) {
  const std::size_t n = a->size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::kDomain, "fft: size must be a power of two");
  }
  if (n == 1) return;

  auto& v = *a;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }

  const TwiddleTable& table = twiddle_for(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> w = table.w[j * step];
        if (invert_sign) w = std::conj(w);
        const std::complex<double> u = v[base + j];
        const std::complex<double> t = v[base + j + len / 2] * w;
        v[base + j] = u + t;
        v[base + j + len / 2] = u - t;
      }
    }
  }
}

void fft(std::vector<std::complex<double>>* a) { fft_raw(a, false); }

void ifft(std::vector<std::complex<double>>* a) {
  fft_raw(a, true);
  const double scale = 1.0 / static_cast<double>(a->size());
  for (auto& x : *a) x *= scale;
}

std::vector<double> fft_convolve_full(const std::vector<double>& a,
                                      const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorKind::kDomain, "fft_convolve_full: empty operand");
  }
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);

  std::vector<std::complex<double>> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft(&fa);
  fft(&fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  ifft(&fa);

  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

std::vector<double> convolve_truncated(const std::vector<double>& signal,
                                       const std::vector<double>& ir) {
  std::vector<double> full = fft_convolve_full(signal, ir);
  full.resize(signal.size());
  return full;
}

std::vector<double> convolve_truncated_adjoint(const std::vector<double>& grad,
                                               const std::vector<double>& ir) {
  std::vector<double> reversed(ir.rbegin(), ir.rend());
  std::vector<double> full = fft_convolve_full(grad, reversed);
  // out[j] = full[j + m - 1] = sum_k ir[k] * grad[j + k]
  std::vector<double> out(grad.size());
  for (std::size_t j = 0; j < grad.size(); ++j) out[j] = full[j + ir.size() - 1];
  return out;
}

IrSpectrum::IrSpectrum(const std::vector<double>& ir, std::size_t signal_len)
    : signal_len_(signal_len), ir_len_(ir.size()) {
  if (ir.empty() || signal_len == 0) {
    throw Error(ErrorKind::kDomain, "IrSpectrum: empty operand");
  }
  fft_size_ = next_pow2(signal_len_ + ir_len_ - 1);
  spectrum_.assign(fft_size_, {0.0, 0.0});
  for (std::size_t i = 0; i < ir_len_; ++i) spectrum_[i] = ir[i];
  fft(&spectrum_);
}

std::vector<double> IrSpectrum::convolve(const std::vector<double>& signal) const {
  if (signal.size() != signal_len_) {
    throw Error(ErrorKind::kDomain, "IrSpectrum::convolve: length mismatch");
  }
  std::vector<std::complex<double>> fa(fft_size_, {0.0, 0.0});
  for (std::size_t i = 0; i < signal.size(); ++i) fa[i] = signal[i];
  fft(&fa);
  for (std::size_t i = 0; i < fft_size_; ++i) fa[i] *= spectrum_[i];
  ifft(&fa);
  std::vector<double> out(signal_len_);
  for (std::size_t i = 0; i < signal_len_; ++i) out[i] = fa[i].real();
  return out;
}

std::vector<double> IrSpectrum::adjoint(const std::vector<double>& grad) const {
  if (grad.size() != signal_len_) {
    throw Error(ErrorKind::kDomain, "IrSpectrum::adjoint: length mismatch");
  }
  // Correlation via the conjugate spectrum: out[j] = sum_k ir[k] grad[j + k].
  std::vector<std::complex<double>> fa(fft_size_, {0.0, 0.0});
  for (std::size_t i = 0; i < grad.size(); ++i) fa[i] = grad[i];
  fft(&fa);
  for (std::size_t i = 0; i < fft_size_; ++i) fa[i] *= std::conj(spectrum_[i]);
  ifft(&fa);
  // fa[j] = sum_s ir[s] * grad[(j + s) mod N]; padding makes the wrap vacuous.
  std::vector<double> out(signal_len_);
  for (std::size_t j = 0; j < signal_len_; ++j) out[j] = fa[j].real();
  return out;
}

}  // namespace overair
