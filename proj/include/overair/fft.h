// overair/fft.h

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

#ifndef OVERAIR_FFT_H_
#define OVERAIR_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace overair {

std::size_t next_pow2(std::size_t n);

// In-place radix-2 FFT; a.size() must be a power of two. The transform uses
// exp(-2*pi*i*jk/n); invert_sign flips the exponent sign. No normalization.
// Twiddle tables are cached per size and shared across threads.
void fft_raw(std::vector<std::complex<double>>* a, bool invert_sign);

// Forward / normalized-inverse pair built on fft_raw.
void fft(std::vector<std::complex<double>>* a);
void ifft(std::vector<std::complex<double>>* a);

// Full linear convolution, output length a.size() + b.size() - 1.
std::vector<double> fft_convolve_full(const std::vector<double>& a,
                                      const std::vector<double>& b);

// Linear convolution truncated to the signal length (a fixed recording
// window): out[i] = sum_k ir[k] * signal[i - k].
std::vector<double> convolve_truncated(const std::vector<double>& signal,
                                       const std::vector<double>& ir);

// Adjoint of convolve_truncated in its signal argument:
// out[j] = sum_k ir[k] * grad[j + k].
std::vector<double> convolve_truncated_adjoint(const std::vector<double>& grad,
                                               const std::vector<double>& ir);

// Frequency-domain image of an impulse response, precomputed once so repeated
// convolutions against the same taps skip one forward FFT.
class IrSpectrum {
 public:
  IrSpectrum(const std::vector<double>& ir, std::size_t signal_len);

  std::size_t signal_len() const { return signal_len_; }
  std::size_t ir_len() const { return ir_len_; }

  // Equivalent to convolve_truncated(signal, ir).
  std::vector<double> convolve(const std::vector<double>& signal) const;
  // Equivalent to convolve_truncated_adjoint(grad, ir).
  std::vector<double> adjoint(const std::vector<double>& grad) const;

 private:
  std::size_t signal_len_;
  std::size_t ir_len_;
  std::size_t fft_size_;
  std::vector<std::complex<double>> spectrum_;
};

}  // namespace overair

#endif  // OVERAIR_FFT_H_
