// overair/mfcc.cc

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

#include "overair/mfcc.h"

#include <cmath>
#include <complex>

#include "overair/error.h"
#include "overair/fft.h"

namespace overair {

namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

void validate(const MfccConfig& cfg) {
  if (cfg.frame_length <= 0 || cfg.hop <= 0 || cfg.fft_size <= 0 ||
      cfg.num_mel_filters <= 0 || cfg.num_coefficients <= 0 || cfg.sample_rate <= 0) {
    throw Error(ErrorKind::kConfig, "mfcc: all sizes must be positive");
  }
  if (cfg.frame_length > cfg.fft_size) {
    throw Error(ErrorKind::kConfig, "mfcc: frame_length must be <= fft_size");
  }
  if (cfg.num_coefficients > cfg.num_mel_filters) {
    throw Error(ErrorKind::kConfig, "mfcc: num_coefficients must be <= num_mel_filters");
  }
  if (!(cfg.log_floor > 0.0)) {
    throw Error(ErrorKind::kConfig, "mfcc: log_floor must be positive");
  }
  if ((cfg.fft_size & (cfg.fft_size - 1)) != 0) {
    throw Error(ErrorKind::kConfig, "mfcc: fft_size must be a power of two");
  }
}

}  // namespace

int mfcc_num_frames(std::size_t signal_len, const MfccConfig& cfg) {
  if (signal_len < static_cast<std::size_t>(cfg.frame_length)) {
    throw Error(ErrorKind::kDomain, "mfcc: signal shorter than one frame");
  }
  return 1 + static_cast<int>((signal_len - cfg.frame_length) / cfg.hop);
}

MfccExtractor::MfccExtractor(const MfccConfig& cfg) : cfg_(cfg) {
  validate(cfg);

  window_.resize(cfg.frame_length);
  for (int i = 0; i < cfg.frame_length; ++i) {
    window_[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (cfg.frame_length - 1));
  }

  // Triangular mel filters with edges equally spaced on the HTK mel scale
  // between 0 Hz and Nyquist.
  const int num_bins = cfg.fft_size / 2 + 1;
  const double mel_high = hz_to_mel(cfg.sample_rate / 2.0);
  std::vector<double> edge_hz(cfg.num_mel_filters + 2);
  for (int i = 0; i < cfg.num_mel_filters + 2; ++i) {
    edge_hz[i] = mel_to_hz(mel_high * i / (cfg.num_mel_filters + 1));
  }

  filter_start_.resize(cfg.num_mel_filters);
  filter_weights_.resize(cfg.num_mel_filters);
  filter_center_hz_.resize(cfg.num_mel_filters);
  const double bin_hz = static_cast<double>(cfg.sample_rate) / cfg.fft_size;
  for (int m = 0; m < cfg.num_mel_filters; ++m) {
    const double lo = edge_hz[m], mid = edge_hz[m + 1], hi = edge_hz[m + 2];
    filter_center_hz_[m] = mid;
    int start = -1;
    std::vector<double> weights;
    for (int k = 0; k < num_bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f >= lo && f <= mid && mid > lo) {
        w = (f - lo) / (mid - lo);
      } else if (f > mid && f <= hi && hi > mid) {
        w = (hi - f) / (hi - mid);
      }
      if (w > 0.0) {
        if (start < 0) start = k;
        weights.push_back(w);
      } else if (start >= 0) {
        break;
      }
    }
    if (start < 0) {
      throw Error(ErrorKind::kConfig, "mfcc: mel filter covers no FFT bin");
    }
    filter_start_[m] = start;
    filter_weights_[m] = std::move(weights);
  }

  // Orthonormal DCT-II.
  const int M = cfg.num_mel_filters;
  dct_.resize(static_cast<std::size_t>(cfg.num_coefficients) * M);
  for (int j = 0; j < cfg.num_coefficients; ++j) {
    const double scale = (j == 0) ? std::sqrt(1.0 / M) : std::sqrt(2.0 / M);
    for (int m = 0; m < M; ++m) {
      dct_[static_cast<std::size_t>(j) * M + m] =
          scale * std::cos(M_PI * j * (2.0 * m + 1.0) / (2.0 * M));
    }
  }
}

double MfccExtractor::filter_center_hz(int m) const { return filter_center_hz_[m]; }

void MfccExtractor::frame_forward(const double* frame, double* coeffs,
                                  std::vector<double>* scratch_power,
                                  std::vector<double>* scratch_energy) const {
  const int num_bins = cfg_.fft_size / 2 + 1;
  std::vector<std::complex<double>> buf(cfg_.fft_size, {0.0, 0.0});
  for (int i = 0; i < cfg_.frame_length; ++i) buf[i] = frame[i] * window_[i];
  fft(&buf);

  scratch_power->resize(num_bins);
  for (int k = 0; k < num_bins; ++k) {
    (*scratch_power)[k] = std::norm(buf[k]);
  }

  scratch_energy->resize(cfg_.num_mel_filters);
  for (int m = 0; m < cfg_.num_mel_filters; ++m) {
    double e = 0.0;
    const auto& w = filter_weights_[m];
    const int start = filter_start_[m];
    for (std::size_t k = 0; k < w.size(); ++k) e += w[k] * (*scratch_power)[start + k];
    (*scratch_energy)[m] = std::log(std::max(e, cfg_.log_floor));
  }

  const int M = cfg_.num_mel_filters;
  for (int j = 0; j < cfg_.num_coefficients; ++j) {
    double c = 0.0;
    const double* row = dct_.data() + static_cast<std::size_t>(j) * M;
    for (int m = 0; m < M; ++m) c += row[m] * (*scratch_energy)[m];
    coeffs[j] = c;
  }
}

FeatureMatrix MfccExtractor::forward(const std::vector<double>& signal) const {
  const int num_frames = mfcc_num_frames(signal.size(), cfg_);

  FeatureMatrix out;
  out.values = Matrix(num_frames, cfg_.num_coefficients);
  out.frame_length = cfg_.frame_length;
  out.hop = cfg_.hop;

#pragma omp parallel
  {
    std::vector<double> power_buf, energy_buf;
#pragma omp for schedule(static)
    for (int t = 0; t < num_frames; ++t) {
      frame_forward(signal.data() + static_cast<std::size_t>(t) * cfg_.hop,
                    out.values.row(t), &power_buf, &energy_buf);
    }
  }
  return out;
}

std::vector<double> MfccExtractor::vjp(const std::vector<double>& signal,
                                       const FeatureMatrix& upstream) const {
  const int num_frames = mfcc_num_frames(signal.size(), cfg_);
  if (upstream.values.rows != num_frames ||
      upstream.values.cols != cfg_.num_coefficients) {
    throw Error(ErrorKind::kDomain, "mfcc_vjp: upstream shape mismatch");
  }

  const int num_bins = cfg_.fft_size / 2 + 1;
  const int M = cfg_.num_mel_filters;
  const std::size_t n = cfg_.fft_size;

  // Per-frame gradients land in disjoint rows; the overlap-add across frames
  // runs serially afterwards so results never depend on the job count.
  Matrix frame_grads(num_frames, cfg_.frame_length);

#pragma omp parallel
  {
    std::vector<std::complex<double>> buf(n), adj(n);
    std::vector<double> power_buf(num_bins), denergy(M), dpower(num_bins);
#pragma omp for schedule(static)
    for (int t = 0; t < num_frames; ++t) {
      const double* frame = signal.data() + static_cast<std::size_t>(t) * cfg_.hop;
      const double* up = upstream.values.row(t);

      // Forward pieces this frame needs again.
      std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
      for (int i = 0; i < cfg_.frame_length; ++i) buf[i] = frame[i] * window_[i];
      fft(&buf);
      for (int k = 0; k < num_bins; ++k) power_buf[k] = std::norm(buf[k]);

      // d(loss)/d(log energy m), then through the floored log.
      for (int m = 0; m < M; ++m) {
        double g = 0.0;
        for (int j = 0; j < cfg_.num_coefficients; ++j) {
          g += up[j] * dct_[static_cast<std::size_t>(j) * M + m];
        }
        double e = 0.0;
        const auto& w = filter_weights_[m];
        const int start = filter_start_[m];
        for (std::size_t k = 0; k < w.size(); ++k) e += w[k] * power_buf[start + k];
        denergy[m] = (e > cfg_.log_floor) ? g / e : 0.0;
      }

      std::fill(dpower.begin(), dpower.end(), 0.0);
      for (int m = 0; m < M; ++m) {
        const auto& w = filter_weights_[m];
        const int start = filter_start_[m];
        for (std::size_t k = 0; k < w.size(); ++k) dpower[start + k] += w[k] * denergy[m];
      }

      // Power spectrum back to the real frame through the FFT adjoint.
      // With G[k] = dP[k] * 2 * X[k] on bins 0..N/2, the waveform gradient is
      // Re of the sign-inverted transform of the half-weighted mirror image.
      std::fill(adj.begin(), adj.end(), std::complex<double>(0.0, 0.0));
      adj[0] = 2.0 * dpower[0] * buf[0];
      adj[n / 2] = 2.0 * dpower[num_bins - 1] * buf[n / 2];
      for (std::size_t k = 1; k < n / 2; ++k) {
        const std::complex<double> g = dpower[k] * buf[k];  // half of 2*dP*X
        adj[k] = g;
        adj[n - k] = std::conj(g);
      }
      fft_raw(&adj, true);

      double* out_row = frame_grads.row(t);
      for (int i = 0; i < cfg_.frame_length; ++i) {
        out_row[i] = adj[i].real() * window_[i];
      }
    }
  }

  std::vector<double> grad(signal.size(), 0.0);
  for (int t = 0; t < num_frames; ++t) {
    const double* row = frame_grads.row(t);
    double* base = grad.data() + static_cast<std::size_t>(t) * cfg_.hop;
    for (int i = 0; i < cfg_.frame_length; ++i) base[i] += row[i];
  }
  return grad;
}

FeatureMatrix mfcc_forward(const std::vector<double>& signal, const MfccConfig& cfg) {
  return MfccExtractor(cfg).forward(signal);
}

std::vector<double> mfcc_vjp(const std::vector<double>& signal, const MfccConfig& cfg,
                             const FeatureMatrix& upstream) {
  return MfccExtractor(cfg).vjp(signal, upstream);
}

}  // namespace overair
