// SPDX-License-Identifier: Apache-2.0
//
// mmsync - directional frame timing synchronization with low-resolution ADCs
// Copyright (C) 2026 The mmsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "mmsync/detector.hpp"

#include <cmath>

#include "mmsync/fft.hpp"

namespace mmsync {

static std::size_t lag_count(const CMatrix& received, std::size_t n) {
  if (n == 0) throw DomainError("empty reference");
  if (received.cols < n) throw DomainError("received block shorter than the reference");
  return received.cols - n + 1;
}

CorrelationProfile correlate_direct(const CMatrix& received, std::span<const Complex> reference) {
  const std::size_t n = reference.size();
  const std::size_t lags = lag_count(received, n);
  CorrelationProfile p;
  p.values.assign(received.rows, CVec(lags));
  for (std::size_t b = 0; b < received.rows; ++b) {
    const auto row = received.row(b);
    for (std::size_t v = 0; v < lags; ++v) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += row[k + v] * std::conj(reference[k]);
      p.values[b][v] = acc;
    }
  }
  return p;
}

CorrelationProfile correlate(const CMatrix& received, std::span<const Complex> reference) {
  const std::size_t n = reference.size();
  const std::size_t lags = lag_count(received, n);
  // Circular correlation of length M >= L matches the linear one for lags
  // 0 .. L - N because no index wraps.
  const std::size_t m = fft::next_pow2(received.cols);
  CVec ref(m);
  std::copy(reference.begin(), reference.end(), ref.begin());
  fft::transform(ref, false);
  CorrelationProfile p;
  p.values.assign(received.rows, CVec(lags));
  CVec buf(m);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t b = 0; b < received.rows; ++b) {
    const auto row = received.row(b);
    std::copy(row.begin(), row.end(), buf.begin());
    std::fill(buf.begin() + static_cast<long>(row.size()), buf.end(), Complex{});
    fft::transform(buf, false);
    for (std::size_t k = 0; k < m; ++k) buf[k] *= std::conj(ref[k]);
    fft::transform(buf, true);
    for (std::size_t v = 0; v < lags; ++v) p.values[b][v] = buf[v] * scale;
  }
  return p;
}

TrialOutcome detect(const CorrelationProfile& profile, long long nu_true) {
  if (profile.n_antennas() == 0 || profile.n_lags() == 0) throw DomainError("empty correlation profile");
  TrialOutcome o;
  o.nu_true = nu_true;
  o.peak_power = -1.0;
  const std::size_t lags = profile.n_lags();
  for (std::size_t v = 0; v < lags; ++v) {
    for (std::size_t b = 0; b < profile.n_antennas(); ++b) {
      const double pw = std::norm(profile.values[b][v]);
      if (pw > o.peak_power) {
        o.peak_power = pw;
        o.nu_hat = static_cast<long long>(v);
        o.b_hat = static_cast<int>(b);
      }
    }
  }
  if (nu_true >= 0 && nu_true < static_cast<long long>(lags)) {
    o.success = o.nu_hat == nu_true;
    const auto& g = profile.values[static_cast<std::size_t>(o.b_hat)];
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t v = 0; v < lags; ++v) {
      if (std::llabs(static_cast<long long>(v) - nu_true) <= kOffPeakGuard) continue;
      acc += std::norm(g[v]);
      ++count;
    }
    if (count > 0 && acc > 0.0) o.zero_lag_sqnr_sample = std::norm(g[nu_true]) / (acc / count) - 1.0;
  }
  return o;
}

Complex lagged_band_correlation(std::span<const Complex> burst_freq, const OfdmGrid& grid, int lag) {
  if (static_cast<int>(burst_freq.size()) != grid.n_subcarriers) throw DomainError("burst length must equal N");
  const int len = grid.band_length;
  if (len == 0) return {};
  const int shift = ((lag % len) + len) % len;
  Complex acc{};
  for (int m = 0; m < len; ++m)
    acc += burst_freq[grid.band_first + (m + shift) % len] * std::conj(grid.symbols[grid.band_first + m]);
  return acc;
}

Complex zero_lag_freq_correlation(std::span<const Complex> burst, const OfdmGrid& grid) {
  const CVec q = demodulate(burst, grid);
  Complex acc{};
  for (std::size_t k = 0; k < q.size(); ++k) acc += q[k] * std::conj(grid.symbols[k]);
  return acc;
}

Complex lagged_freq_correlation(std::span<const Complex> burst, const OfdmGrid& grid, int lag) {
  return lagged_band_correlation(demodulate(burst, grid), grid, lag);
}

double timing_nmse(std::span<const TrialOutcome> outcomes, long long true_t) {
  if (true_t == 0) throw DomainError("true timing must be nonzero for the normalized error");
  if (outcomes.empty()) throw DomainError("no outcomes");
  double acc = 0.0;
  for (const auto& o : outcomes) {
    const double e = static_cast<double>(true_t - o.nu_hat) / static_cast<double>(true_t);
    acc += e * e;
  }
  return acc / static_cast<double>(outcomes.size());
}

double timing_nmse(std::span<const TrialOutcome> outcomes) {
  if (outcomes.empty()) throw DomainError("no outcomes");
  double acc = 0.0;
  for (const auto& o : outcomes) {
    if (o.nu_true == 0) throw DomainError("true timing must be nonzero for the normalized error");
    const double e = static_cast<double>(o.nu_true - o.nu_hat) / static_cast<double>(o.nu_true);
    acc += e * e;
  }
  return acc / static_cast<double>(outcomes.size());
}

}  // namespace mmsync
