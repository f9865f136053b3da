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
#pragma once

#include <span>
#include <vector>

#include "mmsync/types.hpp"
#include "mmsync/waveform.hpp"

namespace mmsync {

/// values[b][v] = sum_n q_b[n + v] d*[n], v = 0 .. L - N.
struct CorrelationProfile {
  std::vector<CVec> values;

  std::size_t n_antennas() const noexcept { return values.size(); }
  std::size_t n_lags() const noexcept { return values.empty() ? 0 : values.front().size(); }
};

struct TrialOutcome {
  long long nu_hat = 0;
  int b_hat = 0;
  double peak_power = 0.0;
  double zero_lag_sqnr_sample = 0.0;  // |G[t]|^2 / mean off-peak |G|^2 - 1
  bool success = false;
  long long nu_true = -1;
};

/// Sliding inner product by direct summation. Reference oracle.
CorrelationProfile correlate_direct(const CMatrix& received, std::span<const Complex> reference);

/// Same result via zero-padded FFTs.
CorrelationProfile correlate(const CMatrix& received, std::span<const Complex> reference);

/// Joint argmax of |G_b[v]|^2, ties to the smallest v then the smallest b.
/// With nu_true >= 0 the outcome also carries success and the SQNR sample.
TrialOutcome detect(const CorrelationProfile& profile, long long nu_true = -1);

/// Lags within this distance of the true timing are excluded from the
/// off-peak average of the SQNR sample.
inline constexpr long long kOffPeakGuard = 16;

/// Lambda[0] = sum_k Q~[k] d~*[k] with Q~ the unitary DFT of the burst in
/// grid order. Equals the time-domain G at the true alignment.
Complex zero_lag_freq_correlation(std::span<const Complex> burst, const OfdmGrid& reference_grid);

/// Non-zero lag: the received band is shifted cyclically within the mapped
/// band, Lambda[v] = sum_m Q~[f + (m + v) mod L] d~*[f + m].
Complex lagged_freq_correlation(std::span<const Complex> burst, const OfdmGrid& reference_grid, int lag);

/// Same, on an already transformed burst (grid order).
Complex lagged_band_correlation(std::span<const Complex> burst_freq, const OfdmGrid& reference_grid, int lag);

/// mean |(t - t_hat) / t|^2 over outcomes against a common true timing.
double timing_nmse(std::span<const TrialOutcome> outcomes, long long true_t);

/// Same with each outcome's own nu_true.
double timing_nmse(std::span<const TrialOutcome> outcomes);

}  // namespace mmsync
