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

#include <optional>
#include <span>
#include <vector>

#include "mmsync/types.hpp"

namespace mmsync {

/// Uniform midrise quantizer applied independently to the I and Q rails.
/// Inputs are normalized by the per-rail AGC rms, clipped to +-clip_scale,
/// and mapped to 2^bits levels (i + 0.5) * step.
struct AdcModel {
  std::optional<int> bits;  // empty = infinite resolution
  double clip_scale = 0.0;
  double step = 0.0;

  static AdcModel infinite();
  /// MSE-optimal clipping for a unit-variance Gaussian rail.
  static AdcModel with_bits(int bits);
  static AdcModel with_bits(int bits, double clip_scale);

  bool is_infinite() const noexcept { return !bits.has_value(); }
  int levels() const;
  std::string label() const;  // "2" or "inf"
};

struct BussgangStats {
  std::vector<double> eta;
  double xi = 0.0;
  std::vector<double> noise_cov_diag;
};

/// Quantize, then scale back by agc_rms so the output lives on the input
/// scale. Bussgang gain of this form is 1 - xi.
CVec apply(const AdcModel& adc, std::span<const Complex> samples, double agc_rms);

/// Quantize to a unit-power alphabet: each rail carries Q(x/agc_rms)/sqrt(2).
/// Bussgang gain of this form is (1 - xi) V^(-1/2), V the input power.
/// Infinite resolution is the identity in both forms.
CVec apply_normalized(const AdcModel& adc, std::span<const Complex> samples, double agc_rms);

void apply_inplace(const AdcModel& adc, std::span<Complex> samples, double agc_rms, bool normalized);

/// sqrt(mean(|x|^2) / 2): the rms of one rail.
double rail_rms(std::span<const Complex> samples);

/// Minimum MSE of a b-bit scalar quantizer on N(0,1) (Lloyd-Max). Cached.
double xi_for_bits(int bits);
/// xi_for_bits, or 0 for infinite resolution.
double xi_for(const AdcModel& adc);

/// MSE of a uniform midrise quantizer with clip c on N(0,1).
double uniform_mse(int bits, double clip);
/// argmin_c uniform_mse(bits, c). Cached.
double optimal_clip(int bits);

/// eta[n] = (1 - xi) V[n]^(-1/2), noise[n] = eta (1 - eta) V[n], V = power + noise_var.
BussgangStats bussgang_decompose(std::span<const double> unquantized_power, double noise_var, double xi);

/// Scalar form of the above for one power level.
double bussgang_eta(double total_power, double xi);

}  // namespace mmsync
