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
#include "mmsync/sqnr.hpp"

#include <cmath>

#include "mmsync/types.hpp"

namespace mmsync {

double sqnr_single_beam(double s, double noise_var, double eta) {
  if (!(s >= 0.0) || !(noise_var >= 0.0)) throw DomainError("powers must be nonnegative");
  const double den = eta * noise_var + (1.0 - eta) * (s + noise_var);
  if (!(den > 0.0)) throw DomainError("SQNR denominator is not positive");
  return eta * s / den;
}

double sqnr_single_beam(const SqnrInputs& in) {
  return sqnr_single_beam(in.effective_gain_sq * in.rx_gain_sq, in.noise_var, in.eta);
}

double sqnr_ue_bound(double x, double lambda, double xi, double noise_var) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(xi >= 0.0) || xi >= 1.0) throw DomainError("xi must be in [0, 1)");
  if (!(x >= 0.0) || !(noise_var >= 0.0)) throw DomainError("inputs must be nonnegative");
  const double bracket = std::sqrt(noise_var * (x / lambda + 1.0)) / (1.0 - xi) - 1.0;
  const double den = lambda + bracket * (x + lambda);
  if (!(den > 0.0)) throw DomainError("bound denominator is not positive");
  return x / den;
}

double sqnr_lower_bound_single(double gain_sq, double lambda_max, double xi_max, double noise_var) {
  return sqnr_ue_bound(gain_sq, lambda_max, xi_max, noise_var);
}

double sqnr_multi_beam(double composite_gain_sq, const SqnrInputs& in) {
  if (in.n_rf < 1) throw DomainError("n_rf must be >= 1");
  return sqnr_single_beam(in.rx_gain_sq * composite_gain_sq / in.n_rf, in.noise_var, in.eta);
}

double sqnr_lower_bound_multi(double composite_gain_sq, double lambda_max_prime, double xi_max, double noise_var) {
  return sqnr_ue_bound(composite_gain_sq, lambda_max_prime, xi_max, noise_var);
}

double lambda_prime(int n_rf, double noise_var, double g_sq, double rx_gain_sq) {
  if (n_rf < 1 || !(g_sq * rx_gain_sq > 0.0)) throw DomainError("invalid lambda' inputs");
  return n_rf * noise_var / (g_sq * rx_gain_sq);
}

double correlation_power_ratio(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("gamma must be nonnegative");
  return 1.0 + gamma;
}

double nonzero_lag_power(double s, double noise_var, double eta) {
  return eta * eta * noise_var + eta * (1.0 - eta) * (s + noise_var);
}

double zero_lag_power(double s, double noise_var, double eta) {
  return eta * eta * s + nonzero_lag_power(s, noise_var, eta);
}

}  // namespace mmsync
