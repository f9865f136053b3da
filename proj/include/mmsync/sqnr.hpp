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

namespace mmsync {

/// Flat-channel zero-lag SQNR inputs. S = rx_gain_sq * effective_gain_sq / n_rf.
struct SqnrInputs {
  double effective_gain_sq = 0.0;  // g^2 |a_tx^H f|^2, or |h|^2 for a composite beam
  double noise_var = 1.0;
  double eta = 1.0;
  double xi_max = 0.0;
  double lambda_max = 1.0;
  int n_rf = 1;
  double rx_gain_sq = 1.0;  // |[a_rx]_b|^2
};

/// gamma = eta S / (eta sigma^2 + (1 - eta)(S + sigma^2))
double sqnr_single_beam(double signal_power, double noise_var, double eta);
double sqnr_single_beam(const SqnrInputs& in);

/// Worst-case-SNR bound for one UE with its own xi. Equals the lower bound
/// below when xi_u == xi_max.
double sqnr_ue_bound(double gain_sq, double lambda_max, double xi_u, double noise_var);

/// X / (lambda + ([sigma^2 (X / lambda + 1)]^(1/2) / (1 - xi) - 1)(X + lambda))
double sqnr_lower_bound_single(double gain_sq, double lambda_max, double xi_max, double noise_var);

/// Multi-beam SQNR: single-beam formula with S = rx_gain_sq |h|^2 / n_rf.
double sqnr_multi_beam(double composite_gain_sq, const SqnrInputs& in);

/// Same closed form with lambda' in place of lambda.
double sqnr_lower_bound_multi(double composite_gain_sq, double lambda_max_prime, double xi_max, double noise_var);

/// N_RF sigma^2 / (g^2 |[a_rx]_b|^2)
double lambda_prime(int n_rf, double noise_var, double g_sq, double rx_gain_sq);

/// 1 + gamma
double correlation_power_ratio(double gamma);

/// E|Lambda[0]|^2 and E|Lambda[v]|^2 for v != 0 in the per-sample model.
double zero_lag_power(double signal_power, double noise_var, double eta);
double nonzero_lag_power(double signal_power, double noise_var, double eta);

}  // namespace mmsync
