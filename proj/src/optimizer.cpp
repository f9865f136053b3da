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
#include "mmsync/optimizer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mmsync/sqnr.hpp"

namespace mmsync {

AnchorGrid build_anchor_grid(int t_bs, const SectorRange& s) {
  if (t_bs < 1) throw DomainError("t_bs must be >= 1");
  const double az_span = s.az_hi_deg - s.az_lo_deg;
  const double el_span = s.el_hi_deg - s.el_lo_deg;
  if (az_span < 0.0 || el_span < 0.0) throw DomainError("empty sector");
  AnchorGrid g;
  g.t_bs = t_bs;
  g.n_az = t_bs;
  g.n_el = 1;
  if (el_span > 0.0 && az_span > 0.0) {
    const double target = std::log(az_span / el_span);
    double best = std::numeric_limits<double>::infinity();
    for (int n_az = 1; n_az <= t_bs; ++n_az) {
      if (t_bs % n_az != 0) continue;
      const int n_el = t_bs / n_az;
      const double err = std::fabs(std::log(static_cast<double>(n_az) / n_el) - target);
      if (err < best - 1e-12) {
        best = err;
        g.n_az = n_az;
        g.n_el = n_el;
      }
    }
  } else if (az_span == 0.0 && el_span > 0.0) {
    g.n_az = 1;
    g.n_el = t_bs;
  }
  for (int i = 0; i < g.n_az; ++i) {
    for (int j = 0; j < g.n_el; ++j) {
      const double az = s.az_lo_deg + az_span * (i + 0.5) / g.n_az;
      const double el = s.el_lo_deg + el_span * (j + 0.5) / g.n_el;
      g.anchors.push_back(Anchor{deg_to_rad(az), deg_to_rad(el)});
    }
  }
  return g;
}

static double objective(double gain_sq, const BoundParams& p) {
  return sqnr_lower_bound_single(gain_sq, p.lambda_max, p.xi_max, p.noise_var);
}

BeamSelection select_single_beam(const Codebook& cb, std::span<const Complex> steering, const BoundParams& params) {
  if (cb.size() == 0) throw DomainError("codebook is empty");
  BeamSelection out;
  out.objective = -std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < cb.size(); ++q) {
    const double v = objective(std::norm(inner(steering, cb.codewords[q])), params);
    if (v > out.objective) {
      out.objective = v;
      out.beams.indices = {q};
    }
  }
  out.iteration_count = cb.size();
  return out;
}

std::uint64_t search_size(std::uint64_t n_beam, int n_rf) {
  if (n_rf < 1) throw DomainError("n_rf must be >= 1");
  std::uint64_t total = 1;
  for (int j = 0; j < n_rf; ++j) {
    if (n_beam != 0 && total > std::numeric_limits<std::uint64_t>::max() / n_beam)
      throw BudgetError("search size (N_beam)^(N_RF) overflows 64 bits");
    total *= n_beam;
  }
  return total;
}

double multi_beam_objective(const Codebook& cb, const BeamSet& beams, std::span<const Complex> steering,
                            const BoundParams& params) {
  return objective(std::norm(composite_beam_gain(cb, beams, steering)), params);
}

BeamSelection select_multi_beam(const Codebook& cb, int n_rf, std::span<const Complex> steering,
                                const BoundParams& params, std::uint64_t budget) {
  if (cb.size() == 0) throw DomainError("codebook is empty");
  const std::size_t n_a = static_cast<std::size_t>(cb.n_a);
  if (steering.size() != static_cast<std::size_t>(n_rf) * n_a) throw DomainError("steering length must equal n_rf * n_a");
  const std::uint64_t total = search_size(cb.size(), n_rf);
  if (total > budget)
    throw BudgetError("exhaustive search needs (N_beam)^(N_RF) = " + std::to_string(total) +
                      " iterations, budget is " + std::to_string(budget));

  // table[j][q] = a_j^H p_q, the same products composite_beam_gain forms.
  const std::size_t nb = cb.size();
  std::vector<CVec> table(static_cast<std::size_t>(n_rf), CVec(nb));
  for (int j = 0; j < n_rf; ++j)
    for (std::size_t q = 0; q < nb; ++q) table[j][q] = inner(steering.subspan(j * n_a, n_a), cb.codewords[q]);

  std::vector<std::size_t> idx(static_cast<std::size_t>(n_rf), 0);
  BeamSelection out;
  out.objective = -std::numeric_limits<double>::infinity();
  for (std::uint64_t it = 0; it < total; ++it) {
    Complex h{};
    for (int j = 0; j < n_rf; ++j) h += table[j][idx[j]];
    const double v = objective(std::norm(h), params);
    if (v > out.objective) {
      out.objective = v;
      out.beams.indices = idx;
    }
    for (int j = n_rf - 1; j >= 0; --j) {
      if (++idx[j] < nb) break;
      idx[j] = 0;
    }
  }
  out.iteration_count = total;
  return out;
}

static std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) throw DomainError("operation count overflows 64 bits");
  return a * b;
}

ComplexityReport complexity_report(std::uint64_t n_triggers, std::uint64_t t_bs, std::uint64_t n_beam, int n_rf,
                                   std::uint64_t n, std::uint64_t t_ue, std::uint64_t m_tot) {
  if (n_triggers == 0 || t_bs == 0 || n_beam == 0 || n_rf < 1 || n == 0 || t_ue == 0 || m_tot == 0)
    throw DomainError("complexity inputs must be positive");
  ComplexityReport r;
  r.bs_iterations_multi = checked_mul(checked_mul(n_triggers, t_bs), search_size(n_beam, n_rf));
  r.bs_iterations_single = checked_mul(checked_mul(n_triggers, t_bs), n_beam);
  const std::uint64_t base = checked_mul(m_tot, n);
  r.ue_complex_mults = checked_mul(checked_mul(base, n + 1), t_ue - 1);
  r.ue_complex_adds = checked_mul(checked_mul(base, n - 1), t_ue - 1);
  return r;
}

}  // namespace mmsync
