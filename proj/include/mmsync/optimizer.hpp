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

#include <cstdint>
#include <span>
#include <vector>

#include "mmsync/beamforming.hpp"
#include "mmsync/types.hpp"

namespace mmsync {

/// Angular sector in degrees. A zero-width elevation range yields a 1-D grid.
struct SectorRange {
  double az_lo_deg = -60.0;
  double az_hi_deg = 60.0;
  double el_lo_deg = -45.0;
  double el_hi_deg = 45.0;
};

struct Anchor {
  double azimuth = 0.0;  // radians
  double elevation = 0.0;
};

struct AnchorGrid {
  int t_bs = 0;
  int n_az = 0;
  int n_el = 0;
  std::vector<Anchor> anchors;  // azimuth-major: index = i_az * n_el + i_el
};

/// Cell-centre lattice of t_bs = n_az * n_el points. The factorization whose
/// aspect ratio is closest (in log) to the sector's is chosen.
AnchorGrid build_anchor_grid(int t_bs, const SectorRange& sector);

/// Worst-case constants of the bound objective.
struct BoundParams {
  double lambda_max = 100.0;
  double xi_max = 0.0;
  double noise_var = 1.0;
};

struct BeamSelection {
  BeamSet beams;
  double objective = 0.0;
  std::uint64_t iteration_count = 0;
};

/// argmax over codewords of the lower bound with X = |a^H f|^2. Ties go to
/// the lowest index.
BeamSelection select_single_beam(const Codebook& codebook, std::span<const Complex> steering,
                                 const BoundParams& params);

/// Exhaustive search over codebook^n_rf of the bound with X = |h|^2. Ties go
/// to the lexicographically smallest index tuple. Throws BudgetError when
/// N_beam^n_rf > budget.
BeamSelection select_multi_beam(const Codebook& codebook, int n_rf, std::span<const Complex> steering,
                                const BoundParams& params, std::uint64_t budget = 1ULL << 26);

/// Objective of a given beam set, evaluated exactly as the search does.
double multi_beam_objective(const Codebook& codebook, const BeamSet& beams, std::span<const Complex> steering,
                            const BoundParams& params);

/// n_beam^n_rf; throws BudgetError on 64-bit overflow.
std::uint64_t search_size(std::uint64_t n_beam, int n_rf);

struct ComplexityReport {
  std::uint64_t bs_iterations_multi = 0;   // N_T T_BS N_beam^N_RF
  std::uint64_t bs_iterations_single = 0;  // N_T T_BS N_beam
  std::uint64_t ue_complex_mults = 0;      // M N (N + 1)(T_UE - 1)
  std::uint64_t ue_complex_adds = 0;       // M N (N - 1)(T_UE - 1)
};

ComplexityReport complexity_report(std::uint64_t n_triggers, std::uint64_t t_bs, std::uint64_t n_beam, int n_rf,
                                   std::uint64_t n, std::uint64_t t_ue, std::uint64_t m_tot);

}  // namespace mmsync
