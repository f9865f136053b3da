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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mmsync/types.hpp"

namespace mmsync {

enum class ArrayKind { Ula, Upa };

/// ULA lies along x. UPA element (m, n) has flat index m + n * n_x.
struct ArrayGeometry {
  ArrayKind kind = ArrayKind::Ula;
  int n_x = 1;
  int n_y = 1;
  double spacing = 0.5;  // wavelengths

  static ArrayGeometry ula(int n);
  static ArrayGeometry upa(int n_x, int n_y);
  int n_elements() const noexcept { return n_x * n_y; }
  void validate() const;
};

/// a[m + n n_x] = exp(-j 2 pi s (m sin(az) cos(el) + n sin(el))). A ULA
/// ignores the second axis.
CVec steering_vector(const ArrayGeometry& geom, double azimuth, double elevation);

struct Path {
  Complex gain{1.0, 0.0};
  double aod_azimuth = 0.0;
  double aod_elevation = 0.0;
  double aoa_azimuth = 0.0;
  double delay_s = 0.0;
};
using PathSet = std::vector<Path>;

/// Raised cosine evaluated in units of the sample period.
struct PulseShape {
  double rolloff = 0.25;
  double operator()(double t) const;
};

struct BeamSpaceChannel {
  int n_tx = 0;
  int n_rx = 0;
  std::vector<CMatrix> taps;  // n_rx x n_tx each
  bool exceeds_cp = false;    // some path delay is longer than the CP

  int tap_count() const noexcept { return static_cast<int>(taps.size()); }
  /// H~[k] = sum_l H[l] exp(-j 2 pi l k / n)
  CMatrix frequency_response(int k, int n) const;
};

/// H[l] = sum_r beta_r p(l - tau_r / Ts) a_rx(r) a_tx(r)^H.
/// cp_length < 0 disables the CP check.
BeamSpaceChannel build_channel(const PathSet& paths, const ArrayGeometry& tx, const ArrayGeometry& rx,
                               int tap_count, const PulseShape& pulse, double symbol_rate,
                               int cp_length = -1);

/// Per-receive-antenna taps of the channel seen through transmit vector f:
/// row m, column l holds (H[l] f)[m].
CMatrix effective_taps(const BeamSpaceChannel& ch, std::span<const Complex> f);

/// Circular convolution of each row of eff_taps with a length-N symbol. The
/// cyclic prefix makes the linear channel circular over the symbol.
CMatrix burst_response(const CMatrix& eff_taps, std::span<const Complex> symbol);

/// window[:, t + n] += scale * burst[:, n] * exp(j 2 pi cfo n / N). Indices
/// falling outside the window are dropped, so partial overlap is allowed.
void add_burst(CMatrix& window, const CMatrix& burst, long long t, double cfo, Complex scale = 1.0);

/// Fills with independent CN(0, 1) draws.
void fill_unit_noise(CMatrix& out, Rng& rng);

/// Received window: noise everywhere, the filtered symbol at t..t+N-1.
CMatrix propagate(const BeamSpaceChannel& ch, std::span<const Complex> symbol, std::span<const Complex> f,
                  double noise_var, double cfo, long long t, int window_length, Rng& rng);

// ---------------------------------------------------------------- multipath

struct ClusterParams {
  int clusters = 3;
  int paths_per_cluster = 4;
  double angle_spread_deg = 5.0;
  double cluster_offset_deg = 30.0;
  double delay_spread_ns = 20.0;
  double intra_cluster_delay_ns = 2.0;
  // Minimum void between successive cluster arrivals.
  double min_cluster_gap_ns = 25.0;
};

/// Single path at the given direction, delay zero.
PathSet flat_paths(double azimuth, double elevation, double aoa, Complex gain = 1.0);

/// Clustered multipath around a geometric direction. The first cluster is
/// aligned with it at zero delay. Total path power is normalized to one.
PathSet clustered_paths(const ClusterParams& p, double azimuth, double elevation, Rng& rng);

// ------------------------------------------------------------------ layout

struct PathLossModel {
  double pl0_db = 61.4;
  double exponent = 3.2;
  double d0_m = 1.0;
  double shadowing_db = 8.0;
};

double path_loss_db(const PathLossModel& m, double distance_m);

struct CellSite {
  double x = 0.0;
  double y = 0.0;
  int zc_root = 34;
};

struct CellLayout {
  std::vector<CellSite> cells;  // cells[0] is the cell of interest
  bool hexagonal = false;
  double radius_m = 150.0;      // single cell
  double isd_m = 500.0;         // hexagonal
  double min_distance_m = 20.0;
  double bs_height_m = 10.0;
  double ue_height_m = 1.5;
  double sector_lo_deg = -60.0;
  double sector_hi_deg = 60.0;
  PathLossModel path_loss;

  static CellLayout single_cell(double radius_m = 150.0, int root = 34);
  /// Seven cells. Centre root roots[0]; the ring alternates roots[1], roots[2].
  static CellLayout hex7(double isd_m = 500.0, std::array<int, 3> roots = {25, 29, 34});

  /// Distance at which the cell-edge path loss is referenced.
  double edge_distance() const;
};

/// UE position and its geometry as seen from one base station sector.
struct UePlacement {
  double x = 0.0;
  double y = 0.0;
  double distance_m = 0.0;   // 3-D
  double azimuth = 0.0;      // relative to the sector boresight
  double elevation = 0.0;    // negative below the array
  double path_loss_db = 0.0; // including shadowing
  double shadowing_db = 0.0;
};

/// Geometry of position (x, y) from `cell`. For cells other than the first,
/// the sector of the three facing the UE is used.
UePlacement locate(const CellLayout& layout, std::size_t cell, double x, double y, double shadowing_db);

/// Uniform-by-area drop inside the sector of cells[0], at least
/// min_distance_m from the site. Deterministic in seed.
std::vector<UePlacement> drop_users(const CellLayout& layout, int n_ue, std::uint64_t seed);
std::vector<UePlacement> drop_users(const CellLayout& layout, int n_ue, Rng& rng);

}  // namespace mmsync
