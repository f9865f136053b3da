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
#include <optional>
#include <string>
#include <vector>

#include "mmsync/channel.hpp"
#include "mmsync/optimizer.hpp"

namespace mmsync {

enum class Mode { SingleUe, MultiUeCell, MultiCell };
enum class ChannelRegime { Flat, Clustered };

struct WaveformConfig {
  int n_subcarriers = 512;
  int cp_length = 64;
  int zc_length = 63;
  int zc_root = 34;
  double subcarrier_spacing_khz = 270.0;

  double sample_rate_hz() const { return n_subcarriers * subcarrier_spacing_khz * 1e3; }
};

struct ArrayConfig {
  ArrayKind kind = ArrayKind::Upa;
  int n_x = 8;
  int n_y = 4;
  int n_rf = 4;
  int oversampling = 2;

  ArrayGeometry geometry() const;
};

struct SyncConfig {
  int t_bs = 8;
  int t_ue = 10;
  int n_triggers = 1;
};

struct OptimizerConfig {
  double inv_lambda_max_db = -20.0;  // 1 / lambda'_max
  double noise_var = 1.0;
  std::uint64_t search_budget = 1ULL << 24;
  SectorRange sector;
};

struct ChannelConfig {
  ChannelRegime regime = ChannelRegime::Flat;
  ClusterParams clusters;
  int tap_count = 16;
  double rolloff = 0.25;
};

struct LayoutConfig {
  double radius_m = 150.0;
  double isd_m = 500.0;
  double min_distance_m = 20.0;
  double bs_height_m = 10.0;
  double ue_height_m = 1.5;
  PathLossModel path_loss;
  std::array<int, 3> roots = {25, 29, 34};
  int ues_per_cell = 10;
};

/// Resolved scenario. Every field has a default, so {"mode": ...} is a
/// complete configuration.
struct Scenario {
  Mode mode = Mode::SingleUe;
  std::uint64_t seed = 1;
  int trials = 2000;
  int workers = 1;  // 0 = hardware concurrency
  WaveformConfig waveform;
  ArrayConfig bs_array;
  ArrayConfig ue_array{ArrayKind::Ula, 16, 1, 1, 1};
  std::vector<std::optional<int>> adc_bits = {2, 4, std::nullopt};
  std::vector<double> snr_db = {-20.0, -15.0, -10.0, -5.0, 0.0};
  std::vector<double> cfo = {-1.0, -0.5, 0.0, 0.5, 1.0};
  SyncConfig sync;
  OptimizerConfig optimizer;
  ChannelConfig channel;
  LayoutConfig layout;
  int sqnr_repetitions = 32;

  CellLayout cell_layout() const;
};

/// Parses a JSON scenario. Unknown keys and out-of-range values raise
/// ConfigError naming the key path.
Scenario parse_config_string(const std::string& text);
Scenario parse_config_file(const std::string& path);

/// Canonical JSON of the resolved scenario.
std::string echo_json(const Scenario& s);

/// FNV-1a of the canonical echo without seed and worker count.
std::uint64_t scenario_hash(const Scenario& s);

std::string to_string(Mode m);
std::string bits_label(const std::optional<int>& bits);

}  // namespace mmsync
