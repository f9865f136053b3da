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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmsync/beamforming.hpp"
#include "mmsync/config.hpp"
#include "mmsync/detector.hpp"
#include "mmsync/optimizer.hpp"
#include "mmsync/quantization.hpp"
#include "mmsync/waveform.hpp"

namespace mmsync {

enum class Method { Proposed, SingleStream };
std::string method_name(Method m);

using Bits = std::optional<int>;

/// Per-trial stream seed from (master seed, scenario hash, trial index).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t scenario, std::uint64_t trial);
std::uint64_t splitmix64(std::uint64_t x);

/// Reference waveform scaled to unit power per sample.
struct Reference {
  SyncWaveform waveform;
  CVec samples;   // length N, unit mean power
  OfdmGrid grid;  // symbols scaled to match samples
};
Reference make_reference(const WaveformConfig& wf, int root);

/// Beams selected for every slot of one method at one resolution.
struct SlotBeams {
  std::vector<BeamSet> beams;
  std::vector<CVec> tx_vectors;  // unit norm
  std::vector<double> objectives;
  std::uint64_t iterations_per_slot = 0;
};

/// Immutable state shared by all trials of a scenario.
class Setup {
 public:
  explicit Setup(const Scenario& s);

  const Scenario& scenario() const { return scn_; }
  const Reference& reference(int root) const;
  const Reference& serving_reference() const { return reference(serving_root_); }
  const ArrayGeometry& bs_geometry() const { return bs_; }
  const ArrayGeometry& ue_geometry() const { return ue_; }
  const SubarrayLayout& subarrays() const { return sub_; }
  const Codebook& subarray_codebook() const { return sub_cb_; }
  const Codebook& full_codebook() const { return full_cb_; }
  const AnchorGrid& anchors() const { return anchors_; }
  const SlotBeams& beams(Method m, const Bits& bits) const;
  BoundParams bound_params(Method m, const Bits& bits) const;
  double noise_var(double snr_db) const { return db_to_linear(-snr_db); }
  int window_length() const { return scn_.waveform.n_subcarriers * scn_.sync.t_ue; }
  double sample_rate() const { return scn_.waveform.sample_rate_hz(); }

 private:
  Scenario scn_;
  int serving_root_ = 0;
  std::map<int, Reference> refs_;
  ArrayGeometry bs_, ue_;
  SubarrayLayout sub_;
  Codebook sub_cb_, full_cb_;
  AnchorGrid anchors_;
  std::map<std::pair<int, int>, SlotBeams> beams_;  // (method, bits or 0 for inf)
};

// ----------------------------------------------------------------- summaries

struct MeanStat {
  double mean = 0.0;
  double stderr_ = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};
MeanStat mean_ci(const std::vector<double>& x);

/// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n);

// ------------------------------------------------------------------- SQNR

struct SqnrSample {
  int trial = 0;
  Method method = Method::Proposed;
  Bits bits;
  double snr_db = 0.0;
  int slot = 0;
  double sqnr_db = 0.0;      // measured
  double analytic_db = 0.0;  // flat-channel closed form at the same powers
};

struct SqnrSummary {
  Method method = Method::Proposed;
  Bits bits;
  double snr_db = 0.0;
  std::size_t trials = 0;
  MeanStat db;
  double median_db = 0.0;
  double analytic_mean_db = 0.0;
};

struct SqnrResult {
  std::vector<SqnrSample> samples;
  std::vector<SqnrSummary> summary;
};

/// Measured values below this floor are reported at the floor.
inline constexpr double kSqnrFloorDb = -30.0;

SqnrResult run_sqnr_experiment(const Scenario& s);

// ----------------------------------------------------------------- timing

struct TimingRecord {
  int trial = 0;
  Method method = Method::Proposed;
  Bits bits;
  double snr_db = 0.0;
  double cfo = 0.0;
  int slot = 0;
  TrialOutcome outcome;
};

struct TimingSummary {
  Method method = Method::Proposed;
  Bits bits;
  double snr_db = 0.0;
  double cfo = 0.0;
  std::size_t trials = 0;
  double nmse = 0.0;
  double nmse_stderr = 0.0;
  double success_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

struct TimingResult {
  std::vector<TimingRecord> records;
  std::vector<TimingSummary> summary;
};

/// NMSE against SNR with no CFO.
TimingResult run_timing_experiment(const Scenario& s);
/// NMSE against every CFO in the scenario, at every SNR.
TimingResult run_cfo_experiment(const Scenario& s);

// -------------------------------------------------------------- multicell

struct DetectionSummary {
  Method method = Method::Proposed;
  Bits bits;
  double snr_db = 0.0;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double nmse = 0.0;
};

struct AccessSummary {
  Method method = Method::Proposed;
  Bits bits;
  double snr_db = 0.0;
  int slot = 0;  // -1: no slot of the frame succeeded
  std::size_t count = 0;
  double probability = 0.0;
};

struct MulticellResult {
  std::vector<DetectionSummary> detection;
  std::vector<AccessSummary> access;
};

/// Central-cell statistics of the seven-cell layout. trials counts UE drops
/// times ues_per_cell.
MulticellResult run_multicell_experiment(const Scenario& s);

// ---------------------------------------------------- validation helpers

struct ProfileStats {
  double peak_mean = 0.0;      // mean |G[t]|
  double off_peak_mean = 0.0;  // mean |G[v]| away from t
};

/// Single antenna, AWGN, no beamforming. Burst at a random lag in a
/// t_ue-symbol window, AGC over the window.
ProfileStats correlation_shape(const Bits& bits, double snr_db, int trials, std::uint64_t seed,
                               const WaveformConfig& wf, int t_ue);

struct PowerRatio {
  double zero_lag_power = 0.0;
  double nonzero_lag_power = 0.0;
  double ratio = 0.0;
  double gamma_analytic = 0.0;  // correlation-domain closed form
};

/// Flat single-antenna burst with per-sample signal power s_over_n (noise
/// variance one). Nonzero-lag powers average all cyclic in-band lags.
PowerRatio measure_power_ratio(double s_over_n, const Bits& bits, int trials, std::uint64_t seed,
                               const WaveformConfig& wf);

/// Correlation-domain SQNR: N times the per-sample closed form at the
/// AGC-normalized powers.
double correlation_sqnr(int n_subcarriers, double signal_power, double noise_var, const Bits& bits);

struct BussgangCheck {
  double eta_empirical = 0.0;  // Re E[q y*] / E|y|^2
  double eta_model = 0.0;      // (1 - xi) V^(-1/2)
  double decorrelation = 0.0;  // |E[(q - eta_model y) y*]| / E|y|^2
};

BussgangCheck validate_bussgang(int bits, double power, std::size_t samples, std::uint64_t seed);

}  // namespace mmsync
