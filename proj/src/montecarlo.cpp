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
#include "mmsync/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "mmsync/channel.hpp"
#include "mmsync/sqnr.hpp"

namespace mmsync {

std::string method_name(Method m) { return m == Method::Proposed ? "proposed" : "single_stream"; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t scenario, std::uint64_t trial) {
  return splitmix64(master ^ splitmix64(scenario ^ splitmix64(trial)));
}

Reference make_reference(const WaveformConfig& wf, int root) {
  Reference r;
  r.waveform = modulate(map_to_grid(generate_zc(root, wf.zc_length), wf.n_subcarriers), wf.cp_length);
  const double e = energy(r.waveform.time_samples);
  if (!(e > 0.0)) throw DomainError("reference waveform has no energy");
  const double scale = std::sqrt(wf.n_subcarriers / e);
  r.samples = r.waveform.time_samples;
  for (auto& v : r.samples) v *= scale;
  r.grid = r.waveform.grid;
  for (auto& v : r.grid.symbols) v *= scale;
  return r;
}

namespace {

constexpr Method kMethods[] = {Method::Proposed, Method::SingleStream};

int bits_key(const Bits& b) { return b ? *b : 0; }
double xi_of(const Bits& b) { return b ? xi_for_bits(*b) : 0.0; }
AdcModel adc_of(const Bits& b) { return b ? AdcModel::with_bits(*b) : AdcModel::infinite(); }

template <class F>
void parallel_for(int n, int workers, F&& f) {
  int w = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  w = std::min(w, n);
  if (w <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int k = 0; k < w; ++k) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct Link {
  PathSet paths;
  UePlacement place;
};

double amplitude_for(const CellLayout& layout, double path_loss) {
  const double edge = path_loss_db(layout.path_loss, std::hypot(layout.edge_distance(),
                                                                layout.bs_height_m - layout.ue_height_m));
  return std::sqrt(db_to_linear(edge - path_loss));
}

PathSet make_paths(const Scenario& s, double az, double el, double amplitude, Rng& rng) {
  PathSet p;
  if (s.channel.regime == ChannelRegime::Flat) {
    std::uniform_real_distribution<double> u(-0.5 * kPi, 0.5 * kPi);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    const double aoa = u(rng);
    p = flat_paths(az, el, aoa, std::polar(1.0, ph(rng)));
  } else {
    p = clustered_paths(s.channel.clusters, az, el, rng);
  }
  for (auto& path : p) path.gain *= amplitude;
  return p;
}

Link draw_link(const Setup& setup, Rng& rng) {
  const Scenario& s = setup.scenario();
  Link l;
  if (s.mode == Mode::SingleUe) {
    const auto& sec = s.optimizer.sector;
    std::uniform_real_distribution<double> az(sec.az_lo_deg, sec.az_hi_deg);
    std::uniform_real_distribution<double> el(sec.el_lo_deg, sec.el_hi_deg);
    l.place.azimuth = deg_to_rad(az(rng));
    l.place.elevation = deg_to_rad(el(rng));
    l.paths = make_paths(s, l.place.azimuth, l.place.elevation, 1.0, rng);
  } else {
    const CellLayout layout = s.cell_layout();
    l.place = drop_users(layout, 1, rng).front();
    l.paths = make_paths(s, l.place.azimuth, l.place.elevation, amplitude_for(layout, l.place.path_loss_db), rng);
  }
  return l;
}

BeamSpaceChannel channel_for(const Setup& setup, const PathSet& paths) {
  const Scenario& s = setup.scenario();
  const int taps = s.channel.regime == ChannelRegime::Flat ? 1 : s.channel.tap_count;
  return build_channel(paths, setup.bs_geometry(), setup.ue_geometry(), taps, PulseShape{s.channel.rolloff},
                       setup.sample_rate(), s.waveform.cp_length);
}

// Slot whose beam delivers the most noise-free power to the UE.
int serving_slot(const BeamSpaceChannel& ch, const SlotBeams& sb, CMatrix* taps_out) {
  int best = 0;
  double best_pw = -1.0;
  for (std::size_t k = 0; k < sb.tx_vectors.size(); ++k) {
    CMatrix t = effective_taps(ch, sb.tx_vectors[k]);
    const double pw = t.frobenius_sq();
    if (pw > best_pw) {
      best_pw = pw;
      best = static_cast<int>(k);
      if (taps_out) *taps_out = std::move(t);
    }
  }
  return best;
}

void quantize_rows(CMatrix& win, const AdcModel& adc) {
  for (std::size_t m = 0; m < win.rows; ++m) {
    std::span<Complex> row(win.data.data() + m * win.cols, win.cols);
    const double rms = rail_rms(row);
    if (rms > 0.0) apply_inplace(adc, row, rms, true);
  }
}

std::uint64_t draw_timing(const Setup& setup, Rng& rng) {
  const int n = setup.scenario().waveform.n_subcarriers;
  std::uniform_int_distribution<long long> t(1, static_cast<long long>(n) * (setup.scenario().sync.t_ue - 1));
  return static_cast<std::uint64_t>(t(rng));
}

double percentile50(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

// ------------------------------------------------------------------ Setup

Setup::Setup(const Scenario& s) : scn_(s) {
  const auto& wf = s.waveform;
  if (s.mode == Mode::MultiCell) {
    serving_root_ = s.layout.roots[0];
    for (int r : s.layout.roots) refs_.emplace(r, make_reference(wf, r));
  } else {
    serving_root_ = wf.zc_root;
    refs_.emplace(serving_root_, make_reference(wf, serving_root_));
  }
  bs_ = s.bs_array.geometry();
  ue_ = s.ue_array.geometry();
  sub_ = subarray_layout(bs_, s.bs_array.n_rf);
  sub_cb_ = array_codebook(sub_.sub, s.bs_array.oversampling);
  full_cb_ = array_codebook(bs_, s.bs_array.oversampling);
  anchors_ = build_anchor_grid(s.sync.t_bs, s.optimizer.sector);

  for (const auto& bits : s.adc_bits) {
    for (Method m : kMethods) {
      const auto key = std::make_pair(static_cast<int>(m), bits_key(bits));
      if (beams_.count(key)) continue;
      const BoundParams bp = bound_params(m, bits);
      SlotBeams sb;
      for (const auto& a : anchors_.anchors) {
        const CVec steer = steering_vector(bs_, a.azimuth, a.elevation);
        BeamSelection sel = m == Method::Proposed
                                ? select_multi_beam(sub_cb_, sub_.n_rf, steer, bp, s.optimizer.search_budget)
                                : select_single_beam(full_cb_, steer, bp);
        CVec f = m == Method::Proposed ? effective_transmit_vector(assemble_precoder(sub_cb_, sel.beams))
                                       : full_cb_.codewords[sel.beams.indices.front()];
        sb.beams.push_back(sel.beams);
        sb.tx_vectors.push_back(std::move(f));
        sb.objectives.push_back(sel.objective);
        sb.iterations_per_slot = sel.iteration_count;
      }
      beams_.emplace(key, std::move(sb));
    }
  }
}

const Reference& Setup::reference(int root) const {
  auto it = refs_.find(root);
  if (it == refs_.end()) throw DomainError("no reference for root " + std::to_string(root));
  return it->second;
}

const SlotBeams& Setup::beams(Method m, const Bits& bits) const {
  auto it = beams_.find(std::make_pair(static_cast<int>(m), bits_key(bits)));
  if (it == beams_.end()) throw DomainError("resolution " + bits_label(bits) + " is not configured");
  return it->second;
}

BoundParams Setup::bound_params(Method m, const Bits& bits) const {
  BoundParams bp;
  const double lambda_prime = db_to_linear(-scn_.optimizer.inv_lambda_max_db);
  bp.lambda_max = m == Method::Proposed ? lambda_prime : lambda_prime / scn_.bs_array.n_rf;
  bp.xi_max = xi_of(bits);
  bp.noise_var = scn_.optimizer.noise_var;
  return bp;
}

// ------------------------------------------------------------ statistics

MeanStat mean_ci(const std::vector<double>& x) {
  MeanStat m;
  if (x.empty()) return m;
  const double n = static_cast<double>(x.size());
  m.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.stderr_ = x.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  m.ci_lo = m.mean - 1.96 * m.stderr_;
  m.ci_hi = m.mean + 1.96 * m.stderr_;
  return m;
}

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.96;
  const double p = static_cast<double>(k) / n;
  const double den = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / den;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / den;
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

double correlation_sqnr(int n_subcarriers, double signal_power, double noise_var, const Bits& bits) {
  const double v = signal_power + noise_var;
  if (!(v > 0.0)) throw DomainError("total power must be positive");
  return n_subcarriers * sqnr_single_beam(signal_power / v, noise_var / v, 1.0 - xi_of(bits));
}

// ------------------------------------------------------------------- SQNR

SqnrResult run_sqnr_experiment(const Scenario& s) {
  if (s.mode == Mode::MultiCell) throw ConfigError("mode", "the sqnr experiment needs a single-cell mode");
  const Setup setup(s);
  const std::uint64_t hash = scenario_hash(s);
  const auto& ref = setup.serving_reference().samples;
  const std::size_t n = ref.size();
  const int reps = s.sqnr_repetitions;
  const int m_rx = setup.ue_geometry().n_elements();

  std::vector<std::vector<SqnrSample>> per_trial(static_cast<std::size_t>(s.trials));
  parallel_for(s.trials, s.workers, [&](int trial) {
    Rng rng(trial_seed(s.seed, hash, static_cast<std::uint64_t>(trial)));
    const Link link = draw_link(setup, rng);
    const BeamSpaceChannel ch = channel_for(setup, link.paths);
    // Common noise for every method, resolution and SNR.
    std::vector<CMatrix> noise(static_cast<std::size_t>(reps), CMatrix(m_rx, n));
    for (auto& z : noise) fill_unit_noise(z, rng);

    auto& out = per_trial[trial];
    CVec row(n);
    for (Method method : kMethods) {
      for (const auto& bits : s.adc_bits) {
        const SlotBeams& sb = setup.beams(method, bits);
        CMatrix taps;
        const int slot = serving_slot(ch, sb, &taps);
        const CMatrix burst = burst_response(taps, ref);
        const AdcModel adc = adc_of(bits);
        for (double snr : s.snr_db) {
          const double nv = setup.noise_var(snr);
          const double sd = std::sqrt(nv);
          double best_mu = -1.0, best_gamma = 0.0, best_power = 0.0;
          for (int b = 0; b < m_rx; ++b) {
            const auto brow = burst.row(b);
            const double power = energy(brow) / static_cast<double>(n);
            const double agc = std::sqrt(0.5 * (power + nv));
            Complex sum{};
            double sum_sq = 0.0;
            for (int r = 0; r < reps; ++r) {
              const auto z = noise[r].row(b);
              for (std::size_t k = 0; k < n; ++k) row[k] = brow[k] + sd * z[k];
              apply_inplace(adc, row, agc, true);
              Complex lam{};
              for (std::size_t k = 0; k < n; ++k) lam += row[k] * std::conj(ref[k]);
              sum += lam;
              sum_sq += std::norm(lam);
            }
            const Complex mu = sum / static_cast<double>(reps);
            const double var = (sum_sq - reps * std::norm(mu)) / (reps - 1.0);
            if (std::abs(mu) > best_mu) {
              best_mu = std::abs(mu);
              best_gamma = var > 0.0 ? std::max(std::norm(mu) - var / reps, 0.0) / var : 0.0;
              best_power = power;
            }
          }
          SqnrSample smp;
          smp.trial = trial;
          smp.method = method;
          smp.bits = bits;
          smp.snr_db = snr;
          smp.slot = slot;
          smp.sqnr_db = std::max(linear_to_db(std::max(best_gamma, 1e-300)), kSqnrFloorDb);
          smp.analytic_db = std::max(
              linear_to_db(std::max(correlation_sqnr(static_cast<int>(n), best_power, nv, bits), 1e-300)),
              kSqnrFloorDb);
          out.push_back(smp);
        }
      }
    }
  });

  SqnrResult res;
  for (auto& v : per_trial) res.samples.insert(res.samples.end(), v.begin(), v.end());
  for (Method method : kMethods) {
    for (const auto& bits : s.adc_bits) {
      for (double snr : s.snr_db) {
        std::vector<double> vals, an;
        for (const auto& smp : res.samples) {
          if (smp.method == method && smp.bits == bits && smp.snr_db == snr) {
            vals.push_back(smp.sqnr_db);
            an.push_back(smp.analytic_db);
          }
        }
        SqnrSummary row;
        row.method = method;
        row.bits = bits;
        row.snr_db = snr;
        row.trials = vals.size();
        row.db = mean_ci(vals);
        row.median_db = percentile50(vals);
        row.analytic_mean_db = mean_ci(an).mean;
        res.summary.push_back(row);
      }
    }
  }
  return res;
}

// ----------------------------------------------------------------- timing

static TimingResult timing_sweep(const Scenario& s, const std::vector<double>& cfos) {
  if (s.mode == Mode::MultiCell) throw ConfigError("mode", "timing experiments need a single-cell mode");
  const Setup setup(s);
  const std::uint64_t hash = scenario_hash(s);
  const auto& ref = setup.serving_reference().samples;
  const int m_rx = setup.ue_geometry().n_elements();
  const int len = setup.window_length();

  std::vector<std::vector<TimingRecord>> per_trial(static_cast<std::size_t>(s.trials));
  parallel_for(s.trials, s.workers, [&](int trial) {
    Rng rng(trial_seed(s.seed, hash, static_cast<std::uint64_t>(trial)));
    const Link link = draw_link(setup, rng);
    const BeamSpaceChannel ch = channel_for(setup, link.paths);
    const long long t = static_cast<long long>(draw_timing(setup, rng));
    CMatrix noise(m_rx, len);
    fill_unit_noise(noise, rng);

    auto& out = per_trial[trial];
    for (Method method : kMethods) {
      for (const auto& bits : s.adc_bits) {
        const SlotBeams& sb = setup.beams(method, bits);
        CMatrix taps;
        const int slot = serving_slot(ch, sb, &taps);
        const CMatrix burst = burst_response(taps, ref);
        const AdcModel adc = adc_of(bits);
        for (double cfo : cfos) {
          for (double snr : s.snr_db) {
            const double sd = std::sqrt(setup.noise_var(snr));
            CMatrix win = noise;
            for (auto& v : win.data) v *= sd;
            add_burst(win, burst, t, cfo);
            quantize_rows(win, adc);
            TimingRecord rec;
            rec.trial = trial;
            rec.method = method;
            rec.bits = bits;
            rec.snr_db = snr;
            rec.cfo = cfo;
            rec.slot = slot;
            rec.outcome = detect(correlate(win, ref), t);
            out.push_back(rec);
          }
        }
      }
    }
  });

  TimingResult res;
  for (auto& v : per_trial) res.records.insert(res.records.end(), v.begin(), v.end());
  for (Method method : kMethods) {
    for (const auto& bits : s.adc_bits) {
      for (double cfo : cfos) {
        for (double snr : s.snr_db) {
          std::vector<TrialOutcome> oc;
          std::vector<double> err;
          std::size_t ok = 0;
          for (const auto& r : res.records) {
            if (r.method != method || r.bits != bits || r.snr_db != snr || r.cfo != cfo) continue;
            oc.push_back(r.outcome);
            const double e = static_cast<double>(r.outcome.nu_true - r.outcome.nu_hat) / r.outcome.nu_true;
            err.push_back(e * e);
            ok += r.outcome.success ? 1 : 0;
          }
          TimingSummary row;
          row.method = method;
          row.bits = bits;
          row.snr_db = snr;
          row.cfo = cfo;
          row.trials = oc.size();
          row.nmse = timing_nmse(oc);
          row.nmse_stderr = mean_ci(err).stderr_;
          row.success_rate = static_cast<double>(ok) / oc.size();
          std::tie(row.wilson_lo, row.wilson_hi) = wilson_interval(ok, oc.size());
          res.summary.push_back(row);
        }
      }
    }
  }
  return res;
}

TimingResult run_timing_experiment(const Scenario& s) { return timing_sweep(s, {0.0}); }

TimingResult run_cfo_experiment(const Scenario& s) { return timing_sweep(s, s.cfo); }

// -------------------------------------------------------------- multicell

namespace {

struct Interferer {
  BeamSpaceChannel channel;
  long long offset = 0;  // arrival relative to the serving burst, samples
  int root = 0;
};

struct SlotTrialResult {
  bool success = false;
  double sq_err = 0.0;
};

}  // namespace

MulticellResult run_multicell_experiment(const Scenario& s) {
  if (s.mode != Mode::MultiCell) throw ConfigError("mode", "the multicell experiment needs mode multi_cell");
  const Setup setup(s);
  const std::uint64_t hash = scenario_hash(s);
  const CellLayout layout = s.cell_layout();
  const auto& ref = setup.serving_reference().samples;
  const int m_rx = setup.ue_geometry().n_elements();
  const int len = setup.window_length();
  const int t_bs = s.sync.t_bs;
  const int n_trials = s.trials * s.layout.ues_per_cell;
  constexpr double kLight = 299792458.0;

  // cases: method x bits x snr, in output order
  struct Case {
    Method method;
    Bits bits;
    double snr;
  };
  std::vector<Case> cases;
  for (Method m : kMethods)
    for (const auto& b : s.adc_bits)
      for (double snr : s.snr_db) cases.push_back({m, b, snr});

  struct TrialOut {
    std::vector<SlotTrialResult> serving;  // per case
    std::vector<int> access;               // per case, -1 = miss
  };
  std::vector<TrialOut> per_trial(static_cast<std::size_t>(n_trials));

  parallel_for(n_trials, s.workers, [&](int trial) {
    const std::uint64_t seed = trial_seed(s.seed, hash, static_cast<std::uint64_t>(trial));
    Rng rng(seed);
    const UePlacement ue = drop_users(layout, 1, rng).front();
    const BeamSpaceChannel ch =
        channel_for(setup, make_paths(s, ue.azimuth, ue.elevation, amplitude_for(layout, ue.path_loss_db), rng));
    std::normal_distribution<double> shadow(0.0, s.layout.path_loss.shadowing_db);
    std::vector<Interferer> intf;
    for (std::size_t c = 1; c < layout.cells.size(); ++c) {
      const double sh = s.layout.path_loss.shadowing_db > 0.0 ? shadow(rng) : 0.0;
      const UePlacement p = locate(layout, c, ue.x, ue.y, sh);
      Interferer it;
      it.channel = channel_for(setup, make_paths(s, p.azimuth, p.elevation, amplitude_for(layout, p.path_loss_db), rng));
      it.offset = std::llround((p.distance_m - ue.distance_m) / kLight * setup.sample_rate());
      it.root = layout.cells[c].zc_root;
      intf.push_back(std::move(it));
    }
    const long long t = static_cast<long long>(draw_timing(setup, rng));

    auto& out = per_trial[trial];
    out.serving.resize(cases.size());
    out.access.assign(cases.size(), -1);
    std::vector<CMatrix> slot_noise(static_cast<std::size_t>(t_bs));
    auto noise_for = [&](int slot) -> const CMatrix& {
      CMatrix& z = slot_noise[slot];
      if (z.data.empty()) {
        Rng r(splitmix64(seed ^ (0x51075ULL + static_cast<std::uint64_t>(slot))));
        z = CMatrix(m_rx, len);
        fill_unit_noise(z, r);
      }
      return z;
    };

    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
      const Case& cs = cases[ci];
      const SlotBeams& sb = setup.beams(cs.method, cs.bits);
      const int serving = serving_slot(ch, sb, nullptr);
      const AdcModel adc = adc_of(cs.bits);
      const double sd = std::sqrt(setup.noise_var(cs.snr));
      bool serving_done = false;
      for (int slot = 0; slot < t_bs; ++slot) {
        if (out.access[ci] >= 0 && serving_done) break;
        if (out.access[ci] >= 0 && slot != serving) continue;
        const CVec& f = sb.tx_vectors[slot];
        CMatrix win = noise_for(slot);
        for (auto& v : win.data) v *= sd;
        add_burst(win, burst_response(effective_taps(ch, f), ref), t, 0.0);
        for (const auto& it : intf)
          add_burst(win, burst_response(effective_taps(it.channel, f), setup.reference(it.root).samples),
                    t + it.offset, 0.0);
        quantize_rows(win, adc);
        const TrialOutcome o = detect(correlate(win, ref), t);
        if (o.success && out.access[ci] < 0) out.access[ci] = slot;
        if (slot == serving) {
          serving_done = true;
          const double e = static_cast<double>(t - o.nu_hat) / static_cast<double>(t);
          out.serving[ci] = {o.success, e * e};
        }
      }
    }
  });

  MulticellResult res;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    DetectionSummary d;
    d.method = cases[ci].method;
    d.bits = cases[ci].bits;
    d.snr_db = cases[ci].snr;
    d.trials = per_trial.size();
    std::size_t ok = 0;
    double err = 0.0;
    std::vector<std::size_t> hist(static_cast<std::size_t>(t_bs) + 1, 0);
    for (const auto& tr : per_trial) {
      ok += tr.serving[ci].success ? 1 : 0;
      err += tr.serving[ci].sq_err;
      const int a = tr.access[ci];
      ++hist[a < 0 ? static_cast<std::size_t>(t_bs) : static_cast<std::size_t>(a)];
    }
    d.success_rate = static_cast<double>(ok) / d.trials;
    std::tie(d.wilson_lo, d.wilson_hi) = wilson_interval(ok, d.trials);
    d.nmse = err / d.trials;
    res.detection.push_back(d);
    for (int slot = 0; slot <= t_bs; ++slot) {
      AccessSummary a;
      a.method = d.method;
      a.bits = d.bits;
      a.snr_db = d.snr_db;
      a.slot = slot == t_bs ? -1 : slot;
      a.count = hist[slot];
      a.probability = static_cast<double>(a.count) / d.trials;
      res.access.push_back(a);
    }
  }
  return res;
}

// ---------------------------------------------------- validation helpers

ProfileStats correlation_shape(const Bits& bits, double snr_db, int trials, std::uint64_t seed,
                               const WaveformConfig& wf, int t_ue) {
  if (trials < 1 || t_ue < 2) throw DomainError("need trials >= 1 and t_ue >= 2");
  const Reference ref = make_reference(wf, wf.zc_root);
  const int n = wf.n_subcarriers;
  const int len = n * t_ue;
  const AdcModel adc = adc_of(bits);
  const double sd = std::sqrt(db_to_linear(-snr_db));
  const CMatrix burst = [&] {
    CMatrix b(1, static_cast<std::size_t>(n));
    std::copy(ref.samples.begin(), ref.samples.end(), b.data.begin());
    return b;
  }();
  double peak = 0.0, off = 0.0;
  for (int i = 0; i < trials; ++i) {
    Rng rng(trial_seed(seed, 0x46494734ULL, static_cast<std::uint64_t>(i)));
    std::uniform_int_distribution<long long> td(1, static_cast<long long>(n) * (t_ue - 1));
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    const long long t = td(rng);
    const Complex rot = std::polar(1.0, ph(rng));
    CMatrix win(1, static_cast<std::size_t>(len));
    fill_unit_noise(win, rng);
    for (auto& v : win.data) v *= sd;
    add_burst(win, burst, t, 0.0, rot);
    quantize_rows(win, adc);
    const CorrelationProfile p = correlate(win, ref.samples);
    const auto& g = p.values[0];
    peak += std::abs(g[t]);
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (std::llabs(static_cast<long long>(v) - t) <= kOffPeakGuard) continue;
      acc += std::abs(g[v]);
      ++cnt;
    }
    off += acc / cnt;
  }
  return {peak / trials, off / trials};
}

PowerRatio measure_power_ratio(double s_over_n, const Bits& bits, int trials, std::uint64_t seed,
                               const WaveformConfig& wf) {
  if (trials < 1 || !(s_over_n >= 0.0)) throw DomainError("invalid power-ratio inputs");
  const Reference ref = make_reference(wf, wf.zc_root);
  const int n = wf.n_subcarriers;
  const int band = ref.grid.band_length;
  const AdcModel adc = adc_of(bits);
  const double agc = std::sqrt(0.5 * (s_over_n + 1.0));
  const double amp = std::sqrt(s_over_n);
  double zl = 0.0, nzl = 0.0;
  CVec y(static_cast<std::size_t>(n));
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  for (int i = 0; i < trials; ++i) {
    Rng rng(trial_seed(seed, 0x4C454D31ULL, static_cast<std::uint64_t>(i)));
    const Complex h = std::polar(amp, ph(rng));
    for (int k = 0; k < n; ++k) {
      const double re = nd(rng);
      y[k] = h * ref.samples[k] + Complex(re, nd(rng));
    }
    apply_inplace(adc, y, agc, true);
    const CVec q = demodulate(y, ref.grid);
    zl += std::norm(lagged_band_correlation(q, ref.grid, 0));
    double acc = 0.0;
    for (int v = 1; v < band; ++v) acc += std::norm(lagged_band_correlation(q, ref.grid, v));
    nzl += acc / (band - 1);
  }
  PowerRatio r;
  r.zero_lag_power = zl / trials;
  r.nonzero_lag_power = nzl / trials;
  r.ratio = r.zero_lag_power / r.nonzero_lag_power;
  r.gamma_analytic = correlation_sqnr(n, s_over_n, 1.0, bits);
  return r;
}

BussgangCheck validate_bussgang(int bits, double power, std::size_t samples, std::uint64_t seed) {
  if (!(power > 0.0) || samples == 0) throw DomainError("invalid Bussgang check inputs");
  const AdcModel adc = AdcModel::with_bits(bits);
  Rng rng(seed);
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * power));
  const double agc = std::sqrt(0.5 * power);
  const double eta_model = bussgang_eta(power, xi_for_bits(bits));
  constexpr std::size_t kBlock = 4096;
  CVec y(kBlock), q(kBlock);
  Complex cross{}, cross_resid{};
  double py = 0.0;
  for (std::size_t done = 0; done < samples; done += kBlock) {
    const std::size_t m = std::min(kBlock, samples - done);
    for (std::size_t k = 0; k < m; ++k) {
      const double re = nd(rng);
      y[k] = Complex(re, nd(rng));
    }
    std::copy(y.begin(), y.begin() + static_cast<long>(m), q.begin());
    apply_inplace(adc, std::span<Complex>(q.data(), m), agc, true);
    for (std::size_t k = 0; k < m; ++k) {
      cross += q[k] * std::conj(y[k]);
      cross_resid += (q[k] - eta_model * y[k]) * std::conj(y[k]);
      py += std::norm(y[k]);
    }
  }
  BussgangCheck c;
  c.eta_empirical = cross.real() / py;
  c.eta_model = eta_model;
  c.decorrelation = std::abs(cross_resid) / py;
  return c;
}

}  // namespace mmsync
