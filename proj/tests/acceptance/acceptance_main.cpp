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
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Informational lines start with "  info".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "mmsync/montecarlo.hpp"
#include "mmsync/optimizer.hpp"
#include "mmsync/quantization.hpp"
#include "mmsync/report.hpp"
#include "mmsync/sqnr.hpp"

using namespace mmsync;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void verdict(int id, bool ok, const std::string& what) {
  std::printf("CRITERION %2d %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void info(const std::string& s) {
  std::printf("  info  %s\n", s.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ----------------------------------------------------------------- oracles

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), 1e-13, 50);
}

// Lloyd-Max by fixed-point iteration, quadrature centroids.
double lloyd_max_mse(int bits) {
  const int levels = 1 << bits;
  const double lim = 12.0;
  std::vector<double> y(levels), t(levels + 1);
  for (int i = 0; i < levels; ++i) y[i] = -2.0 + 4.0 * (i + 0.5) / levels;
  auto edges = [&] {
    t[0] = -lim;
    t[levels] = lim;
    for (int i = 1; i < levels; ++i) t[i] = 0.5 * (y[i - 1] + y[i]);
  };
  for (int it = 0; it < 5000; ++it) {
    edges();
    double shift = 0.0;
    for (int i = 0; i < levels; ++i) {
      const double p = integrate(phi, t[i], t[i + 1]);
      const double m = integrate([](double x) { return x * phi(x); }, t[i], t[i + 1]);
      shift = std::max(shift, std::abs(m / p - y[i]));
      y[i] = m / p;
    }
    if (shift < 1e-12) break;
  }
  edges();
  double mse = 0.0;
  for (int i = 0; i < levels; ++i) {
    const double yi = y[i];
    mse += integrate([yi](double x) { return (x - yi) * (x - yi) * phi(x); }, t[i], t[i + 1]);
  }
  return mse;
}

double literal_bound(double x, const BoundParams& p) {
  const double bracket = std::sqrt(p.noise_var * (x / p.lambda_max + 1.0)) / (1.0 - p.xi_max) - 1.0;
  return x / (p.lambda_max + bracket * (x + p.lambda_max));
}

struct Best {
  std::vector<std::size_t> idx;
  double value = -1.0;
};

Best brute_force(const Codebook& cb, int n_rf, const CVec& a, const BoundParams& p) {
  Best best;
  std::vector<std::size_t> cur(static_cast<std::size_t>(n_rf));
  std::function<void(int)> rec = [&](int depth) {
    if (depth == n_rf) {
      Complex acc{};
      for (int j = 0; j < n_rf; ++j)
        for (int e = 0; e < cb.n_a; ++e) acc += std::conj(a[j * cb.n_a + e]) * cb.codewords[cur[j]][e];
      const double v = literal_bound(std::norm(acc), p);
      if (v > best.value) {
        best.value = v;
        best.idx = cur;
      }
      return;
    }
    for (std::size_t q = 0; q < cb.size(); ++q) {
      cur[depth] = q;
      rec(depth + 1);
    }
  };
  rec(0);
  return best;
}

// Per-sample signal power giving the requested correlation-domain SQNR.
double power_for_gamma(double gamma, const Bits& bits) {
  double lo = 0.0, hi = 1.0;
  while (correlation_sqnr(512, hi, 1.0, bits) < gamma) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (correlation_sqnr(512, mid, 1.0, bits) < gamma ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const TimingSummary* find(const std::vector<TimingSummary>& v, Method m, const Bits& b, double snr, double cfo = 0.0) {
  for (const auto& x : v)
    if (x.method == m && x.bits == b && x.snr_db == snr && x.cfo == cfo) return &x;
  return nullptr;
}

const DetectionSummary* find(const std::vector<DetectionSummary>& v, Method m) {
  for (const auto& x : v)
    if (x.method == m) return &x;
  return nullptr;
}

Scenario base(const std::string& mode) { return parse_config_string(R"({"mode": ")" + mode + R"("})"); }

// -------------------------------------------------------------- criteria

void criterion_1() {
  const Stopwatch sw;
  const WaveformConfig wf;
  const auto q2 = correlation_shape(2, 0.0, 10000, 101, wf, 10);
  const auto qi = correlation_shape(std::nullopt, 0.0, 10000, 101, wf, 10);
  const double drop = 1.0 - q2.peak_mean / qi.peak_mean;
  const double off = std::abs(q2.off_peak_mean - qi.off_peak_mean) / qi.off_peak_mean;
  const double secs = sw.seconds();
  verdict(1, drop >= 0.20 && off < 0.15 && secs < 60.0,
          fmt("zero-lag peak drop 2-bit vs inf %.1f%% (>= 20%%), non-zero-lag mean diff %.1f%% (< 15%%), %.1f s (< 60 s)",
              100 * drop, 100 * off, secs));
}

void criterion_2() {
  bool ok = true;
  std::string detail;
  for (int b = 1; b <= 4; ++b) {
    const auto c = validate_bussgang(b, 1.0, 1'000'000, 200 + b);
    const double rel = std::abs(c.eta_empirical / c.eta_model - 1.0);
    const double xi_err = std::abs(xi_for_bits(b) - lloyd_max_mse(b));
    ok = ok && rel < 0.02 && xi_err < 1e-3 && c.decorrelation < 0.02;
    detail += fmt(" b%d: eta %.4f/%.4f (%.2f%%) xi err %.1e;", b, c.eta_empirical, c.eta_model, 100 * rel, xi_err);
  }
  verdict(2, ok, "Bussgang eta within 2%, xi within 1e-3 of Lloyd-Max quadrature, 10^6 samples:" + detail);
}

void criterion_3() {
  const WaveformConfig wf;
  bool ok = true;
  std::string detail;
  for (double gamma : {0.5, 2.0, 10.0}) {
    const double s = power_for_gamma(gamma, 2);
    const auto r = measure_power_ratio(s, 2, 100000, 300, wf);
    const double rel = std::abs(r.ratio / (1.0 + r.gamma_analytic) - 1.0);
    ok = ok && rel < 0.10;
    detail += fmt(" gamma %.1f: ratio %.3f vs %.3f (%.1f%%);", gamma, r.ratio, 1.0 + r.gamma_analytic, 100 * rel);
  }

  // 16-codeword codebook on an 8-element ULA, UE on three codeword directions
  const auto cb = dft_codebook(8, 2);
  const auto geom = ArrayGeometry::ula(8);
  const double g_sq = 0.01;  // path gain over noise
  int agree = 0, cases = 0;
  for (int target : {2, 5, 11}) {
    double sn = 2.0 * target / 16.0;
    if (sn > 1.0) sn -= 2.0;
    const auto a = steering_vector(geom, std::asin(sn), 0.0);
    std::size_t best_measured = 0, best_analytic = 0;
    double vm = -1.0, va = -1.0;
    for (std::size_t q = 0; q < cb.size(); ++q) {
      const double s = g_sq * std::norm(inner(a, cb.codewords[q]));
      const auto r = measure_power_ratio(s, 2, 4000, 400 + q, wf);
      if (r.ratio > vm) vm = r.ratio, best_measured = q;
      if (r.gamma_analytic > va) va = r.gamma_analytic, best_analytic = q;
    }
    ++cases;
    agree += best_measured == best_analytic;
    detail += fmt(" argmax %zu/%zu;", best_measured, best_analytic);
  }
  ok = ok && agree == cases;
  verdict(3, ok, "power ratio equals 1 + gamma within 10%, codebook argmax agrees:" + detail);
}

void criterion_4() {
  Rng rng(4);
  std::uniform_real_distribution<double> lx(-2.0, 2.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) {
    const double x = std::pow(10.0, lx(rng));
    const double lambda_u = x / 2.0 * std::pow(10.0, 2.0 * u(rng));
    const double lambda_max = lambda_u * (1.0 + 10.0 * u(rng));
    const double xi_u = 0.4 * u(rng);
    const double xi_max = xi_u + (0.45 - xi_u) * u(rng);
    const double eta = (1.0 - xi_u) / std::sqrt(x / lambda_u + 1.0);
    const double g = sqnr_single_beam(x, lambda_u, eta);
    const double g_mid = sqnr_ue_bound(x, lambda_max, xi_u, 1.0);
    const double g_low = sqnr_lower_bound_single(x, lambda_max, xi_max, 1.0);
    if (g_low > g_mid + 1e-12 || g_mid > g + 1e-12) ++violations;
  }
  verdict(4, violations == 0, fmt("bound chain over %d draws: %d violations", draws, violations));
}

void criterion_5() {
  Rng rng(5);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  BoundParams p;
  p.lambda_max = 25.0;
  p.xi_max = xi_for_bits(2);
  int mismatches = 0, instances = 0;
  for (int anchor = 0; anchor < 100; ++anchor) {
    const double az = u(rng);
    for (int n_a : {1, 2, 3, 4}) {
      for (int os : {1, 2, 4}) {
        const auto cb = dft_codebook(n_a, os);
        if (cb.size() > 4) continue;
        for (int n_rf = 1; n_rf <= 3; ++n_rf) {
          const auto a = steering_vector(ArrayGeometry::ula(n_a * n_rf), az, 0.0);
          const auto got = select_multi_beam(cb, n_rf, a, p);
          const auto want = brute_force(cb, n_rf, a, p);
          ++instances;
          const bool same = got.beams.indices == want.idx &&
                            std::abs(got.objective - want.value) <= 1e-12 * std::max(1.0, want.value) &&
                            got.iteration_count == search_size(cb.size(), n_rf);
          mismatches += !same;
        }
      }
    }
  }
  const Setup setup(base("single_ue"));
  const auto& sb = setup.beams(Method::Proposed, 2);
  const std::uint64_t per_slot = sb.iterations_per_slot;
  const std::uint64_t total = per_slot * sb.beams.size();
  const bool counts = per_slot == 65536 && total == 8ULL * 65536;
  verdict(5, mismatches == 0 && counts,
          fmt("%d instances, %d mismatches vs brute force; iterations per slot %llu (16^4), per frame %llu (8*16^4)",
              instances, mismatches, static_cast<unsigned long long>(per_slot),
              static_cast<unsigned long long>(total)));
}

void criterion_6() {
  const Stopwatch sw;
  auto s = base("single_ue");
  s.trials = 2000;
  s.seed = 6;
  s.adc_bits = {2};
  s.snr_db = {0.0};
  const auto r = run_sqnr_experiment(s);
  const SqnrSummary *p = nullptr, *c = nullptr;
  for (const auto& x : r.summary) (x.method == Method::Proposed ? p : c) = &x;
  const double secs = sw.seconds();
  const bool ok = p && c && p->db.ci_lo > c->db.ci_hi && secs < 600.0;
  verdict(6, ok,
          fmt("mean SQNR proposed %.2f dB [%.2f, %.2f] vs single-stream %.2f dB [%.2f, %.2f], %zu trials, %.0f s",
              p->db.mean, p->db.ci_lo, p->db.ci_hi, c->db.mean, c->db.ci_lo, c->db.ci_hi, p->trials, secs));
}

void criterion_7() {
  const Stopwatch sw;
  auto s = base("single_ue");
  s.trials = 1000;
  s.seed = 7;
  s.adc_bits = {2, std::nullopt};
  const auto r = run_timing_experiment(s);
  bool ok = true;
  std::string detail;
  for (double snr : s.snr_db) {
    const auto* p = find(r.summary, Method::Proposed, 2, snr);
    const auto* c = find(r.summary, Method::SingleStream, 2, snr);
    const auto* ci = find(r.summary, Method::SingleStream, std::nullopt, snr);
    ok = ok && p->nmse <= c->nmse;
    if (snr == -5.0 || snr == 0.0) ok = ok && p->nmse <= 3.0 * ci->nmse;
    detail += fmt(" %g dB: %.3g vs %.3g (inf %.3g);", snr, p->nmse, c->nmse, ci->nmse);
  }
  verdict(7, ok, "flat channel, 2-bit NMSE proposed vs single-stream," + detail + fmt(" %.0f s", sw.seconds()));

  auto m = s;
  m.trials = 500;
  m.channel.regime = ChannelRegime::Clustered;
  const auto rc = run_timing_experiment(m);
  std::string cl;
  for (double snr : m.snr_db) {
    const auto* p = find(rc.summary, Method::Proposed, 2, snr);
    const auto* c = find(rc.summary, Method::SingleStream, 2, snr);
    cl += fmt(" %g dB: %.3g vs %.3g;", snr, p->nmse, c->nmse);
  }
  info("clustered channel, 500 trials, 2-bit NMSE proposed vs single-stream:" + cl);
}

void criterion_8() {
  const Stopwatch sw;
  auto s = base("multi_cell");
  s.trials = 100;
  s.layout.ues_per_cell = 10;
  s.seed = 8;
  s.adc_bits = {2};
  s.snr_db = {-10.0};
  s.channel.regime = ChannelRegime::Clustered;
  const auto r = run_multicell_experiment(s);
  const auto* p = find(r.detection, Method::Proposed);
  const auto* c = find(r.detection, Method::SingleStream);
  verdict(8, p->success_rate > 0.7 && p->trials >= 1000,
          fmt("clustered 7-cell, 2-bit, -10 dB: proposed success %.3f [%.3f, %.3f] (> 0.7), single-stream %.3f, "
              "%zu drops, %.0f s",
              p->success_rate, p->wilson_lo, p->wilson_hi, c->success_rate, p->trials, sw.seconds()));

  auto f = s;
  f.trials = 50;
  f.channel.regime = ChannelRegime::Flat;
  const auto rf = run_multicell_experiment(f);
  const auto* pf = find(rf.detection, Method::Proposed);
  info(fmt("flat 7-cell, 500 drops: proposed success %.3f [%.3f, %.3f]", pf->success_rate, pf->wilson_lo,
           pf->wilson_hi));
}

void criterion_9() {
  auto s = base("single_ue");
  s.trials = 1000;
  s.seed = 9;
  s.adc_bits = {2};
  s.snr_db = {-10.0};
  s.cfo = {-1.0, 0.0, 1.0};
  const auto r = run_cfo_experiment(s);
  const auto* p0 = find(r.summary, Method::Proposed, 2, -10.0, 0.0);
  const auto* pm = find(r.summary, Method::Proposed, 2, -10.0, -1.0);
  const auto* pp = find(r.summary, Method::Proposed, 2, -10.0, 1.0);
  const auto* c0 = find(r.summary, Method::SingleStream, 2, -10.0, 0.0);
  const bool ok = pm->nmse <= 10.0 * p0->nmse && pp->nmse <= 10.0 * p0->nmse;
  verdict(9, ok,
          fmt("proposed NMSE at eps -1 / 0 / +1: %.3g / %.3g / %.3g (within 10x of eps 0); success %.3f / %.3f / %.3f",
              pm->nmse, p0->nmse, pp->nmse, pm->success_rate, p0->success_rate, pp->success_rate));

  // where the estimates land under a one-subcarrier offset
  std::map<long long, int> offsets;
  for (const auto& rec : r.records)
    if (rec.method == Method::Proposed && rec.cfo == 1.0) ++offsets[rec.outcome.nu_hat - rec.outcome.nu_true];
  const auto mode = std::max_element(offsets.begin(), offsets.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  const double predicted = std::fmod(34.0 * 512.0 / 63.0, 512.0);
  info(fmt("eps +1: most frequent timing offset %lld samples (%d of %d); cyclic-shift prediction 512 - %.1f = %.1f",
           mode->first, mode->second, s.trials, predicted, 512.0 - predicted));
  info(fmt("conventional method at eps 0: NMSE %.3g; proposed at |eps| = 1 is within 10x of it: %s", c0->nmse,
           (pm->nmse <= 10.0 * c0->nmse && pp->nmse <= 10.0 * c0->nmse) ? "yes" : "no"));
}

void criterion_10() {
  const fs::path root = fs::temp_directory_path() / ("mmsync_acceptance_" + std::to_string(::getpid()));
  struct Case {
    std::string experiment;
    Scenario s;
  };
  std::vector<Case> cases;
  {
    auto s = base("single_ue");
    s.trials = 20;
    s.adc_bits = {2};
    cases.push_back({"timing", s});
    s.snr_db = {0.0};
    cases.push_back({"sqnr", s});
    s.cfo = {-0.5, 0.5};
    s.snr_db = {-10.0};
    cases.push_back({"cfo", s});
    auto m = base("multi_cell");
    m.trials = 2;
    m.layout.ues_per_cell = 3;
    m.adc_bits = {2};
    m.snr_db = {-10.0};
    m.channel.regime = ChannelRegime::Clustered;
    cases.push_back({"multicell", m});
    cases.push_back({"complexity", base("single_ue")});
  }
  bool ok = true;
  int files = 0;
  for (const auto& c : cases) {
    auto s1 = c.s;
    s1.workers = 1;
    auto s2 = c.s;
    s2.workers = 3;
    const auto a = run_experiment(s1, c.experiment, (root / (c.experiment + "_a")).string());
    const auto b = run_experiment(s2, c.experiment, (root / (c.experiment + "_b")).string());
    for (const auto& f : a.files) {
      const fs::path pa(f);
      if (pa.extension() != ".csv") continue;
      const fs::path pb = root / (c.experiment + "_b") / pa.filename();
      ++files;
      if (read_file(pa) != read_file(pb)) {
        ok = false;
        info("differs: " + pa.filename().string());
      }
    }
  }
  fs::remove_all(root);
  verdict(10, ok && files > 0, fmt("%d CSV files byte-identical across reruns (1 vs 3 workers)", files));
}

}  // namespace

int main() {
  std::printf("mmsync acceptance, version %s\n", version_string());
  const Stopwatch total;
  const std::vector<std::function<void()>> all = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                                   criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  for (const auto& c : all) {
    try {
      c();
    } catch (const std::exception& e) {
      ++g_failures;
      std::printf("  error %s\n", e.what());
    }
  }
  std::printf("%d of %zu criteria failed, %.0f s\n", g_failures, all.size(), total.seconds());
  return g_failures == 0 ? 0 : 1;
}
