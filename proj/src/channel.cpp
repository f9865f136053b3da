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
#include "mmsync/channel.hpp"

#include <algorithm>
#include <cmath>

namespace mmsync {

ArrayGeometry ArrayGeometry::ula(int n) { return {ArrayKind::Ula, n, 1, 0.5}; }
ArrayGeometry ArrayGeometry::upa(int n_x, int n_y) { return {ArrayKind::Upa, n_x, n_y, 0.5}; }

void ArrayGeometry::validate() const {
  if (n_x < 1 || n_y < 1) throw DomainError("array dimensions must be positive");
  if (kind == ArrayKind::Ula && n_y != 1) throw DomainError("ULA must have n_y == 1");
  if (!(spacing > 0.0)) throw DomainError("element spacing must be positive");
}

CVec steering_vector(const ArrayGeometry& geom, double azimuth, double elevation) {
  geom.validate();
  constexpr double kHalf = kPi / 2 + 1e-12;
  if (std::fabs(azimuth) > kHalf || std::fabs(elevation) > kHalf)
    throw DomainError("steering angle outside [-pi/2, pi/2]");
  const double ux = std::sin(azimuth) * std::cos(elevation);
  const double uy = geom.kind == ArrayKind::Upa ? std::sin(elevation) : 0.0;
  const double k = -2.0 * kPi * geom.spacing;
  CVec a(static_cast<std::size_t>(geom.n_elements()));
  for (int n = 0; n < geom.n_y; ++n)
    for (int m = 0; m < geom.n_x; ++m) a[m + n * geom.n_x] = std::polar(1.0, k * (m * ux + n * uy));
  return a;
}

double PulseShape::operator()(double t) const {
  const double b = rolloff;
  const double sinc = std::fabs(t) < 1e-12 ? 1.0 : std::sin(kPi * t) / (kPi * t);
  if (b > 0.0 && std::fabs(std::fabs(t) - 0.5 / b) < 1e-9) {
    const double x = 0.5 / b;
    return kPi / 4.0 * std::sin(kPi * x) / (kPi * x);
  }
  const double den = 1.0 - 4.0 * b * b * t * t;
  return sinc * std::cos(kPi * b * t) / den;
}

CMatrix BeamSpaceChannel::frequency_response(int k, int n) const {
  if (n < 1) throw DomainError("DFT size must be positive");
  CMatrix h(static_cast<std::size_t>(n_rx), static_cast<std::size_t>(n_tx));
  for (int l = 0; l < tap_count(); ++l) {
    const Complex w = std::polar(1.0, -2.0 * kPi * static_cast<double>((static_cast<long long>(l) * k) % n) / n);
    for (std::size_t i = 0; i < h.data.size(); ++i) h.data[i] += taps[l].data[i] * w;
  }
  return h;
}

BeamSpaceChannel build_channel(const PathSet& paths, const ArrayGeometry& tx, const ArrayGeometry& rx,
                               int tap_count, const PulseShape& pulse, double symbol_rate, int cp_length) {
  if (tap_count < 1) throw DomainError("tap_count must be >= 1");
  if (!(symbol_rate > 0.0)) throw DomainError("symbol_rate must be positive");
  tx.validate();
  rx.validate();
  BeamSpaceChannel ch;
  ch.n_tx = tx.n_elements();
  ch.n_rx = rx.n_elements();
  ch.taps.assign(static_cast<std::size_t>(tap_count), CMatrix(ch.n_rx, ch.n_tx));
  for (const auto& p : paths) {
    if (!(p.delay_s >= 0.0)) throw DomainError("path delay must be nonnegative");
    const double delay = p.delay_s * symbol_rate;
    if (cp_length >= 0 && delay > cp_length) ch.exceeds_cp = true;
    const CVec at = steering_vector(tx, p.aod_azimuth, p.aod_elevation);
    const CVec ar = steering_vector(rx, p.aoa_azimuth, 0.0);
    for (int l = 0; l < tap_count; ++l) {
      const Complex g = p.gain * pulse(l - delay);
      if (g == Complex{}) continue;
      auto& h = ch.taps[l];
      for (int m = 0; m < ch.n_rx; ++m) {
        const Complex gm = g * ar[m];
        for (int i = 0; i < ch.n_tx; ++i) h(m, i) += gm * std::conj(at[i]);
      }
    }
  }
  return ch;
}

CMatrix effective_taps(const BeamSpaceChannel& ch, std::span<const Complex> f) {
  if (static_cast<int>(f.size()) != ch.n_tx) throw DomainError("transmit vector length mismatch");
  CMatrix out(static_cast<std::size_t>(ch.n_rx), static_cast<std::size_t>(ch.tap_count()));
  for (int l = 0; l < ch.tap_count(); ++l) {
    const CVec y = multiply(ch.taps[l], f);
    for (int m = 0; m < ch.n_rx; ++m) out(m, l) = y[m];
  }
  return out;
}

CMatrix burst_response(const CMatrix& eff_taps, std::span<const Complex> symbol) {
  const std::size_t n = symbol.size();
  if (n == 0) throw DomainError("empty symbol");
  CMatrix out(eff_taps.rows, n);
  for (std::size_t m = 0; m < eff_taps.rows; ++m) {
    for (std::size_t l = 0; l < eff_taps.cols; ++l) {
      const Complex h = eff_taps(m, l);
      if (h == Complex{}) continue;
      for (std::size_t k = 0; k < n; ++k) out(m, k) += h * symbol[(k + n - l % n) % n];
    }
  }
  return out;
}

void add_burst(CMatrix& window, const CMatrix& burst, long long t, double cfo, Complex scale) {
  if (window.rows != burst.rows) throw DomainError("antenna count mismatch");
  const long long n = static_cast<long long>(burst.cols);
  const long long len = static_cast<long long>(window.cols);
  for (long long k = 0; k < n; ++k) {
    const long long idx = t + k;
    if (idx < 0 || idx >= len) continue;
    const Complex rot = cfo == 0.0 ? scale : scale * std::polar(1.0, 2.0 * kPi * cfo * static_cast<double>(k) / n);
    for (std::size_t m = 0; m < window.rows; ++m) window(m, idx) += rot * burst(m, k);
  }
}

void fill_unit_noise(CMatrix& out, Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  for (auto& v : out.data) {
    const double re = nd(rng);
    v = Complex(re, nd(rng));
  }
}

CMatrix propagate(const BeamSpaceChannel& ch, std::span<const Complex> symbol, std::span<const Complex> f,
                  double noise_var, double cfo, long long t, int window_length, Rng& rng) {
  const long long n = static_cast<long long>(symbol.size());
  if (!(noise_var >= 0.0)) throw DomainError("noise_var must be nonnegative");
  if (t < 0 || t + n > window_length) throw DomainError("burst start outside the window");
  CMatrix win(static_cast<std::size_t>(ch.n_rx), static_cast<std::size_t>(window_length));
  fill_unit_noise(win, rng);
  const double s = std::sqrt(noise_var);
  for (auto& v : win.data) v *= s;
  add_burst(win, burst_response(effective_taps(ch, f), symbol), t, cfo);
  return win;
}

PathSet flat_paths(double azimuth, double elevation, double aoa, Complex gain) {
  Path p;
  p.gain = gain;
  p.aod_azimuth = azimuth;
  p.aod_elevation = elevation;
  p.aoa_azimuth = aoa;
  return {p};
}

PathSet clustered_paths(const ClusterParams& c, double azimuth, double elevation, Rng& rng) {
  if (c.clusters < 1 || c.paths_per_cluster < 1) throw DomainError("cluster counts must be >= 1");
  const double lim = deg_to_rad(89.9);
  auto clamp = [&](double a) { return std::clamp(a, -lim, lim); };
  std::normal_distribution<double> spread(0.0, deg_to_rad(c.angle_spread_deg));
  std::normal_distribution<double> shadow(0.0, 3.0);
  std::exponential_distribution<double> cluster_delay(1.0 / std::max(c.delay_spread_ns, 1e-9));
  std::exponential_distribution<double> intra_delay(1.0 / std::max(c.intra_cluster_delay_ns, 1e-9));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> cn(0.0, std::sqrt(0.5));

  if (c.min_cluster_gap_ns < 0.0) throw DomainError("min_cluster_gap_ns must be >= 0");
  PathSet paths;
  double total = 0.0;
  double prev_ns = 0.0;
  for (int k = 0; k < c.clusters; ++k) {
    double tau_ns = 0.0, power = 1.0, az = azimuth, el = elevation;
    if (k > 0) {
      tau_ns = prev_ns + c.min_cluster_gap_ns + cluster_delay(rng);
      prev_ns = tau_ns;
      power = std::exp(-tau_ns / std::max(c.delay_spread_ns, 1e-9)) * db_to_linear(shadow(rng));
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      az = azimuth + sign * k * deg_to_rad(c.cluster_offset_deg);
      el = elevation + spread(rng);
    }
    const double aoa = (unit(rng) - 0.5) * kPi;
    for (int r = 0; r < c.paths_per_cluster; ++r) {
      Path p;
      const double re = cn(rng);
      p.gain = std::sqrt(power / c.paths_per_cluster) * Complex(re, cn(rng));
      p.aod_azimuth = clamp(az + spread(rng));
      p.aod_elevation = clamp(el + spread(rng));
      p.aoa_azimuth = clamp(aoa + spread(rng));
      p.delay_s = (tau_ns + (r == 0 ? 0.0 : intra_delay(rng))) * 1e-9;
      total += std::norm(p.gain);
      paths.push_back(p);
    }
  }
  if (total > 0.0)
    for (auto& p : paths) p.gain /= std::sqrt(total);
  return paths;
}

double path_loss_db(const PathLossModel& m, double distance_m) {
  if (!(distance_m > 0.0)) throw DomainError("distance must be positive");
  return m.pl0_db + 10.0 * m.exponent * std::log10(distance_m / m.d0_m);
}

CellLayout CellLayout::single_cell(double radius_m, int root) {
  CellLayout l;
  l.cells = {CellSite{0.0, 0.0, root}};
  l.radius_m = radius_m;
  return l;
}

CellLayout CellLayout::hex7(double isd_m, std::array<int, 3> roots) {
  CellLayout l;
  l.hexagonal = true;
  l.isd_m = isd_m;
  l.cells.push_back(CellSite{0.0, 0.0, roots[0]});
  for (int k = 0; k < 6; ++k) {
    const double a = deg_to_rad(30.0 + 60.0 * k);
    l.cells.push_back(CellSite{isd_m * std::cos(a), isd_m * std::sin(a), roots[1 + k % 2]});
  }
  return l;
}

double CellLayout::edge_distance() const { return hexagonal ? isd_m / std::sqrt(3.0) : radius_m; }

namespace {

double wrap_pi(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

bool inside_hexagon(double x, double y, double isd) {
  for (int k = 0; k < 3; ++k) {
    const double a = deg_to_rad(30.0 + 60.0 * k);
    if (std::fabs(x * std::cos(a) + y * std::sin(a)) > 0.5 * isd) return false;
  }
  return true;
}

}  // namespace

UePlacement locate(const CellLayout& layout, std::size_t cell, double x, double y, double shadowing_db) {
  if (cell >= layout.cells.size()) throw DomainError("cell index out of range");
  const auto& site = layout.cells[cell];
  const double dx = x - site.x, dy = y - site.y;
  const double d2 = std::hypot(dx, dy);
  const double dh = layout.bs_height_m - layout.ue_height_m;
  double az = std::atan2(dy, dx);
  if (cell != 0) {
    // Sectors at 0, 120, 240 degrees; take the one facing the UE.
    double best = wrap_pi(az);
    for (int s = 1; s < 3; ++s) {
      const double rel = wrap_pi(az - deg_to_rad(120.0 * s));
      if (std::fabs(rel) < std::fabs(best)) best = rel;
    }
    az = best;
  }
  UePlacement u;
  u.x = x;
  u.y = y;
  u.distance_m = std::hypot(d2, dh);
  u.azimuth = az;
  u.elevation = -std::atan2(dh, d2);
  u.shadowing_db = shadowing_db;
  u.path_loss_db = path_loss_db(layout.path_loss, u.distance_m) + shadowing_db;
  return u;
}

std::vector<UePlacement> drop_users(const CellLayout& layout, int n_ue, std::uint64_t seed) {
  Rng rng(seed);
  return drop_users(layout, n_ue, rng);
}

std::vector<UePlacement> drop_users(const CellLayout& layout, int n_ue, Rng& rng) {
  if (n_ue < 1) throw DomainError("n_ue must be >= 1");
  if (layout.cells.empty()) throw DomainError("layout has no cells");
  if (layout.sector_hi_deg < layout.sector_lo_deg) throw DomainError("empty sector");
  const double r_max = layout.edge_distance();
  const double r_min = layout.min_distance_m;
  if (r_min >= r_max) throw DomainError("minimum distance exceeds the cell size");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> shadow(0.0, layout.path_loss.shadowing_db);
  const auto& c0 = layout.cells[0];
  std::vector<UePlacement> out;
  out.reserve(static_cast<std::size_t>(n_ue));
  while (static_cast<int>(out.size()) < n_ue) {
    const double r = std::sqrt(unit(rng) * (r_max * r_max - r_min * r_min) + r_min * r_min);
    const double a = deg_to_rad(layout.sector_lo_deg + unit(rng) * (layout.sector_hi_deg - layout.sector_lo_deg));
    const double x = r * std::cos(a), y = r * std::sin(a);
    if (layout.hexagonal && !inside_hexagon(x, y, layout.isd_m)) continue;
    const double sh = layout.path_loss.shadowing_db > 0.0 ? shadow(rng) : 0.0;
    out.push_back(locate(layout, 0, c0.x + x, c0.y + y, sh));
  }
  return out;
}

}  // namespace mmsync
