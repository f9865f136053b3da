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
#include "mmsync/quantization.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>

namespace mmsync {
namespace {

constexpr int kMaxBits = 16;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

double pdf(double x) { return std::isinf(x) ? 0.0 : kInvSqrt2Pi * std::exp(-0.5 * x * x); }
double cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }
double x_pdf(double x) { return std::isinf(x) ? 0.0 : x * pdf(x); }

void check_bits(int bits) {
  if (bits < 1 || bits > kMaxBits) throw DomainError("bits must be in [1, 16]");
}

// E[(X - y)^2; a < X < b] for X ~ N(0,1).
double cell_mse(double a, double b, double y) {
  const double m0 = cdf(b) - cdf(a);
  const double m1 = pdf(a) - pdf(b);
  const double m2 = m0 + x_pdf(a) - x_pdf(b);
  return m2 - 2.0 * y * m1 + y * y * m0;
}

double inverse_cdf(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double lloyd_max(int bits) {
  const int n = 1 << bits;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> y(n), t(n + 1);
  for (int i = 0; i < n; ++i) y[i] = std::sqrt(3.0) * inverse_cdf((i + 0.5) / n);
  t[0] = -inf;
  t[n] = inf;
  const int max_iter = bits <= 8 ? 20000 : 400;
  long double prev = 2.0L;
  long double mse = 1.0L;
  for (int it = 0; it < max_iter; ++it) {
    for (int i = 1; i < n; ++i) t[i] = 0.5 * (y[i - 1] + y[i]);
    long double energy = 0.0L;
    for (int i = 0; i < n; ++i) {
      const double p = cdf(t[i + 1]) - cdf(t[i]);
      if (p <= 0.0) continue;
      y[i] = (pdf(t[i]) - pdf(t[i + 1])) / p;
      energy += static_cast<long double>(p) * y[i] * y[i];
    }
    mse = 1.0L - energy;
    if (std::fabs(static_cast<double>((prev - mse) / mse)) < 1e-10) break;
    prev = mse;
  }
  return static_cast<double>(mse);
}

struct Tables {
  std::mutex mu;
  std::array<double, kMaxBits + 1> xi{};
  std::array<double, kMaxBits + 1> clip{};
};

Tables& tables() {
  static Tables t;
  return t;
}

inline double quantize_rail(double x, double step, double half) {
  double idx = std::floor(x / step);
  if (idx < -half) idx = -half;
  if (idx > half - 1.0) idx = half - 1.0;
  return (idx + 0.5) * step;
}

}  // namespace

AdcModel AdcModel::infinite() { return AdcModel{}; }

AdcModel AdcModel::with_bits(int bits) { return with_bits(bits, optimal_clip(bits)); }

AdcModel AdcModel::with_bits(int bits, double clip_scale) {
  check_bits(bits);
  if (!(clip_scale > 0.0)) throw DomainError("clip_scale must be positive");
  AdcModel a;
  a.bits = bits;
  a.clip_scale = clip_scale;
  a.step = 2.0 * clip_scale / static_cast<double>(1 << bits);
  return a;
}

int AdcModel::levels() const {
  if (is_infinite()) throw DomainError("infinite-resolution ADC has no finite alphabet");
  return 1 << *bits;
}

std::string AdcModel::label() const { return is_infinite() ? "inf" : std::to_string(*bits); }

double rail_rms(std::span<const Complex> samples) {
  if (samples.empty()) return 0.0;
  return std::sqrt(energy(samples) / (2.0 * static_cast<double>(samples.size())));
}

void apply_inplace(const AdcModel& adc, std::span<Complex> samples, double agc_rms, bool normalized) {
  if (!(agc_rms > 0.0) || !std::isfinite(agc_rms)) throw DomainError("agc_rms must be positive and finite");
  for (const auto& v : samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("non-finite sample");
  const double out_scale = normalized ? kInvSqrt2 : agc_rms;
  const double inv = 1.0 / agc_rms;
  if (adc.is_infinite()) return;
  const double half = 0.5 * adc.levels();
  for (auto& v : samples) {
    const double re = quantize_rail(v.real() * inv, adc.step, half);
    const double im = quantize_rail(v.imag() * inv, adc.step, half);
    v = Complex(re * out_scale, im * out_scale);
  }
}

CVec apply(const AdcModel& adc, std::span<const Complex> samples, double agc_rms) {
  CVec out(samples.begin(), samples.end());
  apply_inplace(adc, out, agc_rms, false);
  return out;
}

CVec apply_normalized(const AdcModel& adc, std::span<const Complex> samples, double agc_rms) {
  CVec out(samples.begin(), samples.end());
  apply_inplace(adc, out, agc_rms, true);
  return out;
}

double uniform_mse(int bits, double clip) {
  check_bits(bits);
  if (!(clip > 0.0)) throw DomainError("clip must be positive");
  const int n = 1 << bits;
  const double step = 2.0 * clip / n;
  const double inf = std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = i == 0 ? -inf : -clip + i * step;
    const double b = i == n - 1 ? inf : -clip + (i + 1) * step;
    acc += cell_mse(a, b, -clip + (i + 0.5) * step);
  }
  return acc;
}

double optimal_clip(int bits) {
  check_bits(bits);
  auto& tb = tables();
  std::lock_guard lock(tb.mu);
  if (tb.clip[bits] > 0.0) return tb.clip[bits];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.05, b = 10.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = uniform_mse(bits, c), fd = uniform_mse(bits, d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = uniform_mse(bits, c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = uniform_mse(bits, d);
    }
  }
  tb.clip[bits] = 0.5 * (a + b);
  return tb.clip[bits];
}

double xi_for_bits(int bits) {
  check_bits(bits);
  auto& tb = tables();
  std::lock_guard lock(tb.mu);
  if (tb.xi[bits] <= 0.0) tb.xi[bits] = lloyd_max(bits);
  return tb.xi[bits];
}

double xi_for(const AdcModel& adc) { return adc.is_infinite() ? 0.0 : xi_for_bits(*adc.bits); }

double bussgang_eta(double total_power, double xi) {
  if (!(xi >= 0.0) || xi >= 1.0) throw DomainError("xi must be in [0, 1)");
  if (!(total_power > 0.0)) throw DomainError("unquantized power must be positive");
  return (1.0 - xi) / std::sqrt(total_power);
}

BussgangStats bussgang_decompose(std::span<const double> unquantized_power, double noise_var, double xi) {
  if (!(xi >= 0.0) || xi >= 1.0) throw DomainError("xi must be in [0, 1)");
  if (!(noise_var >= 0.0)) throw DomainError("noise_var must be nonnegative");
  BussgangStats s;
  s.xi = xi;
  s.eta.reserve(unquantized_power.size());
  s.noise_cov_diag.reserve(unquantized_power.size());
  for (double p : unquantized_power) {
    if (!(p >= 0.0)) throw DomainError("powers must be nonnegative");
    const double v = p + noise_var;
    const double eta = bussgang_eta(v, xi);
    s.eta.push_back(eta);
    s.noise_cov_diag.push_back(eta * (1.0 - eta) * v);
  }
  return s;
}

}  // namespace mmsync
