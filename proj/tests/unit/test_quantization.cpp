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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "mmsync/quantization.hpp"

using namespace mmsync;

namespace {

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), 1e-13, 50);
}

// Lloyd-Max for a unit Gaussian by fixed-point iteration with quadrature
// centroids. Returns the MSE.
double lloyd_max_oracle(int bits) {
  const int levels = 1 << bits;
  std::vector<double> y(levels);
  for (int i = 0; i < levels; ++i) y[i] = -2.0 + 4.0 * (i + 0.5) / levels;
  const double lim = 12.0;
  for (int it = 0; it < 3000; ++it) {
    std::vector<double> t(levels + 1);
    t[0] = -lim;
    t[levels] = lim;
    for (int i = 1; i < levels; ++i) t[i] = 0.5 * (y[i - 1] + y[i]);
    double shift = 0.0;
    for (int i = 0; i < levels; ++i) {
      const double p = integrate(phi, t[i], t[i + 1]);
      const double m = integrate([](double x) { return x * phi(x); }, t[i], t[i + 1]);
      const double ny = m / p;
      shift = std::max(shift, std::abs(ny - y[i]));
      y[i] = ny;
    }
    if (shift < 1e-12) break;
  }
  std::vector<double> t(levels + 1);
  t[0] = -lim;
  t[levels] = lim;
  for (int i = 1; i < levels; ++i) t[i] = 0.5 * (y[i - 1] + y[i]);
  double mse = 0.0;
  for (int i = 0; i < levels; ++i) {
    const double yi = y[i];
    mse += integrate([yi](double x) { return (x - yi) * (x - yi) * phi(x); }, t[i], t[i + 1]);
  }
  return mse;
}

CVec gaussian(std::size_t n, std::uint64_t seed, double power = 1.0) {
  Rng rng(seed);
  std::normal_distribution<double> nd(0.0, std::sqrt(power / 2.0));
  CVec x(n);
  for (auto& v : x) v = {nd(rng), nd(rng)};
  return x;
}

}  // namespace

TEST_CASE("xi matches the sign quantizer closed form at one bit") {
  CHECK(std::abs(xi_for_bits(1) - (1.0 - 2.0 / kPi)) < 1e-9);
}

TEST_CASE("xi matches an independent Lloyd-Max oracle") {
  for (int b = 1; b <= 4; ++b) {
    CAPTURE(b);
    CHECK(std::abs(xi_for_bits(b) - lloyd_max_oracle(b)) < 1e-4);
  }
  CHECK(std::abs(xi_for_bits(4) - 0.0095) < 1e-4);
}

TEST_CASE("xi decreases monotonically with bits") {
  for (int b = 1; b < 16; ++b) {
    CAPTURE(b);
    CHECK(xi_for_bits(b + 1) < xi_for_bits(b));
  }
  CHECK(xi_for_bits(16) > 0.0);
  CHECK_THROWS_AS(xi_for_bits(0), DomainError);
  CHECK_THROWS_AS(xi_for_bits(17), DomainError);
  CHECK(xi_for(AdcModel::infinite()) == 0.0);
}

TEST_CASE("infinite resolution is the identity") {
  const CVec x = gaussian(1000, 3);
  const CVec y = apply(AdcModel::infinite(), x, 0.37);
  const CVec z = apply_normalized(AdcModel::infinite(), x, 0.37);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(y[i] == x[i]);
    CHECK(z[i] == x[i]);
  }
}

TEST_CASE("one bit is sign quantization") {
  const auto adc = AdcModel::with_bits(1);
  const double agc = 2.5;
  const CVec x = gaussian(2000, 4, 6.0);
  const CVec y = apply(adc, x, agc);
  const double half = adc.step / 2.0 * agc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(y[i].real() - std::copysign(half, x[i].real())) < 1e-12);
    CHECK(std::abs(y[i].imag() - std::copysign(half, x[i].imag())) < 1e-12);
  }
}

TEST_CASE("output alphabet has 2^b symmetric levels") {
  for (int b : {1, 2, 3}) {
    const auto adc = AdcModel::with_bits(b);
    CHECK(adc.levels() == (1 << b));
    const CVec y = apply(adc, gaussian(20000, 5, 4.0), 1.0);
    std::set<double> rails;
    for (const auto& v : y) {
      rails.insert(v.real());
      rails.insert(v.imag());
    }
    CHECK(rails.size() == static_cast<std::size_t>(1 << b));
    CHECK(std::abs(*rails.begin() + *rails.rbegin()) < 1e-12);
  }
}

TEST_CASE("more bits give less distortion") {
  const CVec x = gaussian(1'000'000, 6);
  const double agc = rail_rms(x);
  auto mse = [&](int b) {
    const CVec y = apply(AdcModel::with_bits(b), x, agc);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::norm(y[i] - x[i]);
    return acc / static_cast<double>(x.size());
  };
  CHECK(mse(4) < mse(2));
}

TEST_CASE("quantization is deterministic and idempotent") {
  const auto adc = AdcModel::with_bits(3);
  const CVec x = gaussian(5000, 7);
  const CVec a = apply(adc, x, 0.8);
  const CVec b = apply(adc, x, 0.8);
  const CVec c = apply(adc, a, 0.8);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(std::abs(a[i] - c[i]) < 1e-12);
  }
}

TEST_CASE("apply argument checks") {
  const CVec x = {Complex(1.0, 0.0)};
  CHECK_THROWS_AS(apply(AdcModel::with_bits(2), x, 0.0), DomainError);
  const CVec bad = {Complex(std::numeric_limits<double>::quiet_NaN(), 0.0)};
  CHECK_THROWS_AS(apply(AdcModel::with_bits(2), bad, 1.0), DomainError);
  CHECK_THROWS_AS(AdcModel::with_bits(0), DomainError);
}

TEST_CASE("uniform clip is a local MSE minimum and above Lloyd-Max") {
  for (int b = 1; b <= 4; ++b) {
    const double c = optimal_clip(b);
    CHECK(uniform_mse(b, c) <= uniform_mse(b, c * 1.02));
    CHECK(uniform_mse(b, c) <= uniform_mse(b, c * 0.98));
    CHECK(uniform_mse(b, c) >= xi_for_bits(b) - 1e-12);
  }
}

TEST_CASE("bussgang decomposition by substitution") {
  const double xi = 0.1175;
  const std::vector<double> p = {0.0};
  const auto st = bussgang_decompose(p, 1.0, xi);
  CHECK(std::abs(st.eta[0] - 0.8825) < 1e-12);
  CHECK(std::abs(st.noise_cov_diag[0] - 0.8825 * 0.1175) < 1e-12);

  const auto ideal = bussgang_decompose(p, 1.0, 0.0);
  CHECK(ideal.eta[0] == 1.0);
  CHECK(ideal.noise_cov_diag[0] == 0.0);

  const std::vector<double> scaled = {3.0};
  const auto s2 = bussgang_decompose(scaled, 1.0, 0.0);
  CHECK(std::abs(s2.eta[0] - 1.0 / std::sqrt(4.0)) < 1e-12);
  CHECK_THROWS_AS(bussgang_decompose(p, 1.0, 1.0), DomainError);
}

TEST_CASE("empirical bussgang gain on the 2-bit example") {
  // E[q y*] / E|y|^2 on the normalized path
  const CVec y = gaussian(1'000'000, 8);
  const CVec q = apply_normalized(AdcModel::with_bits(2), y, std::sqrt(0.5));
  Complex num{};
  double den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += q[i] * std::conj(y[i]);
    den += std::norm(y[i]);
  }
  const double eta = num.real() / den;
  CHECK(std::abs(eta / bussgang_eta(1.0, xi_for_bits(2)) - 1.0) < 0.02);
}
