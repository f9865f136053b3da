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

#include <algorithm>
#include <cmath>

#include "mmsync/beamforming.hpp"

using namespace mmsync;

TEST_CASE("dft codebook shape and power") {
  const auto cb = dft_codebook(8, 2);
  CHECK(cb.size() == 16);
  for (std::size_t q = 0; q < cb.size(); ++q)
    for (int a = 0; a < 8; ++a) {
      CHECK(std::abs(std::abs(cb.codewords[q][a]) - 1.0 / std::sqrt(8.0)) < 1e-15);
      CHECK(std::abs(cb.codewords[q][a] - std::polar(1.0 / std::sqrt(8.0), -2.0 * kPi * a * q / 16.0)) < 1e-12);
    }
  const auto ortho = dft_codebook(8, 1);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const double v = std::abs(inner(ortho.codewords[i], ortho.codewords[j]));
      CHECK(std::abs(v - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("subarray layout tiles rows") {
  const auto s = subarray_layout(ArrayGeometry::upa(8, 4), 4);
  CHECK(s.n_a == 8);
  CHECK(s.sub.n_elements() == 8);
  CHECK(array_codebook(s.sub, 2).size() == 16);
  CHECK(array_codebook(ArrayGeometry::upa(8, 4), 2).size() == 128);
  CHECK_THROWS_AS(subarray_layout(ArrayGeometry::upa(8, 4), 3), DomainError);
}

TEST_CASE("composite gain reductions") {
  const auto cb = dft_codebook(4, 2);
  const auto a = steering_vector(ArrayGeometry::ula(4), 0.37, 0.0);
  const BeamSet one{{3}};
  CHECK(std::abs(composite_beam_gain(cb, one, a) - inner(a, cb.codewords[3])) < 1e-15);

  // boresight codeword 0 on every block against boresight steering
  const auto bore = steering_vector(ArrayGeometry::ula(16), 0.0, 0.0);
  const BeamSet all{{0, 0, 0, 0}};
  CHECK(std::abs(std::abs(composite_beam_gain(cb, all, bore)) - 4.0 * 2.0) < 1e-12);
  CHECK_THROWS_AS(composite_beam_gain(cb, all, a), DomainError);
}

TEST_CASE("composite pattern of the 8-element illustration matches brute force") {
  // ULA of 8, four subarrays of 2, oversampled DFT of 4 codewords
  const auto cb = dft_codebook(2, 2);
  const auto geom = ArrayGeometry::ula(8);
  const BeamSet beams{{0, 1, 3, 2}};
  for (int i = 0; i <= 360; ++i) {
    const double az = -kPi / 2 + kPi * i / 360.0;
    const auto a = steering_vector(geom, az, 0.0);
    Complex acc{};
    for (int j = 0; j < 4; ++j)
      for (int e = 0; e < 2; ++e) {
        const int n = 2 * j + e;
        const Complex an = std::polar(1.0, -kPi * n * std::sin(az));
        acc += std::conj(an) * cb.codewords[beams.indices[j]][e];
      }
    CHECK(std::abs(composite_beam_gain(cb, beams, a) - acc) < 1e-12);
  }
}

TEST_CASE("block structure matters and the coherent bound holds") {
  const auto cb = dft_codebook(4, 2);
  const auto geom = ArrayGeometry::ula(8);
  const auto a = steering_vector(geom, 0.6, 0.0);
  const Complex g1 = composite_beam_gain(cb, BeamSet{{1, 5}}, a);
  const Complex g2 = composite_beam_gain(cb, BeamSet{{5, 1}}, a);
  CHECK(std::abs(g1 - g2) > 1e-6);

  Rng rng(2);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<std::size_t> pick(0, cb.size() - 1);
  for (int t = 0; t < 2000; ++t) {
    const auto s = steering_vector(geom, u(rng), 0.0);
    const BeamSet b{{pick(rng), pick(rng)}};
    CHECK(std::abs(composite_beam_gain(cb, b, s)) <= 2.0 * std::sqrt(4.0) + 1e-12);
  }
}

TEST_CASE("precoder is block diagonal with unit columns") {
  const auto cb = dft_codebook(4, 2);
  const BeamSet b{{1, 6, 2}};
  const CMatrix p = assemble_precoder(cb, b);
  REQUIRE(p.rows == 12);
  REQUIRE(p.cols == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    double norm = 0.0;
    for (std::size_t r = 0; r < 12; ++r) {
      const bool in_block = r / 4 == j;
      if (!in_block) CHECK(p(r, j) == Complex{});
      else CHECK(p(r, j) == cb.codewords[b.indices[j]][r % 4]);
      norm += std::norm(p(r, j));
    }
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
  const CMatrix single = assemble_precoder(cb, BeamSet{{5}});
  CHECK(single.cols == 1);
  for (int r = 0; r < 4; ++r) CHECK(single(r, 0) == cb.codewords[5][r]);
  CHECK_THROWS_AS(assemble_precoder(cb, BeamSet{}), DomainError);
}

TEST_CASE("effective vector through a flat channel equals the scalar model") {
  const auto cb = dft_codebook(4, 2);
  const auto tx = ArrayGeometry::ula(12);
  Rng rng(8);
  std::uniform_real_distribution<double> u(-1.4, 1.4);
  std::uniform_int_distribution<std::size_t> pick(0, cb.size() - 1);
  for (int t = 0; t < 200; ++t) {
    const double az = u(rng), aoa = u(rng);
    const Complex g = std::polar(0.5 + 0.1 * t / 200.0, u(rng));
    const BeamSet b{{pick(rng), pick(rng), pick(rng)}};
    const CVec f = effective_transmit_vector(assemble_precoder(cb, b));
    CHECK(std::abs(energy(f) - 1.0) < 1e-12);
    const auto at = steering_vector(tx, az, 0.0);
    const auto ar = steering_vector(ArrayGeometry::ula(3), aoa, 0.0);
    for (int m = 0; m < 3; ++m) {
      // H f with H = g a_r a_t^H
      Complex y{};
      for (int i = 0; i < 12; ++i) y += g * ar[m] * std::conj(at[i]) * f[i];
      const Complex model = g * ar[m] * composite_beam_gain(cb, b, at) / std::sqrt(3.0);
      CHECK(std::abs(y - model) < 1e-9);
    }
  }
}
