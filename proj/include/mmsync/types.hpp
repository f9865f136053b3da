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

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmsync {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Per-trial random stream. Every Monte Carlo trial owns one of these.
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;

/// A precondition on a numeric argument was violated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Scenario / configuration problem. `key_path()` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& what)
      : std::runtime_error(key_path.empty() ? what : key_path + ": " + what),
        key_path_(std::move(key_path)) {}
  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

/// Exhaustive beam search would exceed the configured iteration budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix. Only what the channel and precoder need.
struct CMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  CVec data;

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Complex& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<const Complex> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  double frobenius_sq() const {
    double acc = 0.0;
    for (const auto& v : data) acc += std::norm(v);
    return acc;
  }
};

/// y = M x
inline CVec multiply(const CMatrix& m, std::span<const Complex> x) {
  if (x.size() != m.cols) throw DomainError("matrix-vector dimension mismatch");
  CVec y(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < m.cols; ++c) acc += m(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

/// a^H b
inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DomainError("inner product dimension mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double energy(std::span<const Complex> x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return acc;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace mmsync
