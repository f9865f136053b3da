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
#include "mmsync/beamforming.hpp"

#include <cmath>

namespace mmsync {

Codebook dft_codebook(int n_a, int oversampling) {
  if (n_a < 1 || oversampling < 1) throw DomainError("codebook dimensions must be positive");
  Codebook cb;
  cb.n_a = n_a;
  cb.oversampling = oversampling;
  const int n_beam = n_a * oversampling;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_a));
  cb.codewords.resize(static_cast<std::size_t>(n_beam));
  for (int q = 0; q < n_beam; ++q) {
    auto& w = cb.codewords[q];
    w.resize(static_cast<std::size_t>(n_a));
    for (int a = 0; a < n_a; ++a) {
      const long long r = (static_cast<long long>(a) * q) % n_beam;
      w[a] = std::polar(amp, -2.0 * kPi * static_cast<double>(r) / n_beam);
    }
  }
  return cb;
}

Codebook array_codebook(const ArrayGeometry& geom, int oversampling) {
  geom.validate();
  if (geom.kind == ArrayKind::Ula) return dft_codebook(geom.n_x, oversampling);
  const Codebook cx = geom.n_x > 1 ? dft_codebook(geom.n_x, oversampling) : dft_codebook(1, 1);
  const Codebook cy = geom.n_y > 1 ? dft_codebook(geom.n_y, oversampling) : dft_codebook(1, 1);
  Codebook cb;
  cb.n_a = geom.n_elements();
  cb.oversampling = oversampling;
  for (const auto& wy : cy.codewords) {
    for (const auto& wx : cx.codewords) {
      CVec w(static_cast<std::size_t>(cb.n_a));
      for (int n = 0; n < geom.n_y; ++n)
        for (int m = 0; m < geom.n_x; ++m) w[m + n * geom.n_x] = wx[m] * wy[n];
      cb.codewords.push_back(std::move(w));
    }
  }
  return cb;
}

SubarrayLayout subarray_layout(const ArrayGeometry& full, int n_rf) {
  full.validate();
  if (n_rf < 1 || full.n_elements() % n_rf != 0) throw DomainError("n_rf must divide the element count");
  SubarrayLayout s;
  s.full = full;
  s.n_rf = n_rf;
  s.n_a = full.n_elements() / n_rf;
  if (full.kind == ArrayKind::Ula) {
    s.sub = ArrayGeometry::ula(s.n_a);
  } else if (s.n_a % full.n_x == 0) {
    s.sub = ArrayGeometry::upa(full.n_x, s.n_a / full.n_x);
  } else if (full.n_x % s.n_a == 0) {
    s.sub = ArrayGeometry::upa(s.n_a, 1);
  } else {
    throw DomainError("subarray size does not tile the planar array rows");
  }
  s.sub.spacing = full.spacing;
  return s;
}

static void check_beams(const Codebook& cb, const BeamSet& beams) {
  if (beams.indices.empty()) throw DomainError("beam set is empty");
  for (auto q : beams.indices)
    if (q >= cb.size()) throw DomainError("codeword index out of range");
}

Complex composite_beam_gain(const Codebook& cb, const BeamSet& beams, std::span<const Complex> tx_steering) {
  check_beams(cb, beams);
  const std::size_t n_a = static_cast<std::size_t>(cb.n_a);
  if (tx_steering.size() != beams.indices.size() * n_a) throw DomainError("steering length must equal n_rf * n_a");
  Complex h{};
  for (std::size_t j = 0; j < beams.indices.size(); ++j)
    h += inner(tx_steering.subspan(j * n_a, n_a), cb.codewords[beams.indices[j]]);
  return h;
}

CMatrix assemble_precoder(const Codebook& cb, const BeamSet& beams) {
  check_beams(cb, beams);
  const std::size_t n_a = static_cast<std::size_t>(cb.n_a);
  const std::size_t n_rf = beams.indices.size();
  CMatrix p(n_rf * n_a, n_rf);
  for (std::size_t j = 0; j < n_rf; ++j) {
    const auto& w = cb.codewords[beams.indices[j]];
    for (std::size_t a = 0; a < n_a; ++a) p(j * n_a + a, j) = w[a];
  }
  return p;
}

CVec effective_transmit_vector(const CMatrix& precoder) {
  if (precoder.cols == 0) throw DomainError("precoder has no columns");
  const CVec ones(precoder.cols, Complex(1.0 / std::sqrt(static_cast<double>(precoder.cols)), 0.0));
  return multiply(precoder, ones);
}

}  // namespace mmsync
