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
#include "mmsync/waveform.hpp"

#include <cmath>

#include "mmsync/fft.hpp"

namespace mmsync {

ZcSequence generate_zc(int root, int length) {
  if (length < 1) throw DomainError("zc length must be >= 1");
  if (root < 0 || root >= length) throw DomainError("zc root out of range [0, length)");
  ZcSequence z{root, length, CVec(static_cast<std::size_t>(length))};
  for (int m = 0; m < length; ++m) {
    // Reduce m(m+1)root mod 2*length exactly in integers before the phase.
    const long long num = (static_cast<long long>(m) * (m + 1) % (2LL * length)) * root % (2LL * length);
    const double phase = -kPi * static_cast<double>(num) / length;
    z.samples[m] = std::polar(1.0, phase);
  }
  return z;
}

CVec cyclic_autocorrelation(const ZcSequence& seq) {
  const std::size_t n = seq.samples.size();
  CVec r(n);
  for (std::size_t v = 0; v < n; ++v) {
    Complex acc{};
    for (std::size_t m = 0; m < n; ++m) acc += seq.samples[(m + v) % n] * std::conj(seq.samples[m]);
    r[v] = acc;
  }
  return r;
}

CVec normalized_cyclic_autocorrelation(const ZcSequence& seq) {
  CVec r = cyclic_autocorrelation(seq);
  for (auto& v : r) v /= static_cast<double>(seq.length);
  return r;
}

OfdmGrid map_to_grid(const ZcSequence& seq, int n_subcarriers) {
  if (n_subcarriers <= seq.length) throw DomainError("sequence does not fit in the grid");
  OfdmGrid g;
  g.n_subcarriers = n_subcarriers;
  g.symbols.assign(static_cast<std::size_t>(n_subcarriers), Complex{});
  g.dc_index = n_subcarriers / 2;
  g.band_first = (n_subcarriers - seq.length - 1) / 2 + 1;
  g.band_length = seq.length;
  for (int m = 0; m < seq.length; ++m) g.symbols[g.band_first + m] = seq.samples[m];
  const int last = g.band_first + seq.length - 1;
  if (g.dc_index > g.band_first && g.dc_index < last) g.symbols[g.dc_index] = 0.0;
  return g;
}

CVec extract_band(const OfdmGrid& grid) {
  return CVec(grid.symbols.begin() + grid.band_first,
              grid.symbols.begin() + grid.band_first + grid.band_length);
}

SyncWaveform modulate(const OfdmGrid& grid, int cp_length) {
  const int n = grid.n_subcarriers;
  if (n < 1 || static_cast<int>(grid.symbols.size()) != n) throw DomainError("malformed grid");
  if (cp_length < 0 || cp_length >= n) throw DomainError("cp_length must be in [0, N)");
  // Centered index k sits at DFT bin (k - dc) mod N.
  CVec bins(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) bins[((k - grid.dc_index) % n + n) % n] = grid.symbols[k];
  SyncWaveform w;
  w.grid = grid;
  w.cp_length = cp_length;
  w.time_samples = fft::inverse(bins);
  w.samples_with_cp.reserve(static_cast<std::size_t>(n + cp_length));
  w.samples_with_cp.insert(w.samples_with_cp.end(), w.time_samples.end() - cp_length, w.time_samples.end());
  w.samples_with_cp.insert(w.samples_with_cp.end(), w.time_samples.begin(), w.time_samples.end());
  return w;
}

CVec demodulate(std::span<const Complex> time, const OfdmGrid& layout) {
  const int n = layout.n_subcarriers;
  if (static_cast<int>(time.size()) != n) throw DomainError("block length must equal N");
  CVec bins = fft::forward(time);
  CVec out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[k] = bins[((k - layout.dc_index) % n + n) % n];
  return out;
}

}  // namespace mmsync
