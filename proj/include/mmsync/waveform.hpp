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

#include <span>

#include "mmsync/types.hpp"

namespace mmsync {

struct ZcSequence {
  int root = 0;
  int length = 0;
  CVec samples;
};

/// Subcarrier grid in centered order: index dc_index is the DC carrier.
struct OfdmGrid {
  int n_subcarriers = 0;
  CVec symbols;
  int dc_index = 0;
  int band_first = 0;   // first mapped index
  int band_length = 0;  // number of mapped indices (including a punctured DC)
};

struct SyncWaveform {
  OfdmGrid grid;
  CVec time_samples;
  int cp_length = 0;
  CVec samples_with_cp;
};

/// s[m] = exp(-j pi m (m+1) root / length)
ZcSequence generate_zc(int root, int length);

/// Raw cyclic autocorrelation r[v] = sum_m s[m+v] s*[m]; r[0] = length.
CVec cyclic_autocorrelation(const ZcSequence& seq);

/// Same, divided by the length so that lag 0 is exactly 1.
CVec normalized_cyclic_autocorrelation(const ZcSequence& seq);

/// Places the sequence on the central band. If the DC index falls strictly
/// inside the band, the element landing on it is punctured to zero.
OfdmGrid map_to_grid(const ZcSequence& seq, int n_subcarriers);

/// Mapped band of the grid, in order. Inverse of map_to_grid up to puncturing.
CVec extract_band(const OfdmGrid& grid);

/// time[n] = 1/sqrt(N) sum_k grid[k] exp(j 2 pi (k - dc) n / N), then CP.
SyncWaveform modulate(const OfdmGrid& grid, int cp_length);

/// Unitary forward DFT of a length-N block, returned in the grid's centered
/// order. demodulate(modulate(g).time_samples, g) == g.symbols.
CVec demodulate(std::span<const Complex> time, const OfdmGrid& layout);

}  // namespace mmsync
