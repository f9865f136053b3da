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
#include <vector>

#include "mmsync/channel.hpp"
#include "mmsync/types.hpp"

namespace mmsync {

struct Codebook {
  std::vector<CVec> codewords;
  int oversampling = 1;
  int n_a = 0;

  std::size_t size() const noexcept { return codewords.size(); }
};

/// Codeword q, element a: exp(-j 2 pi a q / (n_a os)) / sqrt(n_a).
Codebook dft_codebook(int n_a, int oversampling);

/// Codebook matched to an array: 1-D DFT for a ULA, Kronecker product of
/// the two axis codebooks for a UPA (x index fastest). An axis of size one
/// contributes a single codeword.
Codebook array_codebook(const ArrayGeometry& geom, int oversampling);

/// Subarray j owns flat elements [j n_a, (j + 1) n_a).
struct SubarrayLayout {
  ArrayGeometry full;
  ArrayGeometry sub;
  int n_rf = 1;
  int n_a = 0;
};

/// Contiguous tiling. For a UPA each block must be whole rows or an
/// integer fraction of one row.
SubarrayLayout subarray_layout(const ArrayGeometry& full, int n_rf);

/// Ordered codeword indices, one per subarray.
struct BeamSet {
  std::vector<std::size_t> indices;
};

/// h = sum_j a[j block]^H p_j
Complex composite_beam_gain(const Codebook& cb, const BeamSet& beams, std::span<const Complex> tx_steering);

/// Block-diagonal N_tot x N_RF matrix with p_j on block j.
CMatrix assemble_precoder(const Codebook& cb, const BeamSet& beams);

/// P 1 / sqrt(N_RF): one common signal through every subarray.
CVec effective_transmit_vector(const CMatrix& precoder);

}  // namespace mmsync
