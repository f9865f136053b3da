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

namespace mmsync::fft {

/// In-place unnormalized DFT of arbitrary length. Forward uses exp(-j...).
void transform(std::span<Complex> x, bool inverse);

/// Unitary DFT, 1/sqrt(N) scaling, natural index order.
CVec forward(std::span<const Complex> x);
CVec inverse(std::span<const Complex> x);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace mmsync::fft
