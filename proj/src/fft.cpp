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
#include "mmsync/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace mmsync::fft {
namespace {

// Plan creation is not thread-safe in FFTW, execution with the new-array
// interface is. Plans are unaligned so any buffer can be used.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, bool inverse) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(n, inverse);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    CVec scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                   inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void transform(std::span<Complex> x, bool inverse) {
  if (x.empty()) return;
  fftw_plan p = cache().get(x.size(), inverse);
  auto* buf = reinterpret_cast<fftw_complex*>(x.data());
  fftw_execute_dft(p, buf, buf);
}

static CVec unitary(std::span<const Complex> x, bool inverse) {
  CVec y(x.begin(), x.end());
  transform(y, inverse);
  const double s = 1.0 / std::sqrt(static_cast<double>(y.size()));
  for (auto& v : y) v *= s;
  return y;
}

CVec forward(std::span<const Complex> x) { return unitary(x, false); }
CVec inverse(std::span<const Complex> x) { return unitary(x, true); }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace mmsync::fft
