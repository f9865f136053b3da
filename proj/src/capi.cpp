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
#include "mmsync/mmsync.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "mmsync/config.hpp"
#include "mmsync/optimizer.hpp"
#include "mmsync/quantization.hpp"
#include "mmsync/report.hpp"
#include "mmsync/sqnr.hpp"
#include "mmsync/waveform.hpp"

struct mmsync_scenario {
  mmsync::Scenario scenario;
};

namespace {

thread_local std::string g_last_error;

mmsync_status fail(mmsync_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
mmsync_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return MMSYNC_OK;
  } catch (const mmsync::ConfigError& e) {
    return fail(MMSYNC_CONFIG, e.what());
  } catch (const mmsync::BudgetError& e) {
    return fail(MMSYNC_BUDGET, e.what());
  } catch (const mmsync::DomainError& e) {
    return fail(MMSYNC_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MMSYNC_INTERNAL, "out of memory");
  } catch (const std::runtime_error& e) {
    return fail(MMSYNC_IO, e.what());
  } catch (const std::exception& e) {
    return fail(MMSYNC_INTERNAL, e.what());
  } catch (...) {
    return fail(MMSYNC_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* mmsync_version(void) { return mmsync::version_string(); }

const char* mmsync_last_error(void) { return g_last_error.c_str(); }

mmsync_status mmsync_scenario_load(const char* path, mmsync_scenario** out) {
  if (!path || !out) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new mmsync_scenario{mmsync::parse_config_file(path)}; });
}

mmsync_status mmsync_scenario_from_string(const char* json, mmsync_scenario** out) {
  if (!json || !out) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new mmsync_scenario{mmsync::parse_config_string(json)}; });
}

void mmsync_scenario_free(mmsync_scenario* scn) { delete scn; }

mmsync_status mmsync_scenario_set_seed(mmsync_scenario* scn, uint64_t seed) {
  if (!scn) return fail(MMSYNC_INVALID_ARGUMENT, "null scenario");
  scn->scenario.seed = seed;
  g_last_error.clear();
  return MMSYNC_OK;
}

mmsync_status mmsync_scenario_set_workers(mmsync_scenario* scn, int workers) {
  if (!scn) return fail(MMSYNC_INVALID_ARGUMENT, "null scenario");
  if (workers < 0) return fail(MMSYNC_INVALID_ARGUMENT, "workers must be >= 0");
  scn->scenario.workers = workers;
  g_last_error.clear();
  return MMSYNC_OK;
}

mmsync_status mmsync_scenario_hash(const mmsync_scenario* scn, uint64_t* out) {
  if (!scn || !out) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = mmsync::scenario_hash(scn->scenario); });
}

mmsync_status mmsync_run_experiment(const mmsync_scenario* scn, const char* experiment, const char* out_dir,
                                    char** summary) {
  if (!scn || !experiment || !out_dir) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  if (summary) *summary = nullptr;
  return guarded([&] {
    const auto rep = mmsync::run_experiment(scn->scenario, experiment, out_dir);
    if (summary) {
      char* s = static_cast<char*>(std::malloc(rep.text.size() + 1));
      if (!s) throw std::bad_alloc();
      std::memcpy(s, rep.text.c_str(), rep.text.size() + 1);
      *summary = s;
    }
  });
}

void mmsync_string_free(char* s) { std::free(s); }

mmsync_status mmsync_complexity_report(uint64_t n_triggers, uint64_t t_bs, uint64_t n_beam, int n_rf, uint64_t n,
                                       uint64_t t_ue, uint64_t m_tot, mmsync_complexity* out) {
  if (!out) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = mmsync::complexity_report(n_triggers, t_bs, n_beam, n_rf, n, t_ue, m_tot);
    out->bs_iterations_multi_beam = r.bs_iterations_multi;
    out->bs_iterations_single_stream = r.bs_iterations_single;
    out->ue_complex_multiplications = r.ue_complex_mults;
    out->ue_complex_additions = r.ue_complex_adds;
  });
}

mmsync_status mmsync_xi_for_bits(int bits, double* out) {
  if (!out) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = mmsync::xi_for_bits(bits); });
}

mmsync_status mmsync_sqnr_single_beam(double signal_power, double noise_var, double eta, double* out) {
  if (!out) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = mmsync::sqnr_single_beam(signal_power, noise_var, eta); });
}

mmsync_status mmsync_sqnr_lower_bound(double gain_sq, double lambda_max, double xi_max, double noise_var,
                                      double* out) {
  if (!out) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = mmsync::sqnr_lower_bound_single(gain_sq, lambda_max, xi_max, noise_var); });
}

mmsync_status mmsync_zc_sequence(int root, int length, double* out) {
  if (!out) return fail(MMSYNC_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto z = mmsync::generate_zc(root, length);
    for (int m = 0; m < length; ++m) {
      out[2 * m] = z.samples[m].real();
      out[2 * m + 1] = z.samples[m].imag();
    }
  });
}

}  // extern "C"
