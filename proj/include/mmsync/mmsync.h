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
#ifndef MMSYNC_MMSYNC_H
#define MMSYNC_MMSYNC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MMSYNC_API __declspec(dllexport)
#else
#define MMSYNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmsync_status {
  MMSYNC_OK = 0,
  MMSYNC_INVALID_ARGUMENT = 1,
  MMSYNC_DOMAIN = 2,
  MMSYNC_CONFIG = 3,
  MMSYNC_IO = 4,
  MMSYNC_BUDGET = 5,
  MMSYNC_INTERNAL = 6
} mmsync_status;

typedef struct mmsync_scenario mmsync_scenario;

typedef struct mmsync_complexity {
  uint64_t bs_iterations_multi_beam;
  uint64_t bs_iterations_single_stream;
  uint64_t ue_complex_multiplications;
  uint64_t ue_complex_additions;
} mmsync_complexity;

MMSYNC_API const char* mmsync_version(void);

/* Message of the last failing call on this thread. Empty after success. */
MMSYNC_API const char* mmsync_last_error(void);

MMSYNC_API mmsync_status mmsync_scenario_load(const char* path, mmsync_scenario** out);
MMSYNC_API mmsync_status mmsync_scenario_from_string(const char* json, mmsync_scenario** out);
MMSYNC_API void mmsync_scenario_free(mmsync_scenario* scn);
MMSYNC_API mmsync_status mmsync_scenario_set_seed(mmsync_scenario* scn, uint64_t seed);
MMSYNC_API mmsync_status mmsync_scenario_set_workers(mmsync_scenario* scn, int workers);
MMSYNC_API mmsync_status mmsync_scenario_hash(const mmsync_scenario* scn, uint64_t* out);

/* Writes the experiment CSVs and manifest.json into out_dir. If summary is
   non-null it receives a malloc'd text summary the caller frees with
   mmsync_string_free. */
MMSYNC_API mmsync_status mmsync_run_experiment(const mmsync_scenario* scn, const char* experiment,
                                               const char* out_dir, char** summary);
MMSYNC_API void mmsync_string_free(char* s);

MMSYNC_API mmsync_status mmsync_complexity_report(uint64_t n_triggers, uint64_t t_bs, uint64_t n_beam,
                                                  int n_rf, uint64_t n, uint64_t t_ue, uint64_t m_tot,
                                                  mmsync_complexity* out);

MMSYNC_API mmsync_status mmsync_xi_for_bits(int bits, double* out);
MMSYNC_API mmsync_status mmsync_sqnr_single_beam(double signal_power, double noise_var, double eta,
                                                 double* out);
MMSYNC_API mmsync_status mmsync_sqnr_lower_bound(double gain_sq, double lambda_max, double xi_max,
                                                 double noise_var, double* out);

/* Interleaved re/im pairs: out must hold 2 * length doubles. */
MMSYNC_API mmsync_status mmsync_zc_sequence(int root, int length, double* out);

#ifdef __cplusplus
}
#endif

#endif
