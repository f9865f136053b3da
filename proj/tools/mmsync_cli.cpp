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
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mmsync/mmsync.h"

int main(int argc, char** argv) {
  CLI::App app{"mmsync: directional frame timing synchronization with low-resolution ADCs"};
  std::string config, experiment, out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  app.add_option("--config", config, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--experiment", experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember({"sqnr", "timing", "cfo", "multicell", "complexity"}));
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Master seed, overrides the file");
  app.add_option("--workers", workers, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  app.set_version_flag("--version", mmsync_version());
  CLI11_PARSE(app, argc, argv);

  mmsync_scenario* scn = nullptr;
  auto die = [&](mmsync_status st) {
    std::fprintf(stderr, "mmsync: error %d: %s\n", static_cast<int>(st), mmsync_last_error());
    mmsync_scenario_free(scn);
    return 1;
  };

  if (auto st = mmsync_scenario_load(config.c_str(), &scn); st != MMSYNC_OK) return die(st);
  if (seed)
    if (auto st = mmsync_scenario_set_seed(scn, *seed); st != MMSYNC_OK) return die(st);
  if (workers)
    if (auto st = mmsync_scenario_set_workers(scn, *workers); st != MMSYNC_OK) return die(st);

  char* summary = nullptr;
  if (auto st = mmsync_run_experiment(scn, experiment.c_str(), out_dir.c_str(), &summary); st != MMSYNC_OK)
    return die(st);
  std::fputs(summary, stdout);
  mmsync_string_free(summary);
  mmsync_scenario_free(scn);
  return 0;
}
