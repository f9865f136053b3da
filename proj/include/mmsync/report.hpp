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

#include <string>
#include <vector>

#include "mmsync/config.hpp"

namespace mmsync {

const char* version_string();

/// "# mmsync,version=...,scenario=0x...,seed=...,experiment=..."
std::string manifest_row(const Scenario& s, const std::string& experiment);

struct RunReport {
  std::vector<std::string> files;  // written paths
  std::string text;                // short human-readable summary
};

/// Runs one of sqnr, timing, cfo, multicell, complexity and writes its CSV
/// files plus manifest.json into out_dir (created if missing).
RunReport run_experiment(const Scenario& s, const std::string& experiment, const std::string& out_dir);

}  // namespace mmsync
