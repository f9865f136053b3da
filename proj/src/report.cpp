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
#include "mmsync/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mmsync/montecarlo.hpp"
#include "mmsync/optimizer.hpp"

#ifndef MMSYNC_VERSION
#define MMSYNC_VERSION "0.0.0"
#endif

namespace mmsync {

namespace fs = std::filesystem;

const char* version_string() { return MMSYNC_VERSION; }

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::string& manifest, const std::string& header) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << manifest << '\n' << header << '\n';
  }
  template <class... T>
  void row(const T&... cols) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cols, first = false), ...);
    out_ << '\n';
  }
  std::string close() {
    out_.close();
    if (!out_) throw std::runtime_error("failed writing " + path_.string());
    return path_.string();
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::string write_beams(const Scenario& s, const fs::path& dir, const std::string& manifest) {
  const Setup setup(s);
  Csv csv(dir / "beams.csv", manifest, "method,bits,slot,anchor_azimuth_deg,anchor_elevation_deg,codewords,objective,iterations");
  for (Method m : {Method::Proposed, Method::SingleStream}) {
    for (const auto& bits : s.adc_bits) {
      const SlotBeams& sb = setup.beams(m, bits);
      for (std::size_t k = 0; k < sb.beams.size(); ++k) {
        std::string cw;
        for (auto q : sb.beams[k].indices) cw += (cw.empty() ? "" : " ") + std::to_string(q);
        const auto& a = setup.anchors().anchors[k];
        csv.row(method_name(m), bits_label(bits), k, num(rad_to_deg(a.azimuth)), num(rad_to_deg(a.elevation)), cw,
                num(sb.objectives[k]), sb.iterations_per_slot);
      }
    }
  }
  return csv.close();
}

std::string write_manifest(const Scenario& s, const std::string& experiment, const fs::path& dir) {
  nlohmann::json j{
      {"software", "mmsync"},
      {"version", version_string()},
      {"experiment", experiment},
      {"seed", s.seed},
      {"scenario_hash", hex(scenario_hash(s))},
      {"snr_definition", "transmit SNR before beamforming and receive processing; unit transmit power, noise variance 10^(-snr_db/10)"},
      {"cell_snr_reference", "multi-cell and multi-UE path loss is referenced to the cell-edge distance"},
      {"channel_model", s.channel.regime == ChannelRegime::Flat ? "flat single path"
                                                                 : "parametric clustered multipath (statistical channel substitute)"},
      {"anchor_ordering", "azimuth-major cell-centre lattice"},
      {"config", nlohmann::json::parse(echo_json(s))},
  };
  const fs::path p = dir / "manifest.json";
  std::ofstream out(p);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return p.string();
}

void write_timing(const TimingResult& r, const fs::path& dir, const std::string& manifest, const std::string& stem,
                  RunReport& rep) {
  Csv sum(dir / (stem + ".csv"), manifest,
          "method,bits,snr_db,cfo,trials,nmse,nmse_stderr,success_rate,success_ci95_lo,success_ci95_hi");
  for (const auto& x : r.summary)
    sum.row(method_name(x.method), bits_label(x.bits), num(x.snr_db), num(x.cfo), x.trials, num(x.nmse),
            num(x.nmse_stderr), num(x.success_rate), num(x.wilson_lo), num(x.wilson_hi));
  rep.files.push_back(sum.close());
  Csv tr(dir / (stem + "_trials.csv"), manifest,
         "method,cfo,trial,slot,snr_db,bits,nu_true,nu_hat,b_hat,peak_power,success");
  for (const auto& x : r.records)
    tr.row(method_name(x.method), num(x.cfo), x.trial, x.slot, num(x.snr_db), bits_label(x.bits), x.outcome.nu_true,
           x.outcome.nu_hat, x.outcome.b_hat, num(x.outcome.peak_power), x.outcome.success ? 1 : 0);
  rep.files.push_back(tr.close());
  std::ostringstream os;
  for (const auto& x : r.summary)
    os << method_name(x.method) << " bits=" << bits_label(x.bits) << " snr_db=" << num(x.snr_db)
       << " cfo=" << num(x.cfo) << " nmse=" << num(x.nmse) << " p_success=" << num(x.success_rate) << '\n';
  rep.text += os.str();
}

}  // namespace

std::string manifest_row(const Scenario& s, const std::string& experiment) {
  return std::string("# mmsync,version=") + version_string() + ",scenario=" + hex(scenario_hash(s)) +
         ",seed=" + std::to_string(s.seed) + ",experiment=" + experiment;
}

RunReport run_experiment(const Scenario& s, const std::string& experiment, const std::string& out_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());
  const std::string manifest = manifest_row(s, experiment);
  RunReport rep;

  if (experiment == "complexity") {
    const Setup setup(s);
    const auto r = complexity_report(static_cast<std::uint64_t>(s.sync.n_triggers), static_cast<std::uint64_t>(s.sync.t_bs),
                                     setup.subarray_codebook().size(), s.bs_array.n_rf,
                                     static_cast<std::uint64_t>(s.waveform.n_subcarriers),
                                     static_cast<std::uint64_t>(s.sync.t_ue),
                                     static_cast<std::uint64_t>(setup.ue_geometry().n_elements()));
    Csv csv(dir / "complexity.csv", manifest,
            "n_triggers,t_bs,n_beam,n_rf,n_subcarriers,t_ue,m_tot,bs_iterations_multi_beam,bs_iterations_single_stream,"
            "ue_complex_multiplications,ue_complex_additions");
    csv.row(s.sync.n_triggers, s.sync.t_bs, setup.subarray_codebook().size(), s.bs_array.n_rf,
            s.waveform.n_subcarriers, s.sync.t_ue, setup.ue_geometry().n_elements(), r.bs_iterations_multi,
            r.bs_iterations_single, r.ue_complex_mults, r.ue_complex_adds);
    rep.files.push_back(csv.close());
    std::ostringstream os;
    os << "bs_iterations_multi_beam=" << r.bs_iterations_multi << '\n'
       << "bs_iterations_single_stream=" << r.bs_iterations_single << '\n'
       << "ue_complex_multiplications=" << r.ue_complex_mults << '\n'
       << "ue_complex_additions=" << r.ue_complex_adds << '\n';
    rep.text = os.str();
  } else if (experiment == "sqnr") {
    const SqnrResult r = run_sqnr_experiment(s);
    Csv csv(dir / "sqnr.csv", manifest, "method,bits,snr_db,sqnr_db_sample");
    for (const auto& x : r.samples) csv.row(method_name(x.method), bits_label(x.bits), num(x.snr_db), num(x.sqnr_db));
    rep.files.push_back(csv.close());
    Csv sum(dir / "sqnr_summary.csv", manifest,
            "method,bits,snr_db,trials,mean_db,stderr_db,ci95_lo_db,ci95_hi_db,median_db,analytic_mean_db");
    std::ostringstream os;
    for (const auto& x : r.summary) {
      sum.row(method_name(x.method), bits_label(x.bits), num(x.snr_db), x.trials, num(x.db.mean), num(x.db.stderr_),
              num(x.db.ci_lo), num(x.db.ci_hi), num(x.median_db), num(x.analytic_mean_db));
      os << method_name(x.method) << " bits=" << bits_label(x.bits) << " snr_db=" << num(x.snr_db)
         << " mean_sqnr_db=" << num(x.db.mean) << " [" << num(x.db.ci_lo) << ", " << num(x.db.ci_hi) << "]\n";
    }
    rep.files.push_back(sum.close());
    rep.text = os.str();
    rep.files.push_back(write_beams(s, dir, manifest));
  } else if (experiment == "timing") {
    write_timing(run_timing_experiment(s), dir, manifest, "timing", rep);
    rep.files.push_back(write_beams(s, dir, manifest));
  } else if (experiment == "cfo") {
    write_timing(run_cfo_experiment(s), dir, manifest, "cfo", rep);
    rep.files.push_back(write_beams(s, dir, manifest));
  } else if (experiment == "multicell") {
    const MulticellResult r = run_multicell_experiment(s);
    Csv det(dir / "multicell_detection.csv", manifest,
            "method,bits,snr_db,trials,success_rate,success_ci95_lo,success_ci95_hi,nmse");
    std::ostringstream os;
    for (const auto& x : r.detection) {
      det.row(method_name(x.method), bits_label(x.bits), num(x.snr_db), x.trials, num(x.success_rate),
              num(x.wilson_lo), num(x.wilson_hi), num(x.nmse));
      os << method_name(x.method) << " bits=" << bits_label(x.bits) << " snr_db=" << num(x.snr_db)
         << " p_detect=" << num(x.success_rate) << '\n';
    }
    rep.files.push_back(det.close());
    Csv acc(dir / "multicell_access.csv", manifest, "method,bits,snr_db,slot,count,probability");
    for (const auto& x : r.access)
      acc.row(method_name(x.method), bits_label(x.bits), num(x.snr_db), x.slot < 0 ? std::string("miss") : std::to_string(x.slot),
              x.count, num(x.probability));
    rep.files.push_back(acc.close());
    rep.text = os.str();
    rep.files.push_back(write_beams(s, dir, manifest));
  } else {
    throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
  }
  rep.files.push_back(write_manifest(s, experiment, dir));
  return rep;
}

}  // namespace mmsync
