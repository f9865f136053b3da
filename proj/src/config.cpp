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
#include "mmsync/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mmsync {

using nlohmann::json;

ArrayGeometry ArrayConfig::geometry() const {
  return kind == ArrayKind::Ula ? ArrayGeometry::ula(n_x) : ArrayGeometry::upa(n_x, n_y);
}

CellLayout Scenario::cell_layout() const {
  CellLayout l = mode == Mode::MultiCell ? CellLayout::hex7(layout.isd_m, layout.roots)
                                         : CellLayout::single_cell(layout.radius_m, waveform.zc_root);
  l.min_distance_m = layout.min_distance_m;
  l.bs_height_m = layout.bs_height_m;
  l.ue_height_m = layout.ue_height_m;
  l.path_loss = layout.path_loss;
  l.sector_lo_deg = optimizer.sector.az_lo_deg;
  l.sector_hi_deg = optimizer.sector.az_hi_deg;
  return l;
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::SingleUe: return "single_ue";
    case Mode::MultiUeCell: return "multi_ue_cell";
    case Mode::MultiCell: return "multi_cell";
  }
  return "?";
}

std::string bits_label(const std::optional<int>& bits) { return bits ? std::to_string(*bits) : "inf"; }

namespace {

// Reads keys from one JSON object, remembering which were consumed so the
// rest can be rejected.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  const json* find(const std::string& k) {
    seen_.insert(k);
    auto it = j_.find(k);
    return it == j_.end() ? nullptr : &*it;
  }

  template <class T>
  void get(const std::string& k, T& out) {
    const json* v = find(k);
    if (!v) return;
    try {
      if constexpr (std::is_integral_v<T>) {
        if (!v->is_number_integer()) throw ConfigError(key(k), "expected an integer");
        if constexpr (std::is_unsigned_v<T>) {
          if (v->is_number_unsigned()) {
            out = v->get<T>();
          } else {
            const auto x = v->get<long long>();
            if (x < 0) throw ConfigError(key(k), "must be nonnegative");
            out = static_cast<T>(x);
          }
        } else {
          const auto x = v->get<long long>();
          if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max())
            throw ConfigError(key(k), "integer out of range");
          out = static_cast<T>(x);
        }
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v->is_number()) throw ConfigError(key(k), "expected a number");
        out = v->get<T>();
      } else {
        if (!v->is_string()) throw ConfigError(key(k), "expected a string");
        out = v->get<T>();
      }
    } catch (const json::exception& e) {
      throw ConfigError(key(k), e.what());
    }
  }

  Section sub(const std::string& k, const json& empty) {
    const json* v = find(k);
    return Section(v ? *v : empty, key(k));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(key(it.key()), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

ArrayKind parse_kind(const std::string& s, const std::string& key) {
  if (s == "ula") return ArrayKind::Ula;
  if (s == "upa") return ArrayKind::Upa;
  throw ConfigError(key, "expected \"ula\" or \"upa\"");
}

void parse_array(Section sec, ArrayConfig& a) {
  std::string kind = a.kind == ArrayKind::Ula ? "ula" : "upa";
  sec.get("kind", kind);
  a.kind = parse_kind(kind, sec.key("kind"));
  sec.get("n_x", a.n_x);
  sec.get("n_y", a.n_y);
  sec.get("n_rf", a.n_rf);
  sec.get("oversampling", a.oversampling);
  sec.finish();
  require(a.n_x >= 1 && a.n_y >= 1, sec.key("n_x"), "array dimensions must be >= 1");
  require(a.kind == ArrayKind::Upa || a.n_y == 1, sec.key("n_y"), "a ULA has n_y = 1");
  require(a.n_rf >= 1 && (a.n_x * a.n_y) % a.n_rf == 0, sec.key("n_rf"), "must divide the element count");
  require(a.oversampling >= 1, sec.key("oversampling"), "must be >= 1");
}

std::vector<double> parse_number_list(const json* v, const std::string& key) {
  require(v->is_array() && !v->empty(), key, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (const auto& x : *v) {
    require(x.is_number(), key, "expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

Scenario parse_config_string(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  const json empty = json::object();
  Scenario s;
  Section top(root, "");

  std::string mode;
  top.get("mode", mode);
  require(top.find("mode") != nullptr, "mode", "required");
  if (mode == "single_ue") s.mode = Mode::SingleUe;
  else if (mode == "multi_ue_cell") s.mode = Mode::MultiUeCell;
  else if (mode == "multi_cell") s.mode = Mode::MultiCell;
  else throw ConfigError("mode", "expected single_ue, multi_ue_cell or multi_cell");

  top.get("seed", s.seed);
  top.get("trials", s.trials);
  require(s.trials >= 1, "trials", "must be >= 1");
  top.get("workers", s.workers);
  require(s.workers >= 0, "workers", "must be >= 0");

  {
    auto w = top.sub("waveform", empty);
    w.get("n_subcarriers", s.waveform.n_subcarriers);
    w.get("cp_length", s.waveform.cp_length);
    w.get("zc_length", s.waveform.zc_length);
    w.get("zc_root", s.waveform.zc_root);
    w.get("subcarrier_spacing_khz", s.waveform.subcarrier_spacing_khz);
    w.finish();
    const auto& wf = s.waveform;
    require(wf.zc_length >= 1 && wf.zc_length < wf.n_subcarriers, "waveform.zc_length", "must be in [1, n_subcarriers)");
    require(wf.cp_length >= 0 && wf.cp_length < wf.n_subcarriers, "waveform.cp_length", "must be in [0, n_subcarriers)");
    require(wf.zc_root >= 1 && wf.zc_root < wf.zc_length, "waveform.zc_root", "must be in [1, zc_length)");
    require(wf.subcarrier_spacing_khz > 0.0, "waveform.subcarrier_spacing_khz", "must be positive");
  }
  parse_array(top.sub("bs_array", empty), s.bs_array);
  parse_array(top.sub("ue_array", empty), s.ue_array);
  require(s.ue_array.kind == ArrayKind::Ula, "ue_array.kind", "the UE array must be a ULA");

  {
    auto a = top.sub("adc", empty);
    if (const json* v = a.find("bits")) {
      require(v->is_array() && !v->empty(), "adc.bits", "expected a nonempty array");
      s.adc_bits.clear();
      for (const auto& b : *v) {
        if (b.is_string() && b.get<std::string>() == "inf") {
          s.adc_bits.emplace_back(std::nullopt);
        } else {
          require(b.is_number_integer() && b.get<int>() >= 1 && b.get<int>() <= 16, "adc.bits",
                  "entries must be integers in [1, 16] or \"inf\"");
          s.adc_bits.emplace_back(b.get<int>());
        }
      }
    }
    a.finish();
  }
  if (const json* v = top.find("snr_db")) s.snr_db = parse_number_list(v, "snr_db");
  if (const json* v = top.find("cfo")) s.cfo = parse_number_list(v, "cfo");

  {
    auto y = top.sub("sync", empty);
    y.get("t_bs", s.sync.t_bs);
    y.get("t_ue", s.sync.t_ue);
    y.get("n_triggers", s.sync.n_triggers);
    y.finish();
    require(s.sync.t_bs >= 1, "sync.t_bs", "must be >= 1");
    require(s.sync.t_ue >= 2, "sync.t_ue", "must be >= 2");
    require(s.sync.n_triggers >= 1, "sync.n_triggers", "must be >= 1");
  }
  {
    auto o = top.sub("optimizer", empty);
    o.get("inv_lambda_max_db", s.optimizer.inv_lambda_max_db);
    o.get("noise_var", s.optimizer.noise_var);
    o.get("search_budget", s.optimizer.search_budget);
    if (const json* v = o.find("sector_azimuth_deg")) {
      const auto r = parse_number_list(v, "optimizer.sector_azimuth_deg");
      require(r.size() == 2 && r[0] <= r[1] && r[0] >= -90 && r[1] <= 90, "optimizer.sector_azimuth_deg",
              "expected [lo, hi] within [-90, 90]");
      s.optimizer.sector.az_lo_deg = r[0];
      s.optimizer.sector.az_hi_deg = r[1];
    }
    if (const json* v = o.find("sector_elevation_deg")) {
      const auto r = parse_number_list(v, "optimizer.sector_elevation_deg");
      require(r.size() == 2 && r[0] <= r[1] && r[0] >= -90 && r[1] <= 90, "optimizer.sector_elevation_deg",
              "expected [lo, hi] within [-90, 90]");
      s.optimizer.sector.el_lo_deg = r[0];
      s.optimizer.sector.el_hi_deg = r[1];
    }
    o.finish();
    require(s.optimizer.noise_var > 0.0, "optimizer.noise_var", "must be positive");
  }
  {
    auto c = top.sub("channel", empty);
    std::string regime = "flat";
    c.get("regime", regime);
    if (regime == "flat") s.channel.regime = ChannelRegime::Flat;
    else if (regime == "clustered") s.channel.regime = ChannelRegime::Clustered;
    else throw ConfigError("channel.regime", "expected \"flat\" or \"clustered\"");
    c.get("clusters", s.channel.clusters.clusters);
    c.get("paths_per_cluster", s.channel.clusters.paths_per_cluster);
    c.get("angle_spread_deg", s.channel.clusters.angle_spread_deg);
    c.get("cluster_offset_deg", s.channel.clusters.cluster_offset_deg);
    c.get("delay_spread_ns", s.channel.clusters.delay_spread_ns);
    c.get("intra_cluster_delay_ns", s.channel.clusters.intra_cluster_delay_ns);
    c.get("min_cluster_gap_ns", s.channel.clusters.min_cluster_gap_ns);
    c.get("tap_count", s.channel.tap_count);
    c.get("rolloff", s.channel.rolloff);
    c.finish();
    require(s.channel.clusters.clusters >= 1, "channel.clusters", "must be >= 1");
    require(s.channel.clusters.paths_per_cluster >= 1, "channel.paths_per_cluster", "must be >= 1");
    require(s.channel.tap_count >= 1 && s.channel.tap_count <= s.waveform.n_subcarriers, "channel.tap_count",
            "must be in [1, n_subcarriers]");
    require(s.channel.rolloff >= 0.0 && s.channel.rolloff <= 1.0, "channel.rolloff", "must be in [0, 1]");
  }
  {
    auto l = top.sub("layout", empty);
    l.get("radius_m", s.layout.radius_m);
    l.get("isd_m", s.layout.isd_m);
    l.get("min_distance_m", s.layout.min_distance_m);
    l.get("bs_height_m", s.layout.bs_height_m);
    l.get("ue_height_m", s.layout.ue_height_m);
    l.get("pl0_db", s.layout.path_loss.pl0_db);
    l.get("path_loss_exponent", s.layout.path_loss.exponent);
    l.get("shadowing_db", s.layout.path_loss.shadowing_db);
    l.get("ues_per_cell", s.layout.ues_per_cell);
    if (const json* v = l.find("roots")) {
      require(v->is_array() && v->size() == 3, "layout.roots", "expected three root indices");
      for (int i = 0; i < 3; ++i) {
        require((*v)[i].is_number_integer(), "layout.roots", "expected integers");
        s.layout.roots[i] = (*v)[i].get<int>();
      }
    }
    l.finish();
    require(s.layout.min_distance_m > 0.0, "layout.min_distance_m", "must be positive");
    require(s.layout.ues_per_cell >= 1, "layout.ues_per_cell", "must be >= 1");
    require(s.layout.path_loss.shadowing_db >= 0.0, "layout.shadowing_db", "must be nonnegative");
    for (int r : s.layout.roots)
      require(r >= 1 && r < s.waveform.zc_length, "layout.roots", "roots must be in [1, zc_length)");
    require(s.layout.roots[0] != s.layout.roots[1] && s.layout.roots[1] != s.layout.roots[2] &&
                s.layout.roots[0] != s.layout.roots[2],
            "layout.roots", "neighbouring cells need distinct roots");
  }
  {
    auto q = top.sub("sqnr", empty);
    q.get("repetitions", s.sqnr_repetitions);
    q.finish();
    require(s.sqnr_repetitions >= 2, "sqnr.repetitions", "must be >= 2");
  }
  top.finish();
  return s;
}

Scenario parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

static json to_json(const ArrayConfig& a) {
  return json{{"kind", a.kind == ArrayKind::Ula ? "ula" : "upa"}, {"n_x", a.n_x}, {"n_y", a.n_y},
              {"n_rf", a.n_rf}, {"oversampling", a.oversampling}};
}

static json to_json(const Scenario& s, bool with_run_fields) {
  json bits = json::array();
  for (const auto& b : s.adc_bits) b ? bits.push_back(*b) : bits.push_back("inf");
  const auto& c = s.channel;
  const auto& l = s.layout;
  json j{
      {"mode", to_string(s.mode)},
      {"trials", s.trials},
      {"waveform",
       {{"n_subcarriers", s.waveform.n_subcarriers},
        {"cp_length", s.waveform.cp_length},
        {"zc_length", s.waveform.zc_length},
        {"zc_root", s.waveform.zc_root},
        {"subcarrier_spacing_khz", s.waveform.subcarrier_spacing_khz}}},
      {"bs_array", to_json(s.bs_array)},
      {"ue_array", to_json(s.ue_array)},
      {"adc", {{"bits", bits}}},
      {"snr_db", s.snr_db},
      {"cfo", s.cfo},
      {"sync", {{"t_bs", s.sync.t_bs}, {"t_ue", s.sync.t_ue}, {"n_triggers", s.sync.n_triggers}}},
      {"optimizer",
       {{"inv_lambda_max_db", s.optimizer.inv_lambda_max_db},
        {"noise_var", s.optimizer.noise_var},
        {"search_budget", s.optimizer.search_budget},
        {"sector_azimuth_deg", {s.optimizer.sector.az_lo_deg, s.optimizer.sector.az_hi_deg}},
        {"sector_elevation_deg", {s.optimizer.sector.el_lo_deg, s.optimizer.sector.el_hi_deg}}}},
      {"channel",
       {{"regime", c.regime == ChannelRegime::Flat ? "flat" : "clustered"},
        {"clusters", c.clusters.clusters},
        {"paths_per_cluster", c.clusters.paths_per_cluster},
        {"angle_spread_deg", c.clusters.angle_spread_deg},
        {"cluster_offset_deg", c.clusters.cluster_offset_deg},
        {"delay_spread_ns", c.clusters.delay_spread_ns},
        {"intra_cluster_delay_ns", c.clusters.intra_cluster_delay_ns},
        {"min_cluster_gap_ns", c.clusters.min_cluster_gap_ns},
        {"tap_count", c.tap_count},
        {"rolloff", c.rolloff}}},
      {"layout",
       {{"radius_m", l.radius_m},
        {"isd_m", l.isd_m},
        {"min_distance_m", l.min_distance_m},
        {"bs_height_m", l.bs_height_m},
        {"ue_height_m", l.ue_height_m},
        {"pl0_db", l.path_loss.pl0_db},
        {"path_loss_exponent", l.path_loss.exponent},
        {"shadowing_db", l.path_loss.shadowing_db},
        {"roots", l.roots},
        {"ues_per_cell", l.ues_per_cell}}},
      {"sqnr", {{"repetitions", s.sqnr_repetitions}}},
  };
  if (with_run_fields) {
    j["seed"] = s.seed;
    j["workers"] = s.workers;
  }
  return j;
}

std::string echo_json(const Scenario& s) { return to_json(s, true).dump(2); }

std::uint64_t scenario_hash(const Scenario& s) {
  const std::string text = to_json(s, false).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace mmsync
