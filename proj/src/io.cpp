// Copyright 2026 The thermotune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermotune/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "thermotune/errors.hpp"

namespace thermotune {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

void check_keys(const json& j, const std::string& block, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(block + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError("unknown key '" + key + "' in " + block);
    }
  }
}

const json* field(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

void read_double(const json& j, const char* key, double& out) {
  if (const auto* v = field(j, key)) {
    if (!v->is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    out = v->get<double>();
  }
}

template <class T>
void read_uint(const json& j, const char* key, T& out) {
  if (const auto* v = field(j, key)) {
    if (!v->is_number_unsigned()) throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    const auto raw = v->get<std::uint64_t>();
    if (raw > std::numeric_limits<T>::max()) throw ConfigError(std::string("'") + key + "' is out of range");
    out = static_cast<T>(raw);
  }
}

template <class T>
std::vector<T> read_uint_list(const json& j, const char* key) {
  const auto* v = field(j, key);
  if (!v) return {};
  if (!v->is_array()) throw ConfigError(std::string("'") + key + "' must be a list");
  std::vector<T> out;
  for (const auto& item : *v) {
    if (!item.is_number_unsigned()) throw ConfigError(std::string("'") + key + "' entries must be non-negative integers");
    const auto raw = item.get<std::uint64_t>();
    if (raw > std::numeric_limits<T>::max()) throw ConfigError(std::string("'") + key + "' entry out of range");
    out.push_back(static_cast<T>(raw));
  }
  return out;
}

CacheConfig cache_from_json(const json& j, const std::string& where) {
  check_keys(j, where, {"size", "line", "assoc"});
  CacheConfig c;
  read_uint(j, "size", c.size_bytes);
  read_uint(j, "line", c.line_bytes);
  read_uint(j, "assoc", c.assoc_ways);
  return c;
}

SystemConfig system_from_json(const json& j, const std::string& where) {
  check_keys(j, where, {"icache", "dcache", "freq_hz"});
  SystemConfig c;
  if (!field(j, "icache") || !field(j, "dcache") || !field(j, "freq_hz")) {
    throw ConfigError(where + " needs icache, dcache and freq_hz");
  }
  c.icache = cache_from_json(j["icache"], where + ".icache");
  c.dcache = cache_from_json(j["dcache"], where + ".dcache");
  read_uint(j, "freq_hz", c.freq_hz);
  return c;
}

ojson to_json(const CacheConfig& c) { return {{"size", c.size_bytes}, {"line", c.line_bytes}, {"assoc", c.assoc_ways}}; }

ojson to_json(const SystemConfig& c) {
  return {{"icache", to_json(c.icache)}, {"dcache", to_json(c.dcache)}, {"freq_hz", c.freq_hz}};
}

ojson to_json(const ObjectiveVector& v) {
  return {{"exec_time_s", v.exec_time_s}, {"energy_j", v.energy_j}, {"peak_temp_c", v.peak_temp_c}, {"edp", v.edp()}};
}

ojson to_json(const PhaseStats& s) { return {{"imr", s.imr}, {"dmr", s.dmr}, {"ipc", s.ipc}}; }

ojson to_json(const SyntheticSegment& s) {
  return {{"working_set_bytes", s.working_set_bytes}, {"stride_bytes", s.stride_bytes},
          {"instruction_count", s.instruction_count}, {"code_bytes", s.code_bytes},
          {"data_ratio", s.data_ratio},               {"write_fraction", s.write_fraction},
          {"random_fraction", s.random_fraction}};
}

template <class T>
ojson optional_json(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

SyntheticSegment segment_from_json(const json& j, std::size_t i) {
  const std::string where = "synthetic segment " + std::to_string(i);
  check_keys(j, where, {"working_set_bytes", "stride_bytes", "instruction_count", "code_bytes", "data_ratio",
                        "write_fraction", "random_fraction"});
  SyntheticSegment s;
  read_uint(j, "working_set_bytes", s.working_set_bytes);
  read_uint(j, "stride_bytes", s.stride_bytes);
  read_uint(j, "instruction_count", s.instruction_count);
  read_uint(j, "code_bytes", s.code_bytes);
  read_double(j, "data_ratio", s.data_ratio);
  read_double(j, "write_fraction", s.write_fraction);
  read_double(j, "random_fraction", s.random_fraction);
  return s;
}

std::vector<SyntheticSegment> segments_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("synthetic script must be a non-empty list of segments");
  std::vector<SyntheticSegment> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(segment_from_json(j[i], i));
  return out;
}

// Two small-footprint phases separated by a large streaming one; the first
// phase recurs at the end.
std::vector<SyntheticSegment> default_script() {
  SyntheticSegment compact;
  compact.instruction_count = 300'000;
  SyntheticSegment streaming;
  streaming.working_set_bytes = 256 * 1024;
  streaming.stride_bytes = 16;
  streaming.code_bytes = 2048;
  streaming.data_ratio = 0.5;
  streaming.random_fraction = 0.05;
  streaming.instruction_count = 300'000;
  SyntheticSegment branchy;
  branchy.code_bytes = 48 * 1024;
  branchy.working_set_bytes = 16 * 1024;
  branchy.data_ratio = 0.25;
  branchy.random_fraction = 0.5;
  branchy.instruction_count = 300'000;
  return {compact, streaming, branchy, compact};
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed ") + what + ": " + e.what());
  }
}

// Configuration without run-local settings (output directory, worker count),
// so reports from equivalent runs are byte-identical.
ojson config_json(const ExperimentConfig& c, bool run_local) {
  ojson ds;
  if (!c.preset.empty()) ds["preset"] = c.preset;
  ds["cache_sizes"] = c.space.cache_sizes;
  ds["line_sizes"] = c.space.line_sizes;
  ds["associativities"] = c.space.associativities;
  ds["frequencies_hz"] = c.space.frequencies_hz;
  ds["validity"] = c.space.validity.empty() ? std::string("none") : c.space.validity;
  ds["base"] = c.space.base ? to_json(*c.space.base) : ojson(nullptr);

  const auto& m = c.models;
  const auto& e = m.energy;
  ojson trace;
  if (c.trace.file) {
    trace["file"] = *c.trace.file;
  } else {
    ojson segs = ojson::array();
    for (const auto& s : c.trace.synthetic) segs.push_back(to_json(s));
    trace["synthetic"] = segs;
    trace["seed"] = c.trace.seed;
  }
  trace["address_bits"] = c.trace.address_bits;

  ojson tuning = {{"population", c.tuning.population},
                  {"generations", c.tuning.generations},
                  {"archive_size", c.tuning.archive_size},
                  {"priority", std::string(1, to_char(c.tuning.priority))},
                  {"temp_threshold_c", optional_json(c.tuning.temp_threshold_c)},
                  {"seed", c.tuning.seed}};
  if (run_local) tuning["jobs"] = c.tuning.jobs;

  ojson out = {
      {"schema_version", kSchemaVersion},
      {"design_space", ds},
      {"timing", {{"ipc_base", m.timing.ipc_base}, {"mem_latency_s", m.timing.mem_latency_s}, {"issue_width", m.timing.issue_width}}},
      {"energy",
       {{"cache_access_j", e.cache_access_j}, {"size_ref_bytes", e.size_ref_bytes}, {"size_exponent", e.size_exponent},
        {"way_factor", e.way_factor}, {"miss_byte_j", e.miss_byte_j}, {"instr_j", e.instr_j},
        {"leakage_w", e.leakage_w}, {"v_min", e.v_min}, {"v_max", e.v_max}, {"f_min_hz", e.f_min_hz},
        {"f_max_hz", e.f_max_hz}}},
      {"thermal",
       {{"r_conv_k_per_w", m.thermal.r_conv_k_per_w}, {"c_j_per_k", m.thermal.c_j_per_k},
        {"t_ambient_c", m.thermal.t_ambient_c}, {"sample_dt_s", m.thermal.sample_dt_s}}},
      {"repeat", m.repeat},
      {"runtime", {{"interval_instructions", c.runtime.interval_instructions}, {"phase_threshold", c.runtime.phase_threshold}}},
      {"tuning", tuning},
      {"overheads",
       {{"char_interval_s", c.overheads.char_interval_s}, {"dfs_transition_s", c.overheads.dfs_transition_s},
        {"cache_switch_s", c.overheads.cache_switch_s}}},
      {"trace", trace}};
  if (run_local) out["output_dir"] = c.output_dir;
  return out;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string evaluation_row(const Evaluation& e) {
  return std::to_string(e.config_index) + "," + csv_field(to_string(e.config)) + "," + std::to_string(e.config.freq_hz) + "," +
         format_number(e.objectives.exec_time_s) + "," + format_number(e.objectives.energy_j) + "," +
         format_number(e.objectives.peak_temp_c) + "," + format_number(e.objectives.edp());
}

constexpr const char* kEvaluationHeader = "config_index,config,freq_hz,exec_time_s,energy_j,peak_temp_c,edp";

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.preset = "paper-full";
  c.space = paper_full_spec();
  c.trace.synthetic = default_script();
  return c;
}

ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir) {
  const json j = parse_json(json_text, "configuration");
  check_keys(j, "configuration", {"schema_version", "seed", "output_dir", "design_space", "timing", "energy", "thermal",
                                  "repeat", "runtime", "tuning", "overheads", "trace"});
  const auto* version = field(j, "schema_version");
  if (!version) throw ConfigError("configuration lacks schema_version");
  if (!version->is_number_integer() || version->get<int>() != kSchemaVersion) {
    throw ConfigError("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  }

  ExperimentConfig c = default_config();
  std::optional<std::uint64_t> seed;
  if (field(j, "seed")) {
    std::uint64_t s = 0;
    read_uint(j, "seed", s);
    seed = s;
  }
  if (const auto* v = field(j, "output_dir")) {
    if (!v->is_string()) throw ConfigError("'output_dir' must be a string");
    c.output_dir = v->get<std::string>();
  }

  if (const auto* v = field(j, "design_space")) {
    if (v->is_string()) {
      c.preset = v->get<std::string>();
      c.space = preset_spec(c.preset);
    } else {
      check_keys(*v, "design_space",
                 {"preset", "cache_sizes", "line_sizes", "associativities", "frequencies_hz", "validity", "base"});
      c.preset.clear();
      c.space = DesignSpaceSpec{};
      if (const auto* p = field(*v, "preset")) {
        if (!p->is_string()) throw ConfigError("'preset' must be a string");
        c.preset = p->get<std::string>();
        c.space = preset_spec(c.preset);
      }
      if (field(*v, "cache_sizes")) c.space.cache_sizes = read_uint_list<std::uint32_t>(*v, "cache_sizes");
      if (field(*v, "line_sizes")) c.space.line_sizes = read_uint_list<std::uint32_t>(*v, "line_sizes");
      if (field(*v, "associativities")) c.space.associativities = read_uint_list<std::uint32_t>(*v, "associativities");
      if (field(*v, "frequencies_hz")) c.space.frequencies_hz = read_uint_list<std::uint64_t>(*v, "frequencies_hz");
      if (const auto* val = field(*v, "validity")) {
        if (!val->is_string()) throw ConfigError("'validity' must be a string");
        c.space.validity = val->get<std::string>();
      }
      if (const auto* b = field(*v, "base")) c.space.base = system_from_json(*b, "design_space.base");
    }
  }
  check_spec(c.space);
  base_config(c.space);

  auto& m = c.models;
  if (const auto* v = field(j, "timing")) {
    check_keys(*v, "timing", {"ipc_base", "mem_latency_s", "issue_width"});
    read_double(*v, "ipc_base", m.timing.ipc_base);
    read_double(*v, "mem_latency_s", m.timing.mem_latency_s);
    read_double(*v, "issue_width", m.timing.issue_width);
  }
  const auto [fmin, fmax] = std::minmax_element(c.space.frequencies_hz.begin(), c.space.frequencies_hz.end());
  m.energy.f_min_hz = static_cast<double>(*fmin);
  m.energy.f_max_hz = static_cast<double>(*fmax);
  if (const auto* v = field(j, "energy")) {
    check_keys(*v, "energy", {"cache_access_j", "size_ref_bytes", "size_exponent", "way_factor", "miss_byte_j",
                              "instr_j", "leakage_w", "v_min", "v_max", "f_min_hz", "f_max_hz"});
    auto& e = m.energy;
    read_double(*v, "cache_access_j", e.cache_access_j);
    read_double(*v, "size_ref_bytes", e.size_ref_bytes);
    read_double(*v, "size_exponent", e.size_exponent);
    read_double(*v, "way_factor", e.way_factor);
    read_double(*v, "miss_byte_j", e.miss_byte_j);
    read_double(*v, "instr_j", e.instr_j);
    read_double(*v, "leakage_w", e.leakage_w);
    read_double(*v, "v_min", e.v_min);
    read_double(*v, "v_max", e.v_max);
    read_double(*v, "f_min_hz", e.f_min_hz);
    read_double(*v, "f_max_hz", e.f_max_hz);
  }
  if (const auto* v = field(j, "thermal")) {
    check_keys(*v, "thermal", {"r_conv_k_per_w", "c_j_per_k", "t_ambient_c", "sample_dt_s"});
    read_double(*v, "r_conv_k_per_w", m.thermal.r_conv_k_per_w);
    read_double(*v, "c_j_per_k", m.thermal.c_j_per_k);
    read_double(*v, "t_ambient_c", m.thermal.t_ambient_c);
    read_double(*v, "sample_dt_s", m.thermal.sample_dt_s);
  }
  read_double(j, "repeat", m.repeat);
  check_params(m);
  for (auto f : c.space.frequencies_hz) voltage(static_cast<double>(f), m.energy);

  if (const auto* v = field(j, "runtime")) {
    check_keys(*v, "runtime", {"interval_instructions", "phase_threshold"});
    read_uint(*v, "interval_instructions", c.runtime.interval_instructions);
    read_double(*v, "phase_threshold", c.runtime.phase_threshold);
  }
  if (c.runtime.interval_instructions == 0) throw ConfigError("interval_instructions must be positive");
  if (!(c.runtime.phase_threshold >= 0.0) || !std::isfinite(c.runtime.phase_threshold)) {
    throw ConfigError("phase_threshold must be finite and non-negative");
  }

  if (seed) c.tuning.seed = *seed;
  if (const auto* v = field(j, "tuning")) {
    check_keys(*v, "tuning", {"population", "generations", "archive_size", "priority", "temp_threshold_c", "seed", "jobs"});
    read_uint(*v, "population", c.tuning.population);
    read_uint(*v, "generations", c.tuning.generations);
    read_uint(*v, "archive_size", c.tuning.archive_size);
    read_uint(*v, "seed", c.tuning.seed);
    read_uint(*v, "jobs", c.tuning.jobs);
    if (const auto* p = field(*v, "priority")) {
      if (!p->is_string()) throw ConfigError("'priority' must be a string");
      c.tuning.priority = parse_priority(p->get<std::string>());
    }
    if (const auto* t = field(*v, "temp_threshold_c")) {
      if (!t->is_number()) throw ConfigError("'temp_threshold_c' must be a number or null");
      c.tuning.temp_threshold_c = t->get<double>();
    }
  }
  check_params(c.tuning);

  if (const auto* v = field(j, "overheads")) {
    check_keys(*v, "overheads", {"char_interval_s", "dfs_transition_s", "cache_switch_s"});
    read_double(*v, "char_interval_s", c.overheads.char_interval_s);
    read_double(*v, "dfs_transition_s", c.overheads.dfs_transition_s);
    read_double(*v, "cache_switch_s", c.overheads.cache_switch_s);
  }
  check_params(c.overheads);

  if (seed) c.trace.seed = *seed;
  if (const auto* v = field(j, "trace")) {
    check_keys(*v, "trace", {"file", "synthetic", "seed", "address_bits"});
    const auto* file = field(*v, "file");
    const auto* synthetic = field(*v, "synthetic");
    if (file && synthetic) throw ConfigError("trace takes either 'file' or 'synthetic', not both");
    if (file) {
      if (!file->is_string()) throw ConfigError("'file' must be a string");
      std::filesystem::path p = file->get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      c.trace.file = p.lexically_normal().string();
      c.trace.synthetic.clear();
    }
    if (synthetic) c.trace.synthetic = segments_from_json(*synthetic);
    read_uint(*v, "seed", c.trace.seed);
    read_uint(*v, "address_bits", c.trace.address_bits);
  }
  if (c.trace.address_bits < 1 || c.trace.address_bits > 64) throw ConfigError("address_bits must lie in [1, 64]");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  const auto text = read_file(path);
  return parse_config(text, std::filesystem::path(path).parent_path().string());
}

std::string config_to_json(const ExperimentConfig& config) { return dump(config_json(config, true)); }

TraceSource parse_synthetic_script(std::string_view json_text) {
  const json j = parse_json(json_text, "synthetic script");
  TraceSource src;
  if (j.is_array()) {
    src.synthetic = segments_from_json(j);
    return src;
  }
  check_keys(j, "synthetic script", {"segments", "seed"});
  if (!field(j, "segments")) throw ConfigError("synthetic script lacks 'segments'");
  src.synthetic = segments_from_json(j["segments"]);
  read_uint(j, "seed", src.seed);
  return src;
}

Trace load_trace(const TraceSource& source) {
  if (source.file) return parse_trace_file(*source.file, source.address_bits);
  return generate_synthetic(source.synthetic, source.seed);
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string run_report_json(const RunReport& report, const ExperimentConfig& config) {
  ojson phases = ojson::array();
  for (const auto& p : report.phases) {
    phases.push_back({{"phase_id", p.phase_id},
                      {"stats", to_json(p.stats)},
                      {"intervals", p.intervals},
                      {"occurrences", p.occurrences},
                      {"config_index", p.choice.chosen.config_index},
                      {"config", to_json(p.choice.chosen.config)},
                      {"label", to_string(p.choice.chosen.config)},
                      {"characterized", p.choice.characterized},
                      {"evaluations", p.choice.evaluations},
                      {"seed_evaluations", p.choice.seed_evaluations},
                      {"history_id", optional_json(p.choice.history_id)},
                      {"warm_start_phase", optional_json(p.choice.warm_start_phase)},
                      {"archive_size", p.choice.archive_size},
                      {"feasible", p.choice.feasible},
                      {"characterized_objectives", to_json(p.choice.chosen.objectives)},
                      {"executed", to_json(p.executed)}});
  }
  ojson occurrences = ojson::array();
  for (const auto& o : report.occurrences) {
    occurrences.push_back({{"phase_id", o.phase_id},
                           {"first_interval", o.first_interval},
                           {"interval_count", o.interval_count},
                           {"config_index", o.config_index},
                           {"start_time_s", o.start_time_s},
                           {"reconfigured", o.reconfigured},
                           {"objectives", to_json(o.objectives)}});
  }
  const auto& t = report.totals;
  ojson out = {{"schema_version", kSchemaVersion},
               {"kind", report.kind},
               {"ok", report.ok},
               {"error", report.ok ? ojson(nullptr) : ojson(report.error)},
               {"failed_phase", optional_json(report.failed_phase)},
               {"priority", std::string(1, to_char(config.tuning.priority))},
               {"temp_threshold_c", optional_json(config.tuning.temp_threshold_c)},
               {"space_size", report.space_size},
               {"interval_count", report.interval_count},
               {"phases", phases},
               {"occurrences", occurrences},
               {"totals",
                {{"exec_time_s", t.exec_time_s},
                 {"energy_j", t.energy_j},
                 {"edp", t.edp},
                 {"peak_temp_c", t.peak_temp_c},
                 {"mean_temp_c", t.mean_temp_c},
                 {"tuning_overhead_s", t.tuning_overhead_s},
                 {"total_time_s", t.total_time_s},
                 {"evaluations_performed", t.evaluations_performed},
                 {"reconfiguration_count", t.reconfiguration_count}}},
               {"config", config_json(config, false)}};
  return dump(out);
}

std::string phases_csv(const RunReport& report, const DesignSpace& space) {
  std::string out =
      "phase_id,imr,dmr,ipc,intervals,occurrences,config_index,config,freq_hz,characterized,evaluations,feasible,"
      "exec_time_s,energy_j,peak_temp_c,edp\n";
  for (const auto& p : report.phases) {
    const auto& c = space.at(p.choice.chosen.config_index);
    out += std::to_string(p.phase_id) + "," + format_number(p.stats.imr) + "," + format_number(p.stats.dmr) + "," +
           format_number(p.stats.ipc) + "," + std::to_string(p.intervals.size()) + "," + std::to_string(p.occurrences) +
           "," + std::to_string(p.choice.chosen.config_index) + "," + csv_field(to_string(c)) + "," +
           std::to_string(c.freq_hz) + "," + (p.choice.characterized ? "1" : "0") + "," +
           std::to_string(p.choice.evaluations) + "," + (p.choice.feasible ? "1" : "0") + "," +
           format_number(p.executed.exec_time_s) + "," + format_number(p.executed.energy_j) + "," +
           format_number(p.executed.peak_temp_c) + "," + format_number(p.executed.edp()) + "\n";
  }
  return out;
}

std::string occurrences_csv(const RunReport& report, const DesignSpace& space) {
  std::string out =
      "phase_id,first_interval,interval_count,config_index,config,reconfigured,start_time_s,exec_time_s,energy_j,"
      "peak_temp_c\n";
  for (const auto& o : report.occurrences) {
    out += std::to_string(o.phase_id) + "," + std::to_string(o.first_interval) + "," + std::to_string(o.interval_count) +
           "," + std::to_string(o.config_index) + "," + csv_field(to_string(space.at(o.config_index))) + "," +
           (o.reconfigured ? "1" : "0") + "," + format_number(o.start_time_s) + "," +
           format_number(o.objectives.exec_time_s) + "," + format_number(o.objectives.energy_j) + "," +
           format_number(o.objectives.peak_temp_c) + "\n";
  }
  return out;
}

std::string thermal_csv(std::span<const TempSample> samples) {
  std::string out = "time_s,temp_c\n";
  for (const auto& s : samples) out += format_number(s.time_s) + "," + format_number(s.temp_c) + "\n";
  return out;
}

std::string space_csv(const DesignSpace& space) {
  std::string out =
      "index,icache_size,icache_line,icache_assoc,dcache_size,dcache_line,dcache_assoc,freq_hz,label\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& c = space.at(i);
    out += std::to_string(i) + "," + std::to_string(c.icache.size_bytes) + "," + std::to_string(c.icache.line_bytes) +
           "," + std::to_string(c.icache.assoc_ways) + "," + std::to_string(c.dcache.size_bytes) + "," +
           std::to_string(c.dcache.line_bytes) + "," + std::to_string(c.dcache.assoc_ways) + "," +
           std::to_string(c.freq_hz) + "," + csv_field(to_string(c)) + "\n";
  }
  return out;
}

std::string evaluations_csv(std::span<const Evaluation> evaluations) {
  std::string out = std::string(kEvaluationHeader) + "\n";
  for (const auto& e : evaluations) out += evaluation_row(e) + "\n";
  return out;
}

std::string fronts_csv(const std::map<int, ParetoFront>& fronts) {
  std::string out = std::string("phase_id,") + kEvaluationHeader + "\n";
  for (const auto& [id, front] : fronts) {
    for (const auto& e : front.members) out += std::to_string(id) + "," + evaluation_row(e) + "\n";
  }
  return out;
}

std::string temp_impact_csv(const TempImpactTable& table) {
  std::string out = "parameter,value,config,peak_temp_c,delta_c\n";
  for (const auto& r : table.rows) {
    out += r.parameter + "," + std::to_string(r.value) + "," + csv_field(to_string(r.config)) + "," +
           format_number(r.peak_temp_c) + "," + format_number(r.delta_c) + "\n";
  }
  return out;
}

std::string temp_ranking_csv(const TempImpactTable& table) {
  std::string out = "source,rank,parameter,max_abs_delta_c\n";
  for (std::size_t i = 0; i < table.ranking.size(); ++i) {
    out += "model," + std::to_string(i + 1) + "," + table.ranking[i].parameter + "," +
           format_number(table.ranking[i].max_abs_delta_c) + "\n";
  }
  // Reference measurements, for comparison by eye.
  out += "reference,1,line,17.5\nreference,2,assoc,15.8\nreference,3,size,2\n";
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "population,generations,archive_size,evaluations,budget_pct,edp,tuning_overhead_s\n";
  for (const auto& r : rows) {
    out += std::to_string(r.point.population) + "," + std::to_string(r.point.generations) + "," +
           std::to_string(r.point.archive_size) + "," + std::to_string(r.evaluations) + "," +
           format_number(r.budget_pct) + "," + format_number(r.edp) + "," + format_number(r.tuning_overhead_s) + "\n";
  }
  return out;
}

std::string history_to_json(const PhaseHistoryTable& history) {
  ojson entries = ojson::array();
  for (const auto& [id, e] : history.entries()) {
    ojson archive = ojson::array();
    for (const auto& m : e.archive) {
      archive.push_back({{"config", to_json(m.config)},
                         {"objectives",
                          {{"exec_time_s", m.objectives.exec_time_s},
                           {"energy_j", m.objectives.energy_j},
                           {"peak_temp_c", m.objectives.peak_temp_c}}}});
    }
    entries.push_back(
        {{"phase_id", id}, {"stats", to_json(e.stats)}, {"best_config", to_json(e.best_config)}, {"archive", archive}});
  }
  return dump({{"schema_version", kSchemaVersion}, {"issue_width", history.issue_width()}, {"entries", entries}});
}

PhaseHistoryTable history_from_json(std::string_view json_text, const DesignSpace& space, double issue_width) {
  const json j = parse_json(json_text, "history");
  check_keys(j, "history", {"schema_version", "issue_width", "entries"});
  const auto* version = field(j, "schema_version");
  if (!version || !version->is_number_integer() || version->get<int>() != kSchemaVersion) {
    throw ConfigError("unsupported history schema_version");
  }
  double stored_width = issue_width;
  read_double(j, "issue_width", stored_width);
  if (stored_width != issue_width) throw ConfigError("history was recorded with a different issue width");
  PhaseHistoryTable table(issue_width);
  const auto* entries = field(j, "entries");
  if (!entries) return table;
  if (!entries->is_array()) throw ConfigError("history entries must be a list");
  for (const auto& item : *entries) {
    check_keys(item, "history entry", {"phase_id", "stats", "best_config", "archive"});
    PhaseHistoryEntry e;
    const auto* id = field(item, "phase_id");
    if (!id || !id->is_number_integer()) throw ConfigError("history entry needs an integer phase_id");
    e.phase_id = id->get<int>();
    if (!field(item, "stats") || !field(item, "best_config") || !field(item, "archive")) {
      throw ConfigError("history entry needs stats, best_config and archive");
    }
    const auto& st = item["stats"];
    check_keys(st, "history stats", {"imr", "dmr", "ipc"});
    read_double(st, "imr", e.stats.imr);
    read_double(st, "dmr", e.stats.dmr);
    read_double(st, "ipc", e.stats.ipc);
    e.best_config = system_from_json(item["best_config"], "best_config");
    if (!item["archive"].is_array()) throw ConfigError("history archive must be a list");
    for (const auto& a : item["archive"]) {
      check_keys(a, "archive member", {"config", "objectives"});
      Evaluation ev;
      if (!field(a, "config") || !field(a, "objectives")) throw ConfigError("archive member needs config and objectives");
      ev.config = system_from_json(a["config"], "archive member config");
      const auto index = space.index_of(ev.config);
      if (!index) throw ConfigError("history configuration " + to_string(ev.config) + " is not in the design space");
      ev.config_index = *index;
      const auto& o = a["objectives"];
      check_keys(o, "archive objectives", {"exec_time_s", "energy_j", "peak_temp_c", "edp"});
      read_double(o, "exec_time_s", ev.objectives.exec_time_s);
      read_double(o, "energy_j", ev.objectives.energy_j);
      read_double(o, "peak_temp_c", ev.objectives.peak_temp_c);
      e.archive.push_back(ev);
    }
    try {
      table.store(std::move(e));
    } catch (const InvariantError& err) {
      throw ConfigError(std::string("invalid history entry: ") + err.what());
    }
  }
  return table;
}

std::vector<CompareRow> compare_reports(std::string_view report_a, std::string_view report_b) {
  const json a = parse_json(report_a, "report");
  const json b = parse_json(report_b, "report");
  auto objectives = [](const json& o) {
    if (!o.is_object()) throw ConfigError("report objectives must be objects");
    ObjectiveVector v;
    read_double(o, "exec_time_s", v.exec_time_s);
    read_double(o, "energy_j", v.energy_j);
    read_double(o, "peak_temp_c", v.peak_temp_c);
    return v;
  };
  auto phases = [&](const json& r) {
    std::map<int, ObjectiveVector> out;
    const auto* list = field(r, "phases");
    if (!list || !list->is_array()) throw ConfigError("report lacks a phases list");
    for (const auto& p : *list) {
      const auto* id = field(p, "phase_id");
      const auto* ex = field(p, "executed");
      if (!id || !id->is_number_integer() || !ex) throw ConfigError("report phase lacks phase_id or executed");
      out[id->get<int>()] = objectives(*ex);
    }
    return out;
  };
  auto ratio = [](double x, double y) { return x == y ? 1.0 : x / y; };
  auto row = [&](std::string scope, int id, const ObjectiveVector& x, const ObjectiveVector& y) {
    return CompareRow{std::move(scope), id, ratio(x.exec_time_s, y.exec_time_s), ratio(x.energy_j, y.energy_j),
                      ratio(x.peak_temp_c, y.peak_temp_c), ratio(x.edp(), y.edp())};
  };
  if (!a.is_object() || !b.is_object() || !field(a, "totals") || !field(b, "totals")) {
    throw ConfigError("reports must carry totals");
  }
  const auto pa = phases(a);
  const auto pb = phases(b);
  std::vector<CompareRow> rows;
  for (const auto& [id, x] : pa) {
    if (auto it = pb.find(id); it != pb.end()) rows.push_back(row("phase", id, x, it->second));
  }
  rows.push_back(row("total", -1, objectives(a["totals"]), objectives(b["totals"])));
  return rows;
}

std::string compare_csv(std::span<const CompareRow> rows) {
  std::string out = "scope,phase_id,time_ratio,energy_ratio,peak_temp_ratio,edp_ratio\n";
  for (const auto& r : rows) {
    out += r.scope + "," + (r.phase_id >= 0 ? std::to_string(r.phase_id) : std::string()) + "," +
           format_number(r.time_ratio) + "," + format_number(r.energy_ratio) + "," + format_number(r.peak_temp_ratio) +
           "," + format_number(r.edp_ratio) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create directory for '" + path + "': " + ec.message());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace thermotune
