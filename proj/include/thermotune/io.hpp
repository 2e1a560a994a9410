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

// Experiment configuration documents, report serialization and CSV tables.
// Numbers in CSV files use "%.10g"; JSON numbers round-trip exactly.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thermotune/design_space.hpp"
#include "thermotune/experiment.hpp"
#include "thermotune/phase.hpp"
#include "thermotune/runtime.hpp"
#include "thermotune/trace.hpp"

namespace thermotune {

inline constexpr int kSchemaVersion = 1;

struct TraceSource {
  std::optional<std::string> file;  // resolved against the config directory
  std::vector<SyntheticSegment> synthetic;
  std::uint64_t seed = 7;
  unsigned address_bits = 32;
};

struct ExperimentConfig {
  std::string preset;  // empty for an explicit design space
  DesignSpaceSpec space;
  ModelParams models;
  RuntimeParams runtime;
  TuningParams tuning;
  OverheadParams overheads;
  TraceSource trace;
  std::string output_dir = "out";
};

// Parses and validates a configuration document. Relative trace paths are
// resolved against `base_dir`. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir = "");
ExperimentConfig load_config(const std::string& path);
ExperimentConfig default_config();

// Resolved configuration as a JSON document accepted by parse_config.
std::string config_to_json(const ExperimentConfig& config);

// A synthetic script document: either a list of segments or an object with
// "segments" and an optional "seed".
TraceSource parse_synthetic_script(std::string_view json_text);

Trace load_trace(const TraceSource& source);

// Text helpers shared by the writers.
std::string format_number(double v);
std::string csv_field(std::string_view text);

std::string run_report_json(const RunReport& report, const ExperimentConfig& config);
std::string phases_csv(const RunReport& report, const DesignSpace& space);
std::string occurrences_csv(const RunReport& report, const DesignSpace& space);
std::string thermal_csv(std::span<const TempSample> samples);

std::string space_csv(const DesignSpace& space);
std::string evaluations_csv(std::span<const Evaluation> evaluations);
std::string fronts_csv(const std::map<int, ParetoFront>& fronts);
std::string temp_impact_csv(const TempImpactTable& table);
std::string temp_ranking_csv(const TempImpactTable& table);
std::string sweep_csv(std::span<const SweepRow> rows);

// History persistence. Archive members are stored with their configuration;
// indices are recomputed against `space` on import, and members outside the
// space are rejected with ConfigError.
std::string history_to_json(const PhaseHistoryTable& history);
PhaseHistoryTable history_from_json(std::string_view json_text, const DesignSpace& space, double issue_width);

struct CompareRow {
  std::string scope;  // "phase" or "total"
  int phase_id = -1;
  double time_ratio = 1.0;
  double energy_ratio = 1.0;
  double peak_temp_ratio = 1.0;
  double edp_ratio = 1.0;
};

// Ratios a/b of executed objectives, per phase id present in both reports
// and for the totals. 0/0 is reported as 1. Throws ConfigError on malformed
// reports.
std::vector<CompareRow> compare_reports(std::string_view report_a, std::string_view report_b);
std::string compare_csv(std::span<const CompareRow> rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace thermotune
