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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thermotune/cache_sim.hpp"
#include "thermotune/design_space.hpp"
#include "thermotune/models.hpp"
#include "thermotune/optimizer.hpp"
#include "thermotune/phase.hpp"
#include "thermotune/thermal.hpp"
#include "thermotune/trace.hpp"

namespace thermotune {

// Model stack shared by characterization and execution. `repeat` is the
// number of back-to-back executions each phase occurrence stands for; it
// stretches simulated traces to durations comparable with the thermal time
// constant.
struct ModelParams {
  TimingParams timing;
  EnergyParams energy;
  ThermalParams thermal;
  double repeat = 2000.0;
};

void check_params(const ModelParams& p);

struct RuntimeParams {
  std::uint64_t interval_instructions = 100'000;
  double phase_threshold = 0.1;
};

struct OverheadParams {
  double char_interval_s = 0.010;       // charged per evaluated configuration
  double dfs_transition_s = 18.24e-6;   // per reconfiguration
  double cache_switch_s = 0.0;          // per reconfiguration
};

void check_params(const OverheadParams& p);

// evaluations * char_interval_s + reconfigurations * (dfs + cache switch).
double tuning_overhead(std::size_t evaluations, std::size_t reconfigurations, const OverheadParams& overheads);

// Steady-state cache statistics of a segment that repeats: the segment runs
// once to warm the caches and the second pass is measured. The two caches
// are independent, so results are memoized per cache geometry. Thread-safe.
class SegmentCacheModel {
 public:
  explicit SegmentCacheModel(std::span<const MemAccess> segment);

  CacheStats stats(const CacheConfig& icache, const CacheConfig& dcache) const;
  std::uint64_t instruction_count() const noexcept { return instructions_; }
  std::span<const MemAccess> segment() const noexcept { return segment_; }

 private:
  struct Side {
    std::uint64_t accesses = 0;
    std::uint64_t misses = 0;
    std::uint64_t writebacks = 0;
  };
  Side side(const CacheConfig& config, bool instruction) const;

  std::span<const MemAccess> segment_;
  std::uint64_t instructions_ = 0;
  mutable std::mutex mu_;
  mutable std::map<CacheConfig, Side> icache_;
  mutable std::map<CacheConfig, Side> dcache_;
};

// Costs of running a phase segment (repeated ModelParams::repeat times) under
// a configuration, starting from a given thermal state.
class PhaseEvaluator {
 public:
  PhaseEvaluator(std::span<const MemAccess> segment, const ModelParams& models, ThermalState initial);

  ObjectiveVector operator()(const SystemConfig& config) const;
  Evaluator as_evaluator() const;
  const SegmentCacheModel& cache_model() const noexcept { return cache_; }

 private:
  SegmentCacheModel cache_;
  ModelParams models_;
  ThermalState initial_;
};

// Intervals, base-configuration statistics and phase structure of a trace.
struct PhaseOccurrence {
  int phase_id = 0;
  std::size_t first_interval = 0;
  std::size_t interval_count = 0;
  std::size_t begin = 0;  // access offsets into the trace
  std::size_t end = 0;
};

struct TraceAnalysis {
  std::vector<Interval> intervals;
  std::vector<CacheStats> base_stats;
  std::vector<PhaseStats> interval_stats;
  std::vector<Phase> phases;
  std::vector<int> interval_phase;
  std::vector<PhaseOccurrence> occurrences;
};

// Throws ConfigError when the space has no base configuration.
TraceAnalysis analyze(std::span<const MemAccess> trace, const DesignSpace& space, const ModelParams& models,
                      const RuntimeParams& runtime);

// Decision for one phase, made on its first occurrence.
struct PhaseChoice {
  Evaluation chosen;
  bool feasible = true;
  std::size_t evaluations = 0;
  std::size_t seed_evaluations = 0;  // part of `evaluations` spent re-evaluating a warm-start archive
  bool characterized = false;  // false when reused from history
  std::optional<int> history_id;
  std::optional<int> warm_start_phase;
  std::size_t archive_size = 0;
};

struct PhaseContext {
  int phase_id = 0;
  PhaseStats stats;
  const PhaseEvaluator& evaluator;
  const DesignSpace& space;
};

using ChoiceStrategy = std::function<PhaseChoice(const PhaseContext&)>;

struct PhaseResult {
  int phase_id = 0;
  PhaseStats stats;
  std::vector<std::size_t> intervals;
  PhaseChoice choice;
  ObjectiveVector executed;  // summed time/energy, max peak over occurrences
  std::size_t occurrences = 0;
};

struct OccurrenceResult {
  int phase_id = 0;
  std::size_t first_interval = 0;
  std::size_t interval_count = 0;
  std::size_t config_index = 0;
  double start_time_s = 0.0;
  ObjectiveVector objectives;
  bool reconfigured = false;
};

struct RunTotals {
  double exec_time_s = 0.0;
  double energy_j = 0.0;
  double edp = 0.0;  // energy_j * exec_time_s
  double peak_temp_c = 0.0;
  double mean_temp_c = 0.0;
  double tuning_overhead_s = 0.0;
  double total_time_s = 0.0;  // exec_time_s + tuning_overhead_s
  std::size_t evaluations_performed = 0;
  std::size_t reconfiguration_count = 0;
};

struct RunReport {
  std::string kind = "tune";
  bool ok = true;
  std::string error;
  std::optional<int> failed_phase;
  std::size_t space_size = 0;
  std::size_t interval_count = 0;
  std::vector<PhaseResult> phases;
  std::vector<OccurrenceResult> occurrences;
  RunTotals totals;
  std::vector<TempSample> thermal_samples;
};

struct RunInputs {
  std::span<const MemAccess> trace;
  const DesignSpace& space;
  ModelParams models;
  RuntimeParams runtime;
  OverheadParams overheads;
};

// Walks the trace's phase occurrences in order. Each phase is decided once,
// on its first occurrence, by `strategy` (evaluator starts from the thermal
// state at that point); every occurrence is then executed under its phase's
// configuration. The system starts on the base configuration; each change
// of configuration at an occurrence boundary counts as one reconfiguration.
// A TuningError from the strategy ends the run with a partial report.
RunReport run_with(const RunInputs& inputs, const ChoiceStrategy& strategy, std::string kind);

// The full characterization loop: phases found in `history` within the
// phase threshold reuse the stored configuration, others are tuned and
// stored.
RunReport run(const RunInputs& inputs, const TuningParams& tuning, PhaseHistoryTable& history);

}  // namespace thermotune
