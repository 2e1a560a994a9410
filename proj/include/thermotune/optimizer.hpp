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

// Strength-Pareto characterization of one phase: random uniform populations,
// an elitist bounded archive warm-started from the most similar known phase,
// and priority/threshold selection of the final configuration.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "thermotune/design_space.hpp"
#include "thermotune/models.hpp"
#include "thermotune/phase.hpp"

namespace thermotune {

// Selection objective: S = energy-delay product, N = energy,
// T = peak temperature, X = execution time.
enum class Priority : char { kEdp = 'S', kEnergy = 'N', kTemperature = 'T', kTime = 'X' };

// Accepts "S", "N", "T", "X" (case-insensitive); throws ConfigError otherwise.
Priority parse_priority(std::string_view text);
inline char to_char(Priority q) noexcept { return static_cast<char>(q); }
double priority_value(const ObjectiveVector& v, Priority q) noexcept;

struct TuningParams {
  std::size_t population = 20;
  std::size_t generations = 3;
  std::size_t archive_size = 5;
  Priority priority = Priority::kEdp;
  std::optional<double> temp_threshold_c;
  std::uint64_t seed = 1;
  unsigned jobs = 1;  // concurrent evaluator calls within a generation
};

void check_params(const TuningParams& p);

using Archive = std::vector<Evaluation>;

// Minimization dominance: a <= b everywhere and a < b somewhere. Throws
// DomainError when a component of either vector is not finite.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct FitnessRecord {
  std::size_t strength = 0;   // members this one dominates
  std::uint64_t fitness = 0;  // sum of the strengths of its dominators
};

std::size_t strength(std::size_t member, std::span<const Evaluation> pool);
FitnessRecord fitness(std::size_t member, std::span<const Evaluation> pool);

// Strength and fitness of every member from one m x (m - 1) sweep of ordered
// dominance checks; `dominance_checks` receives the count performed.
std::vector<FitnessRecord> fitness_pass(std::span<const Evaluation> pool, std::size_t* dominance_checks = nullptr);

struct ArchiveUpdateStats {
  std::size_t truncated = 0;  // non-dominated members removed for density
  std::size_t filled = 0;     // dominated members added to reach capacity
};

// U = population + archive, deduplicated by config index. Keeps every
// non-dominated member of U; above capacity, repeatedly drops the member
// whose sorted distances to the others (objectives min-max normalized over
// the non-dominated set) are lexicographically smallest, higher config index
// first on ties; below capacity, adds dominated members in order of fitness,
// then config index. Result has min(archive_size, |U|) members in config
// index order.
Archive update_archive(std::span<const Evaluation> population, std::span<const Evaluation> archive,
                       std::size_t archive_size, ArchiveUpdateStats* stats = nullptr);

struct Selection {
  Evaluation best;
  bool feasible = true;  // false when no member met the temperature threshold
};

// Among members with peak_temp <= threshold (all when unset), the minimum
// of the priority objective; ties go to lower EDP, then the
// lexicographically smaller (time, energy, temperature), then lower config
// index. With no feasible member, the coolest member, flagged infeasible.
// Throws InvariantError on an empty archive.
Selection select_best(std::span<const Evaluation> archive, Priority priority,
                      std::optional<double> temp_threshold_c = std::nullopt);

// Costs of one configuration on the phase being tuned. Must be
// deterministic; called concurrently when TuningParams::jobs > 1.
using Evaluator = std::function<ObjectiveVector(const SystemConfig& config, std::size_t config_index)>;

struct TuneResult {
  Selection selection;
  Archive archive;
  std::vector<Evaluation> evaluated;      // every evaluated config, index order
  std::size_t evaluations_performed = 0;  // evaluator calls (== evaluated.size())
  std::size_t population_evaluations = 0;
  std::size_t seed_evaluations = 0;       // re-evaluated warm-start archive members
  std::size_t truncations = 0;            // across all generations
  std::optional<int> warm_start_phase;
};

// Characterizes one phase. With a non-empty history the first generation's
// archive is the most similar entry's archive, re-evaluated on this phase.
// Evaluator calls are memoized per config. Evaluator exceptions surface as
// TuningError naming the phase and config.
TuneResult tapt_tune(int phase_id, const PhaseStats& phase_stats, const Evaluator& evaluator,
                     const DesignSpace& space, const TuningParams& params,
                     const PhaseHistoryTable* history = nullptr);

}  // namespace thermotune
