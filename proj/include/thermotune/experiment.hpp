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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thermotune/design_space.hpp"
#include "thermotune/optimizer.hpp"
#include "thermotune/runtime.hpp"

namespace thermotune {

// Non-dominated subset of `evaluations`, in config index order. Sorting by
// (time, energy, temperature) first means a dominator always precedes the
// point it dominates, so each point is only checked against kept ones.
std::vector<Evaluation> pareto_filter(std::span<const Evaluation> evaluations);

struct ParetoFront {
  std::vector<Evaluation> members;
  std::vector<Evaluation> evaluated;  // the whole space, index order
};

// Evaluates every configuration (on up to `jobs` threads) and returns the
// exact front.
ParetoFront exhaustive_pareto(const Evaluator& evaluator, const DesignSpace& space, unsigned jobs = 1);

enum class BaselineKind { kDfsOnly, kCacheOnly, kBase };

// "dfs-only", "cache-only", "base"; throws ConfigError otherwise.
BaselineKind parse_baseline_kind(std::string_view text);
std::string to_string(BaselineKind kind);

// Indices a baseline searches: all frequencies with the base caches
// (dfs-only), all cache pairs at the base frequency (cache-only), or the base
// configuration alone.
std::vector<std::size_t> baseline_candidates(BaselineKind kind, const DesignSpace& space);

struct BaselineResult {
  Selection selection;
  std::size_t evaluations = 0;
};

BaselineResult baseline(BaselineKind kind, const Evaluator& evaluator, const DesignSpace& space, Priority priority,
                        std::optional<double> temp_threshold_c = std::nullopt, unsigned jobs = 1);

struct TempImpactRow {
  std::string parameter;  // "base", "size", "line", "assoc"
  std::uint32_t value = 0;
  SystemConfig config;
  double peak_temp_c = 0.0;
  double delta_c = 0.0;  // peak_temp_c - base peak
};

struct TempImpactRank {
  std::string parameter;
  double max_abs_delta_c = 0.0;
};

struct TempImpactTable {
  std::vector<TempImpactRow> rows;
  std::vector<TempImpactRank> ranking;  // largest impact first
};

// Varies cache size, line size and associativity one at a time from the base
// configuration, applying each value to both caches. Variants outside the
// space are skipped.
TempImpactTable temp_impact_sweep(const Evaluator& evaluator, const DesignSpace& space);

struct SweepPoint {
  std::size_t population = 0;
  std::size_t generations = 0;
  std::size_t archive_size = 0;
};

struct SweepRow {
  SweepPoint point;
  std::size_t evaluations = 0;
  double budget_pct = 0.0;
  double edp = 0.0;  // priority-S selection
  double tuning_overhead_s = 0.0;
};

// Parses "s:g:a,s:g:a,..."; throws ConfigError on malformed input.
std::vector<SweepPoint> parse_sweep_grid(std::string_view text);
std::vector<SweepPoint> default_sweep_grid();

// Tunes the phase once per grid point (empty history, fixed seed,
// priority S, no threshold).
std::vector<SweepRow> param_sweep(const Evaluator& evaluator, const DesignSpace& space,
                                  std::span<const SweepPoint> grid, const TuningParams& base_params,
                                  const OverheadParams& overheads);

// Whole-trace counterparts of `tune`: each phase is decided on its first
// occurrence by exhaustive search (fronts collected per phase id when
// `fronts` is given) or by a baseline, then executed like a tuned run.
RunReport run_exhaustive(const RunInputs& inputs, Priority priority, std::optional<double> temp_threshold_c,
                         unsigned jobs, std::map<int, ParetoFront>* fronts = nullptr);
RunReport run_baseline(const RunInputs& inputs, BaselineKind kind, Priority priority,
                       std::optional<double> temp_threshold_c, unsigned jobs);

}  // namespace thermotune
