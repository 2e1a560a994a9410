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

#include "thermotune/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "thermotune/errors.hpp"
#include "thermotune/parallel.hpp"

namespace thermotune {

namespace {

std::vector<Evaluation> evaluate_all(const Evaluator& evaluator, const DesignSpace& space,
                                     std::span<const std::size_t> indices, unsigned jobs) {
  std::vector<Evaluation> out(indices.size());
  parallel_for(indices.size(), jobs, [&](std::size_t k) {
    const auto i = indices[k];
    out[k] = Evaluation{i, space.at(i), evaluator(space.at(i), i)};
  });
  return out;
}

}  // namespace

std::vector<Evaluation> pareto_filter(std::span<const Evaluation> evaluations) {
  std::vector<const Evaluation*> order;
  for (const auto& e : evaluations) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const Evaluation* a, const Evaluation* b) {
    const auto& x = a->objectives;
    const auto& y = b->objectives;
    if (x.exec_time_s != y.exec_time_s) return x.exec_time_s < y.exec_time_s;
    if (x.energy_j != y.energy_j) return x.energy_j < y.energy_j;
    if (x.peak_temp_c != y.peak_temp_c) return x.peak_temp_c < y.peak_temp_c;
    return a->config_index < b->config_index;
  });
  std::vector<Evaluation> front;
  for (const auto* e : order) {
    const bool dominated = std::any_of(front.begin(), front.end(),
                                       [&](const Evaluation& f) { return dominates(f.objectives, e->objectives); });
    if (!dominated) front.push_back(*e);
  }
  std::sort(front.begin(), front.end(), [](const Evaluation& a, const Evaluation& b) { return a.config_index < b.config_index; });
  return front;
}

ParetoFront exhaustive_pareto(const Evaluator& evaluator, const DesignSpace& space, unsigned jobs) {
  std::vector<std::size_t> all(space.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  ParetoFront pf;
  pf.evaluated = evaluate_all(evaluator, space, all, jobs);
  pf.members = pareto_filter(pf.evaluated);
  return pf;
}

BaselineKind parse_baseline_kind(std::string_view text) {
  if (text == "dfs-only") return BaselineKind::kDfsOnly;
  if (text == "cache-only") return BaselineKind::kCacheOnly;
  if (text == "base") return BaselineKind::kBase;
  throw ConfigError("baseline kind must be dfs-only, cache-only or base (got '" + std::string(text) + "')");
}

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kDfsOnly: return "dfs-only";
    case BaselineKind::kCacheOnly: return "cache-only";
    case BaselineKind::kBase: break;
  }
  return "base";
}

std::vector<std::size_t> baseline_candidates(BaselineKind kind, const DesignSpace& space) {
  const SystemConfig& base = space.base();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& c = space.at(i);
    const bool same_caches = c.icache == base.icache && c.dcache == base.dcache;
    const bool same_freq = c.freq_hz == base.freq_hz;
    if ((kind == BaselineKind::kDfsOnly && same_caches) || (kind == BaselineKind::kCacheOnly && same_freq) ||
        (kind == BaselineKind::kBase && same_caches && same_freq)) {
      out.push_back(i);
    }
  }
  return out;
}

BaselineResult baseline(BaselineKind kind, const Evaluator& evaluator, const DesignSpace& space, Priority priority,
                        std::optional<double> temp_threshold_c, unsigned jobs) {
  const auto candidates = baseline_candidates(kind, space);
  const auto evaluated = evaluate_all(evaluator, space, candidates, jobs);
  return {select_best(evaluated, priority, temp_threshold_c), evaluated.size()};
}

TempImpactTable temp_impact_sweep(const Evaluator& evaluator, const DesignSpace& space) {
  const SystemConfig& base = space.base();
  const auto base_index = *space.base_index();
  const double base_peak = evaluator(base, base_index).peak_temp_c;

  TempImpactTable table;
  table.rows.push_back({"base", 0, base, base_peak, 0.0});

  struct Axis {
    const char* name;
    std::vector<std::uint32_t> values;
    std::uint32_t CacheConfig::*field;
  };
  auto sorted = [](std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto& spec = space.spec();
  const Axis axes[] = {{"size", sorted(spec.cache_sizes), &CacheConfig::size_bytes},
                       {"line", sorted(spec.line_sizes), &CacheConfig::line_bytes},
                       {"assoc", sorted(spec.associativities), &CacheConfig::assoc_ways}};
  for (const auto& axis : axes) {
    double max_abs = 0.0;
    for (auto value : axis.values) {
      if (value == base.icache.*axis.field && value == base.dcache.*axis.field) continue;
      SystemConfig c = base;
      c.icache.*axis.field = value;
      c.dcache.*axis.field = value;
      const auto index = space.index_of(c);
      if (!index) continue;
      const double peak = evaluator(c, *index).peak_temp_c;
      table.rows.push_back({axis.name, value, c, peak, peak - base_peak});
      max_abs = std::max(max_abs, std::abs(peak - base_peak));
    }
    table.ranking.push_back({axis.name, max_abs});
  }
  std::stable_sort(table.ranking.begin(), table.ranking.end(),
                   [](const TempImpactRank& a, const TempImpactRank& b) { return a.max_abs_delta_c > b.max_abs_delta_c; });
  return table;
}

std::vector<SweepPoint> parse_sweep_grid(std::string_view text) {
  std::vector<SweepPoint> grid;
  auto number = [&](std::string_view tok) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || v == 0) {
      throw ConfigError("sweep grid entries must be positive integers s:g:a (got '" + std::string(tok) + "')");
    }
    return v;
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto c1 = item.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ConfigError("sweep grid entries must look like s:g:a (got '" + std::string(item) + "')");
    grid.push_back({number(item.substr(0, c1)), number(item.substr(c1 + 1, c2 - c1 - 1)), number(item.substr(c2 + 1))});
  }
  if (grid.empty()) throw ConfigError("empty sweep grid");
  return grid;
}

std::vector<SweepPoint> default_sweep_grid() {
  std::vector<SweepPoint> grid;
  for (std::size_t s : {5, 10, 20, 40}) {
    for (std::size_t g : {1, 3, 5}) grid.push_back({s, g, 5});
  }
  grid.push_back({20, 3, 2});
  grid.push_back({20, 3, 10});
  return grid;
}

std::vector<SweepRow> param_sweep(const Evaluator& evaluator, const DesignSpace& space,
                                  std::span<const SweepPoint> grid, const TuningParams& base_params,
                                  const OverheadParams& overheads) {
  std::vector<SweepRow> rows;
  for (const auto& point : grid) {
    TuningParams p = base_params;
    p.population = point.population;
    p.generations = point.generations;
    p.archive_size = point.archive_size;
    p.priority = Priority::kEdp;
    p.temp_threshold_c.reset();
    const auto r = tapt_tune(0, PhaseStats{}, evaluator, space, p, nullptr);
    SweepRow row;
    row.point = point;
    row.evaluations = r.evaluations_performed;
    row.budget_pct = 100.0 * static_cast<double>(r.evaluations_performed) / static_cast<double>(space.size());
    row.edp = r.selection.best.objectives.edp();
    row.tuning_overhead_s = tuning_overhead(r.evaluations_performed, 0, overheads);
    rows.push_back(row);
  }
  return rows;
}

RunReport run_exhaustive(const RunInputs& inputs, Priority priority, std::optional<double> temp_threshold_c,
                         unsigned jobs, std::map<int, ParetoFront>* fronts) {
  auto strategy = [&](const PhaseContext& ctx) {
    auto pf = exhaustive_pareto(ctx.evaluator.as_evaluator(), ctx.space, jobs);
    const auto sel = select_best(pf.members, priority, temp_threshold_c);
    PhaseChoice choice;
    choice.chosen = sel.best;
    choice.feasible = sel.feasible;
    choice.evaluations = pf.evaluated.size();
    choice.characterized = true;
    choice.archive_size = pf.members.size();
    if (fronts) (*fronts)[ctx.phase_id] = std::move(pf);
    return choice;
  };
  return run_with(inputs, strategy, "exhaustive");
}

RunReport run_baseline(const RunInputs& inputs, BaselineKind kind, Priority priority,
                       std::optional<double> temp_threshold_c, unsigned jobs) {
  auto strategy = [&](const PhaseContext& ctx) {
    const auto r = baseline(kind, ctx.evaluator.as_evaluator(), ctx.space, priority, temp_threshold_c, jobs);
    PhaseChoice choice;
    choice.chosen = r.selection.best;
    choice.feasible = r.selection.feasible;
    choice.evaluations = r.evaluations;
    choice.characterized = true;
    return choice;
  };
  return run_with(inputs, strategy, to_string(kind));
}

}  // namespace thermotune
