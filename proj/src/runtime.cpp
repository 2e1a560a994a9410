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

#include "thermotune/runtime.hpp"

#include <algorithm>
#include <cmath>

#include "thermotune/errors.hpp"

namespace thermotune {

void check_params(const ModelParams& p) {
  check_params(p.timing);
  check_params(p.energy);
  check_params(p.thermal);
  if (!(p.repeat > 0.0) || !std::isfinite(p.repeat)) throw ConfigError("repeat factor must be positive");
}

void check_params(const OverheadParams& p) {
  for (double v : {p.char_interval_s, p.dfs_transition_s, p.cache_switch_s}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("overhead parameters must be finite and non-negative");
  }
}

double tuning_overhead(std::size_t evaluations, std::size_t reconfigurations, const OverheadParams& overheads) {
  return static_cast<double>(evaluations) * overheads.char_interval_s +
         static_cast<double>(reconfigurations) * (overheads.dfs_transition_s + overheads.cache_switch_s);
}

SegmentCacheModel::SegmentCacheModel(std::span<const MemAccess> segment) : segment_(segment) {
  for (const auto& a : segment_) instructions_ += a.is_instruction();
}

SegmentCacheModel::Side SegmentCacheModel::side(const CacheConfig& config, bool instruction) const {
  auto& memo = instruction ? icache_ : dcache_;
  {
    std::lock_guard lock(mu_);
    if (auto it = memo.find(config); it != memo.end()) return it->second;
  }
  Cache cache(config);
  auto pass = [&] {
    for (const auto& a : segment_) {
      if (a.is_instruction() == instruction) cache.access(a.address, a.kind == AccessKind::kDataWrite);
    }
  };
  pass();
  const auto a0 = cache.accesses(), m0 = cache.misses(), w0 = cache.writebacks();
  pass();
  const Side s{cache.accesses() - a0, cache.misses() - m0, cache.writebacks() - w0};
  std::lock_guard lock(mu_);
  memo.emplace(config, s);
  return s;
}

CacheStats SegmentCacheModel::stats(const CacheConfig& icache, const CacheConfig& dcache) const {
  const auto i = side(icache, true);
  const auto d = side(dcache, false);
  return {i.accesses, i.misses, d.accesses, d.misses, d.writebacks};
}

PhaseEvaluator::PhaseEvaluator(std::span<const MemAccess> segment, const ModelParams& models, ThermalState initial)
    : cache_(segment), models_(models), initial_(initial) {}

ObjectiveVector PhaseEvaluator::operator()(const SystemConfig& config) const {
  const auto stats = cache_.stats(config.icache, config.dcache);
  return objective_vector(stats, config, static_cast<double>(cache_.instruction_count()), models_.timing,
                          models_.energy, models_.thermal, initial_, models_.repeat);
}

Evaluator PhaseEvaluator::as_evaluator() const {
  return [this](const SystemConfig& config, std::size_t) { return (*this)(config); };
}

TraceAnalysis analyze(std::span<const MemAccess> trace, const DesignSpace& space, const ModelParams& models,
                      const RuntimeParams& runtime) {
  TraceAnalysis a;
  const SystemConfig& base = space.base();
  a.intervals = split_intervals(trace, runtime.interval_instructions);
  // Each interval is measured warm on itself, like candidate evaluation,
  // so a cold start does not masquerade as a phase of its own.
  CacheSimulator sim(base.icache, base.dcache);
  for (const auto& iv : a.intervals) {
    sim.run(iv.accesses, true);
    a.base_stats.push_back(sim.run(iv.accesses));
  }

  std::vector<double> weights;
  for (std::size_t i = 0; i < a.intervals.size(); ++i) {
    const auto& s = a.base_stats[i];
    const double instr = static_cast<double>(a.intervals[i].instruction_count);
    const double ipc = instr > 0 ? instr / cycles(s, base, instr, models.timing) : 0.0;
    a.interval_stats.push_back({s.imr(), s.dmr(), ipc});
    weights.push_back(static_cast<double>(a.intervals[i].accesses.size()));
  }
  a.phases = classify(a.interval_stats, runtime.phase_threshold, models.timing.issue_width, weights);

  a.interval_phase.assign(a.intervals.size(), 0);
  for (const auto& p : a.phases) {
    for (auto i : p.member_intervals) a.interval_phase[i] = p.id;
  }
  for (std::size_t i = 0; i < a.intervals.size(); ++i) {
    const auto& iv = a.intervals[i];
    if (a.occurrences.empty() || a.occurrences.back().phase_id != a.interval_phase[i]) {
      a.occurrences.push_back({a.interval_phase[i], i, 0, iv.begin, iv.begin});
    }
    auto& occ = a.occurrences.back();
    ++occ.interval_count;
    occ.end = iv.begin + iv.accesses.size();
  }
  return a;
}

RunReport run_with(const RunInputs& inputs, const ChoiceStrategy& strategy, std::string kind) {
  check_params(inputs.models);
  check_params(inputs.overheads);
  const auto analysis = analyze(inputs.trace, inputs.space, inputs.models, inputs.runtime);

  RunReport report;
  report.kind = std::move(kind);
  report.space_size = inputs.space.size();
  report.interval_count = analysis.intervals.size();

  const auto& thermal = inputs.models.thermal;
  ThermalState state = ambient_state(thermal);
  std::vector<PowerSegment> profile;
  std::size_t current = *inputs.space.base_index();
  std::map<int, std::size_t> slot;  // phase id -> index in report.phases
  double now = 0.0;

  for (const auto& occ : analysis.occurrences) {
    const auto segment = inputs.trace.subspan(occ.begin, occ.end - occ.begin);
    auto it = slot.find(occ.phase_id);
    if (it == slot.end()) {
      const Phase& phase = analysis.phases.at(static_cast<std::size_t>(occ.phase_id));
      PhaseEvaluator evaluator(segment, inputs.models, state);
      PhaseResult pr;
      pr.phase_id = phase.id;
      pr.stats = phase.stats;
      pr.intervals = phase.member_intervals;
      try {
        pr.choice = strategy(PhaseContext{phase.id, phase.stats, evaluator, inputs.space});
      } catch (const TuningError& e) {
        report.ok = false;
        report.error = e.what();
        report.failed_phase = phase.id;
        break;
      }
      report.phases.push_back(std::move(pr));
      it = slot.emplace(occ.phase_id, report.phases.size() - 1).first;
    }
    PhaseResult& pr = report.phases[it->second];
    const std::size_t index = pr.choice.chosen.config_index;
    const SystemConfig& config = inputs.space.at(index);

    OccurrenceResult o;
    o.phase_id = occ.phase_id;
    o.first_interval = occ.first_interval;
    o.interval_count = occ.interval_count;
    o.config_index = index;
    o.start_time_s = now;
    o.objectives = PhaseEvaluator(segment, inputs.models, state)(config);
    o.reconfigured = index != current;
    current = index;

    if (o.objectives.exec_time_s > 0.0) {
      const double power = o.objectives.energy_j / o.objectives.exec_time_s;
      profile.push_back({power, o.objectives.exec_time_s});
      state = step(state, power, o.objectives.exec_time_s, thermal);
    }
    now += o.objectives.exec_time_s;

    pr.executed.exec_time_s += o.objectives.exec_time_s;
    pr.executed.energy_j += o.objectives.energy_j;
    pr.executed.peak_temp_c = pr.occurrences == 0 ? o.objectives.peak_temp_c
                                                  : std::max(pr.executed.peak_temp_c, o.objectives.peak_temp_c);
    ++pr.occurrences;
    report.occurrences.push_back(o);
  }

  auto& t = report.totals;
  t.peak_temp_c = thermal.t_ambient_c;
  for (const auto& o : report.occurrences) {
    t.exec_time_s += o.objectives.exec_time_s;
    t.energy_j += o.objectives.energy_j;
    t.peak_temp_c = std::max(t.peak_temp_c, o.objectives.peak_temp_c);
    t.reconfiguration_count += o.reconfigured;
  }
  for (const auto& p : report.phases) t.evaluations_performed += p.choice.evaluations;
  t.edp = t.energy_j * t.exec_time_s;
  t.tuning_overhead_s = tuning_overhead(t.evaluations_performed, t.reconfiguration_count, inputs.overheads);
  t.total_time_s = t.exec_time_s + t.tuning_overhead_s;
  const auto prof = run_profile(profile, thermal, ambient_state(thermal), true);
  t.mean_temp_c = prof.mean_c;
  report.thermal_samples = prof.samples;
  return report;
}

RunReport run(const RunInputs& inputs, const TuningParams& tuning, PhaseHistoryTable& history) {
  check_params(tuning);
  const double theta = inputs.runtime.phase_threshold;
  auto strategy = [&](const PhaseContext& ctx) -> PhaseChoice {
    PhaseChoice choice;
    if (auto similar = history.most_similar(ctx.stats); similar && similar->distance <= theta) {
      const auto& entry = *similar->entry;
      auto index = ctx.space.index_of(entry.best_config);
      auto member = std::find_if(entry.archive.begin(), entry.archive.end(),
                                 [&](const Evaluation& e) { return e.config == entry.best_config; });
      if (index && member != entry.archive.end()) {
        choice.chosen = *member;
        choice.chosen.config_index = *index;
        choice.feasible = !tuning.temp_threshold_c || member->objectives.peak_temp_c <= *tuning.temp_threshold_c;
        choice.history_id = entry.phase_id;
        choice.archive_size = entry.archive.size();
        return choice;
      }
    }
    TuningParams p = tuning;
    p.seed = tuning.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(ctx.phase_id + 1));
    const auto r = tapt_tune(ctx.phase_id, ctx.stats, ctx.evaluator.as_evaluator(), ctx.space, p, &history);
    PhaseHistoryEntry entry;
    entry.phase_id = history.next_id();
    entry.stats = ctx.stats;
    entry.archive = r.archive;
    entry.best_config = r.selection.best.config;
    if (std::none_of(entry.archive.begin(), entry.archive.end(),
                     [&](const Evaluation& e) { return e.config == entry.best_config; })) {
      entry.archive.push_back(r.selection.best);  // threshold fallback picked outside the archive
    }
    choice.chosen = r.selection.best;
    choice.feasible = r.selection.feasible;
    choice.evaluations = r.evaluations_performed;
    choice.seed_evaluations = r.seed_evaluations;
    choice.characterized = true;
    choice.history_id = entry.phase_id;
    choice.warm_start_phase = r.warm_start_phase;
    choice.archive_size = r.archive.size();
    history.store(std::move(entry));
    return choice;
  };
  return run_with(inputs, strategy, "tune");
}

}  // namespace thermotune
