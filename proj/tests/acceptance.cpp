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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "thermotune/experiment.hpp"
#include "thermotune/io.hpp"
#include "thermotune/optimizer.hpp"
#include "thermotune/phase.hpp"
#include "thermotune/runtime.hpp"
#include "thermotune/thermotune.h"

using namespace thermotune;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;  // printed under the result line
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

DesignSpace freq_space(std::size_t n) {
  DesignSpaceSpec s;
  s.cache_sizes = {8192};
  s.line_sizes = {64};
  s.associativities = {1};
  for (std::size_t i = 0; i < n; ++i) s.frequencies_hz.push_back(100'000'000 * (i + 1));
  return DesignSpace(s);
}

ModelParams models_for(const DesignSpace& space) {
  ModelParams m;
  m.energy.f_min_hz = static_cast<double>(space.spec().frequencies_hz.front());
  m.energy.f_max_hz = static_cast<double>(space.spec().frequencies_hz.back());
  return m;
}

SyntheticSegment random_segment(std::mt19937_64& rng, std::uint64_t instructions) {
  auto pick = [&](std::initializer_list<std::uint64_t> xs) {
    return *(xs.begin() + static_cast<std::ptrdiff_t>(rng() % xs.size()));
  };
  std::uniform_real_distribution<double> u(0, 1);
  SyntheticSegment s;
  s.working_set_bytes = pick({2048, 8192, 16384, 32768, 65536, 262144});
  s.stride_bytes = pick({4, 16, 64, 128});
  s.code_bytes = pick({1024, 4096, 16384, 49152});
  s.data_ratio = 0.1 + 0.5 * u(rng);
  s.write_fraction = 0.5 * u(rng);
  s.random_fraction = u(rng);
  s.instruction_count = instructions;
  return s;
}

// 1. Strength and fitness against brute-force dominance counting.
Outcome fitness_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::size_t mismatches = 0, check_errors = 0, points = 0;
  for (int k = 0; k < 200; ++k) {
    const auto u = oracle::random_table(rng, size(rng), 1 + static_cast<int>(rng() % 6));
    points += u.size();
    std::size_t checks = 0;
    const auto got = fitness_pass(u, &checks);
    check_errors += checks != u.size() * (u.size() - 1);
    const auto s = oracle::strengths(u);
    const auto r = oracle::fitnesses(u);
    for (std::size_t i = 0; i < u.size(); ++i) {
      mismatches += got[i].strength != s[i] || got[i].fitness != r[i];
      mismatches += strength(i, u) != s[i] || fitness(i, u).fitness != r[i];
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.pass = mismatches == 0 && check_errors == 0 && secs < 5.0;
  o.detail = fmt("200 unions, %.0f points, %.0f mismatches, %.3f s", static_cast<double>(points),
                 static_cast<double>(mismatches), secs);
  return o;
}

// 2. Exhaustive Pareto front against the quadratic filter.
Outcome pareto_oracle() {
  const auto space = freq_space(30);
  std::mt19937_64 rng(31);
  std::size_t bad = 0, members = 0;
  for (int k = 0; k < 100; ++k) {
    const auto table = oracle::random_table(rng, 30, 2 + static_cast<int>(rng() % 8));
    const Evaluator ev = [&table](const SystemConfig&, std::size_t i) { return table.at(i).objectives; };
    const auto front = exhaustive_pareto(ev, space, 1 + k % 3).members;
    const auto expect = oracle::pareto(table);
    members += expect.size();
    bool same = front.size() == expect.size();
    for (std::size_t i = 0; same && i < expect.size(); ++i) {
      same = front[i].config_index == expect[i].config_index && front[i].objectives == expect[i].objectives;
    }
    bad += !same;
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = fmt("100 tables of 30 points, %.0f front members, %.0f mismatching tables", static_cast<double>(members),
                 static_cast<double>(bad));
  return o;
}

// 3. Evaluation budget on the 1,701-configuration preset.
Outcome budget() {
  auto config = default_config();
  config.space = paper_reduced_spec();
  const DesignSpace space(config.space);
  const auto trace = load_trace(config.trace);
  const RunInputs in{trace, space, config.models, config.runtime, config.overheads};
  PhaseHistoryTable history(config.models.timing.issue_width);
  const auto r = run(in, config.tuning, history);

  std::size_t worst = 0, cold = 0;
  bool ok = r.ok && space.size() == 1701;
  for (const auto& p : r.phases) {
    if (!p.choice.characterized) continue;
    const std::size_t fresh = p.choice.evaluations - p.choice.seed_evaluations;
    worst = std::max(worst, fresh);
    if (!p.choice.warm_start_phase) cold = std::max(cold, p.choice.evaluations);
  }
  ok = ok && worst <= 60 && cold <= 60 && worst > 0;
  const double pct = 100.0 * static_cast<double>(worst) / static_cast<double>(space.size());
  const double speedup = static_cast<double>(space.size()) / static_cast<double>(std::max<std::size_t>(worst, 1));
  ok = ok && pct < 4.0 && speedup >= 25.0;
  Outcome o;
  o.pass = ok;
  o.detail = fmt("space %.0f, max fresh evaluations per phase %.0f (%.2f%%), speedup %.1fx",
                 static_cast<double>(space.size()), static_cast<double>(worst), pct, speedup);
  return o;
}

// 4. Threshold compliance on seeded synthetic phases.
Outcome threshold() {
  const DesignSpace space(paper_reduced_spec());
  std::mt19937_64 rng(82);
  std::uniform_real_distribution<double> offset(-3, 3);
  const Priority priorities[] = {Priority::kEdp, Priority::kEnergy, Priority::kTemperature, Priority::kTime};
  std::size_t violations = 0, mixed = 0, infeasible = 0, fallback_needed = 0;
  for (int k = 0; k < 50; ++k) {
    const std::vector<SyntheticSegment> script{random_segment(rng, 50'000)};
    const auto trace = generate_synthetic(script, 1000 + static_cast<std::uint64_t>(k));
    // Place the ambient so that 82 C falls near this phase's base-config
    // peak; most phases then have configurations on both sides.
    ModelParams m;
    const double rise = PhaseEvaluator(trace, m, ambient_state(m.thermal))(space.base()).peak_temp_c -
                        m.thermal.t_ambient_c;
    m.thermal.t_ambient_c = 82.0 - rise + offset(rng);
    const PhaseEvaluator ev(trace, m, ambient_state(m.thermal));
    TuningParams p;
    p.seed = static_cast<std::uint64_t>(k) + 1;
    p.priority = priorities[k % 4];
    p.temp_threshold_c = 82.0;
    const auto r = tapt_tune(k, {}, ev.as_evaluator(), space, p);

    std::size_t ok_count = 0;
    for (const auto& e : r.evaluated) ok_count += e.objectives.peak_temp_c <= 82.0;
    bool archive_has = false;
    for (const auto& e : r.archive) archive_has = archive_has || e.objectives.peak_temp_c <= 82.0;
    mixed += ok_count > 0 && ok_count < r.evaluated.size();
    infeasible += ok_count == 0;
    fallback_needed += ok_count > 0 && !archive_has;

    const bool hot = r.selection.best.objectives.peak_temp_c > 82.0;
    if (ok_count > 0 && (hot || !r.selection.feasible)) ++violations;
    if (ok_count == 0 && r.selection.feasible) ++violations;
    if (hot && r.selection.feasible) ++violations;
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = fmt("50 phases: %.0f straddle 82 C, %.0f fully infeasible (flagged), %.0f needed the fallback; %.0f violations",
                 static_cast<double>(mixed), static_cast<double>(infeasible), static_cast<double>(fallback_needed),
                 static_cast<double>(violations));
  return o;
}

// 5. Each priority returns the exhaustive optimum on a 72-configuration space.
Outcome priorities() {
  DesignSpaceSpec s;
  s.cache_sizes = {8192, 16384, 32768};
  s.line_sizes = {64};
  s.associativities = {1, 2};
  s.frequencies_hz = {1'000'000'000, 2'000'000'000};
  const DesignSpace space(s);
  std::mt19937_64 rng(72);
  std::size_t wrong = 0, cases = 0;
  for (int k = 0; k < 5; ++k) {
    const std::vector<SyntheticSegment> script{random_segment(rng, 50'000)};
    const auto trace = generate_synthetic(script, 500 + static_cast<std::uint64_t>(k));
    const PhaseEvaluator ev(trace, models_for(space), ThermalState{45.0});
    std::vector<ObjectiveVector> all;
    for (std::size_t i = 0; i < space.size(); ++i) all.push_back(ev(space.at(i)));
    for (Priority q : {Priority::kEdp, Priority::kEnergy, Priority::kTemperature, Priority::kTime}) {
      TuningParams p;
      p.population = 72;
      p.generations = 3;
      p.archive_size = 72;
      p.priority = q;
      const auto r = tapt_tune(0, {}, ev.as_evaluator(), space, p);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : all) best = std::min(best, priority_value(v, q));
      ++cases;
      wrong += priority_value(r.selection.best.objectives, q) != best;
    }
  }
  Outcome o;
  o.pass = space.size() == 72 && wrong == 0;
  o.detail = fmt("space %.0f, %.0f (phase, priority) cases, %.0f differ from the exhaustive optimum",
                 static_cast<double>(space.size()), static_cast<double>(cases), static_cast<double>(wrong));
  return o;
}

// 6. Metric properties of the phase distance.
Outcome metric() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> mr(0, 1), ipc(0, 4);
  std::size_t failures = 0;
  for (int k = 0; k < 10'000; ++k) {
    const PhaseStats a{mr(rng), mr(rng), ipc(rng)}, b{mr(rng), mr(rng), ipc(rng)}, c{mr(rng), mr(rng), ipc(rng)};
    const double ab = phase_distance(a, b), ba = phase_distance(b, a);
    const double bc = phase_distance(b, c), ac = phase_distance(a, c);
    failures += !(ab >= 0 && bc >= 0 && ac >= 0);
    failures += ab != ba;
    failures += phase_distance(a, a) != 0.0;
    failures += (ab == 0.0) != (a == b);
    failures += ac > ab + bc + 1e-12;
  }
  const double d345 = phase_distance({0, 0, 0}, {0.6, 0.8, 0});
  Outcome o;
  o.pass = failures == 0 && std::abs(d345 - 1.0) <= 1e-12;
  o.detail = fmt("10^4 triples, %.0f property failures, 3-4-5 case %.15f", static_cast<double>(failures), d345);
  return o;
}

// 7. Cache simulator against the naive LRU, plus inclusion across ways.
Outcome cache() {
  std::mt19937_64 rng(7);
  std::size_t mismatches = 0, inclusion = 0;
  auto config = [&](std::uint32_t line, std::uint32_t ways, std::uint32_t sets) {
    return CacheConfig{line * ways * sets, line, ways};
  };
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t span = std::uint64_t{1024} << (rng() % 7);
    auto trace = oracle::random_trace(rng, 4000, span);
    const auto hot = oracle::random_trace(rng, 2000, 512);
    trace.insert(trace.begin() + static_cast<std::ptrdiff_t>(rng() % trace.size()), hot.begin(), hot.end());
    const std::uint32_t line = 16u << (rng() % 3);
    const std::uint32_t sets = 1u << (rng() % 7);
    const auto ic = config(line, 1u << (rng() % 4), sets);
    const auto dc = config(line, 1u << (rng() % 4), sets);
    mismatches += simulate(trace, ic, dc) != oracle::naive_simulate(trace, ic, dc);

    const auto w1 = simulate(trace, config(line, 1, sets), config(line, 1, sets));
    const auto w2 = simulate(trace, config(line, 2, sets), config(line, 2, sets));
    const auto w4 = simulate(trace, config(line, 4, sets), config(line, 4, sets));
    inclusion += !(w1.i_misses >= w2.i_misses && w2.i_misses >= w4.i_misses);
    inclusion += !(w1.d_misses >= w2.d_misses && w2.d_misses >= w4.d_misses);
  }
  Outcome o;
  o.pass = mismatches == 0 && inclusion == 0;
  o.detail = fmt("100 pairs, %.0f mismatches, %.0f inclusion failures", static_cast<double>(mismatches),
                 static_cast<double>(inclusion));
  return o;
}

// 8. Steady state and closed-form stepping against fine-step Euler.
Outcome thermal() {
  const ThermalParams p;
  const bool steady = steady_state(5.0, p) == p.t_ambient_c + 20.0;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> power(0.0, 1.2), dur(0.01, 0.5);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    std::vector<PowerSegment> series(5 + rng() % 6);
    for (auto& s : series) s = {power(rng), dur(rng)};
    const auto exact = run_profile(series, p, ambient_state(p));
    const auto fine = oracle::euler(series, p, p.t_ambient_c, p.tau_s() / 1e4);
    worst = std::max(worst, std::abs(exact.peak_c - fine.peak_c));
    worst = std::max(worst, std::abs(exact.final_state.temp_c - fine.segment_end_c.back()));
    ThermalState state = ambient_state(p);
    for (std::size_t i = 0; i < series.size(); ++i) {
      state = step(state, series[i].power_w, series[i].duration_s, p);
      worst = std::max(worst, std::abs(state.temp_c - fine.segment_end_c[i]));
    }
  }
  Outcome o;
  o.pass = steady && worst < 1e-4;
  o.detail = fmt("steady_state(5 W) = %.12g C; 20 profiles, max |closed form - Euler| = %.3g K", steady_state(5.0, p),
                 worst);
  return o;
}

// 9. A persisted history makes reruns free and reproducible.
Outcome history_reuse() {
  const auto config = default_config();
  const DesignSpace space(config.space);
  const auto trace = load_trace(config.trace);
  const RunInputs in{trace, space, config.models, config.runtime, config.overheads};
  const double w = config.models.timing.issue_width;

  PhaseHistoryTable h1(w);
  const auto first = run(in, config.tuning, h1);
  const auto persisted = history_to_json(h1);

  auto h2 = history_from_json(persisted, space, w);
  const auto second = run(in, config.tuning, h2);
  auto h3 = history_from_json(history_to_json(h2), space, w);
  const auto third = run(in, config.tuning, h3);

  bool same = first.phases.size() == second.phases.size() && first.occurrences.size() == second.occurrences.size();
  for (std::size_t i = 0; same && i < first.phases.size(); ++i) {
    same = first.phases[i].choice.chosen.config_index == second.phases[i].choice.chosen.config_index &&
           first.phases[i].executed == second.phases[i].executed && !second.phases[i].choice.characterized;
  }
  for (std::size_t i = 0; same && i < first.occurrences.size(); ++i) {
    same = first.occurrences[i].objectives == second.occurrences[i].objectives;
  }
  same = same && first.totals.exec_time_s == second.totals.exec_time_s &&
         first.totals.energy_j == second.totals.energy_j && first.totals.peak_temp_c == second.totals.peak_temp_c;
  const bool identical = run_report_json(second, config) == run_report_json(third, config) &&
                         history_to_json(h2) == persisted;
  Outcome o;
  o.pass = first.totals.evaluations_performed > 0 && second.totals.evaluations_performed == 0 && same && identical;
  o.detail = fmt("first run %.0f evaluations, rerun %.0f; configs and executed objectives %%s; reruns byte-identical: %%s",
                 static_cast<double>(first.totals.evaluations_performed),
                 static_cast<double>(second.totals.evaluations_performed));
  o.detail.replace(o.detail.find("%s"), 2, same ? "equal" : "DIFFER");
  o.detail.replace(o.detail.find("%s"), 2, identical ? "yes" : "NO");
  return o;
}

struct Docs {
  std::vector<std::pair<std::string, std::string>> docs;
  tt_status status = TT_OK;
};

Docs run_capi(const std::function<tt_status(tt_session*, tt_output**)>& op, unsigned jobs) {
  Docs d;
  tt_session* s = nullptr;
  if ((d.status = tt_session_create_default(&s)) != TT_OK) return d;
  tt_session_set_jobs(s, jobs);
  tt_output* out = nullptr;
  d.status = op(s, &out);
  if (out) {
    for (std::size_t i = 0; i < tt_output_count(out); ++i) {
      std::size_t len = 0;
      const char* data = tt_output_data(out, i, &len);
      d.docs.emplace_back(tt_output_name(out, i), std::string(data, len));
    }
  }
  tt_output_destroy(out);
  tt_session_destroy(s);
  return d;
}

// 10. Byte-identical tune outputs.
Outcome determinism() {
  const auto a = run_capi(tt_tune, 1);
  const auto b = run_capi(tt_tune, 1);
  const auto c = run_capi(tt_tune, 4);
  std::size_t bytes = 0;
  for (const auto& [n, d] : a.docs) bytes += d.size();
  Outcome o;
  o.pass = a.status == TT_OK && a.docs.size() == 5 && a.docs == b.docs && a.docs == c.docs;
  o.detail = fmt("%.0f documents, %.0f bytes, identical across two runs and across 1 vs 4 jobs",
                 static_cast<double>(a.docs.size()), static_cast<double>(bytes));
  if (!o.pass) o.detail = "outputs differ or tune failed";
  return o;
}

// 11. Temperature-impact ranking table with the published reference row.
Outcome sweep_temp() {
  const auto r = run_capi([](tt_session* s, tt_output** o) { return tt_sweep_temp(s, -1, o); }, 1);
  std::string impact, ranking;
  for (const auto& [n, d] : r.docs) {
    if (n == "temp_impact.csv") impact = d;
    if (n == "temp_ranking.csv") ranking = d;
  }
  std::size_t impact_rows = 0, model_rows = 0, reference_rows = 0;
  for (char ch : impact) impact_rows += ch == '\n';
  Outcome o;
  std::size_t pos = 0;
  while (pos < ranking.size()) {
    const auto end = ranking.find('\n', pos);
    const std::string line = ranking.substr(pos, end - pos);
    pos = end == std::string::npos ? ranking.size() : end + 1;
    if (line.rfind("model,", 0) == 0) {
      ++model_rows;
      o.notes.push_back(line);
    } else if (line.rfind("reference,", 0) == 0) {
      ++reference_rows;
      o.notes.push_back(line);
    }
  }
  o.pass = r.status == TT_OK && impact_rows == 8 && model_rows == 3 && reference_rows == 3 &&
           ranking.find("reference,1,line,17.5") != std::string::npos &&
           ranking.find("reference,2,assoc,15.8") != std::string::npos &&
           ranking.find("reference,3,size,2") != std::string::npos;
  o.detail = fmt("%.0f impact rows, %.0f model ranking rows, %.0f reference rows (reported, not asserted)",
                 static_cast<double>(impact_rows > 0 ? impact_rows - 1 : 0), static_cast<double>(model_rows),
                 static_cast<double>(reference_rows));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"fitness oracle", fitness_oracle},       {"pareto oracle", pareto_oracle},
      {"evaluation budget", budget},            {"threshold compliance", threshold},
      {"priority semantics", priorities},       {"phase distance metric", metric},
      {"cache simulator oracle", cache},        {"thermal correctness", thermal},
      {"history reuse", history_reuse},         {"determinism", determinism},
      {"temperature impact table", sweep_temp},
  };
  int failed = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %2d %-26s %s\n", o.pass ? "PASS" : "FAIL", n, c.name, o.detail.c_str());
    for (const auto& note : o.notes) std::printf("        %s\n", note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
