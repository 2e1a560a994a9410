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

#include "thermotune/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "thermotune/errors.hpp"
#include "thermotune/parallel.hpp"

namespace thermotune {

namespace {

std::array<double, 3> as_array(const ObjectiveVector& v) { return {v.exec_time_s, v.energy_j, v.peak_temp_c}; }

void check_finite(const ObjectiveVector& v) {
  for (double x : as_array(v)) {
    if (!std::isfinite(x)) throw DomainError("objective component is not finite");
  }
}

// Drops the most crowded member until `keep` remain. Returns the survivors'
// positions in `members`.
std::vector<std::size_t> truncate_by_density(std::span<const Evaluation> members, std::size_t keep) {
  const std::size_t n = members.size();
  std::array<double, 3> lo, hi;
  lo.fill(INFINITY);
  hi.fill(-INFINITY);
  for (const auto& m : members) {
    const auto a = as_array(m.objectives);
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], a[k]);
      hi[k] = std::max(hi[k], a[k]);
    }
  }
  std::vector<std::array<double, 3>> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = as_array(members[i].objectives);
    for (int k = 0; k < 3; ++k) pts[i][k] = hi[k] > lo[k] ? (a[k] - lo[k]) / (hi[k] - lo[k]) : 0.0;
  }
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      dist[i * n + j] = dist[j * n + i] = std::sqrt(s);
    }
  }

  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  while (alive.size() > keep) {
    std::vector<std::vector<double>> near(alive.size());
    for (std::size_t a = 0; a < alive.size(); ++a) {
      for (std::size_t b = 0; b < alive.size(); ++b) {
        if (a != b) near[a].push_back(dist[alive[a] * n + alive[b]]);
      }
      std::sort(near[a].begin(), near[a].end());
    }
    std::size_t victim = 0;
    for (std::size_t a = 1; a < alive.size(); ++a) {
      if (near[a] < near[victim] ||
          (near[a] == near[victim] && members[alive[a]].config_index > members[alive[victim]].config_index)) {
        victim = a;
      }
    }
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return alive;
}

bool better_choice(const Evaluation& a, const Evaluation& b, Priority q) {
  const double pa = priority_value(a.objectives, q), pb = priority_value(b.objectives, q);
  if (pa != pb) return pa < pb;
  const double ea = a.objectives.edp(), eb = b.objectives.edp();
  if (ea != eb) return ea < eb;
  const auto va = as_array(a.objectives), vb = as_array(b.objectives);
  if (va != vb) return va < vb;
  return a.config_index < b.config_index;
}

}  // namespace

Priority parse_priority(std::string_view text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
      case 'S': return Priority::kEdp;
      case 'N': return Priority::kEnergy;
      case 'T': return Priority::kTemperature;
      case 'X': return Priority::kTime;
      default: break;
    }
  }
  throw ConfigError("priority must be one of S, N, T, X (got '" + std::string(text) + "')");
}

double priority_value(const ObjectiveVector& v, Priority q) noexcept {
  switch (q) {
    case Priority::kEnergy: return v.energy_j;
    case Priority::kTemperature: return v.peak_temp_c;
    case Priority::kTime: return v.exec_time_s;
    case Priority::kEdp: break;
  }
  return v.edp();
}

void check_params(const TuningParams& p) {
  if (p.population < 1) throw ConfigError("population size must be at least 1");
  if (p.generations < 1) throw ConfigError("generation count must be at least 1");
  if (p.archive_size < 1) throw ConfigError("archive size must be at least 1");
  if (p.temp_threshold_c && !std::isfinite(*p.temp_threshold_c)) throw ConfigError("temperature threshold must be finite");
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  check_finite(a);
  check_finite(b);
  const auto x = as_array(a), y = as_array(b);
  bool strictly = false;
  for (int k = 0; k < 3; ++k) {
    if (x[k] > y[k]) return false;
    strictly |= x[k] < y[k];
  }
  return strictly;
}

std::size_t strength(std::size_t member, std::span<const Evaluation> pool) {
  std::size_t s = 0;
  for (const auto& other : pool) s += dominates(pool[member].objectives, other.objectives);
  return s;
}

FitnessRecord fitness(std::size_t member, std::span<const Evaluation> pool) {
  FitnessRecord r;
  r.strength = strength(member, pool);
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (dominates(pool[j].objectives, pool[member].objectives)) r.fitness += strength(j, pool);
  }
  return r;
}

std::vector<FitnessRecord> fitness_pass(std::span<const Evaluation> pool, std::size_t* dominance_checks) {
  const std::size_t m = pool.size();
  std::vector<char> dom(m * m, 0);
  std::vector<FitnessRecord> out(m);
  std::size_t checks = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      ++checks;
      if (dominates(pool[i].objectives, pool[j].objectives)) {
        dom[i * m + j] = 1;
        ++out[i].strength;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (dom[j * m + i]) out[i].fitness += out[j].strength;
    }
  }
  if (dominance_checks) *dominance_checks = checks;
  return out;
}

Archive update_archive(std::span<const Evaluation> population, std::span<const Evaluation> archive,
                       std::size_t archive_size, ArchiveUpdateStats* stats) {
  std::vector<Evaluation> pool;
  pool.reserve(population.size() + archive.size());
  auto add = [&](const Evaluation& e) {
    const bool seen = std::any_of(pool.begin(), pool.end(), [&](const Evaluation& p) { return p.config_index == e.config_index; });
    if (!seen) pool.push_back(e);
  };
  for (const auto& e : population) add(e);
  for (const auto& e : archive) add(e);
  std::sort(pool.begin(), pool.end(), [](const Evaluation& a, const Evaluation& b) { return a.config_index < b.config_index; });

  const auto fit = fitness_pass(pool);
  std::vector<Evaluation> front;
  std::vector<std::size_t> dominated;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (fit[i].fitness == 0) {
      front.push_back(pool[i]);
    } else {
      dominated.push_back(i);
    }
  }

  ArchiveUpdateStats st;
  Archive out;
  if (front.size() > archive_size) {
    for (auto pos : truncate_by_density(front, archive_size)) out.push_back(front[pos]);
    st.truncated = front.size() - archive_size;
  } else {
    out = std::move(front);
    std::stable_sort(dominated.begin(), dominated.end(),
                     [&](std::size_t a, std::size_t b) { return fit[a].fitness < fit[b].fitness; });
    for (std::size_t k = 0; k < dominated.size() && out.size() < archive_size; ++k) {
      out.push_back(pool[dominated[k]]);
      ++st.filled;
    }
    std::sort(out.begin(), out.end(), [](const Evaluation& a, const Evaluation& b) { return a.config_index < b.config_index; });
  }
  if (stats) *stats = st;
  return out;
}

Selection select_best(std::span<const Evaluation> archive, Priority priority, std::optional<double> temp_threshold_c) {
  if (archive.empty()) throw InvariantError("select_best on an empty archive");
  const Evaluation* best = nullptr;
  for (const auto& e : archive) {
    if (temp_threshold_c && e.objectives.peak_temp_c > *temp_threshold_c) continue;
    if (!best || better_choice(e, *best, priority)) best = &e;
  }
  if (best) return {*best, true};
  for (const auto& e : archive) {
    if (!best || better_choice(e, *best, Priority::kTemperature)) best = &e;
  }
  return {*best, false};
}

TuneResult tapt_tune(int phase_id, const PhaseStats& phase_stats, const Evaluator& evaluator,
                     const DesignSpace& space, const TuningParams& params, const PhaseHistoryTable* history) {
  check_params(params);
  const std::size_t n = space.size();
  std::mt19937_64 rng(params.seed);
  std::map<std::size_t, ObjectiveVector> memo;
  TuneResult result;

  // Evaluates every not-yet-seen index, concurrently, then records results
  // in index order.
  auto evaluate = [&](std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    std::erase_if(indices, [&](std::size_t i) { return memo.count(i) != 0; });
    std::vector<ObjectiveVector> out(indices.size());
    std::vector<std::string> failures(indices.size());
    parallel_for(indices.size(), params.jobs, [&](std::size_t k) {
      try {
        out[k] = evaluator(space.at(indices[k]), indices[k]);
      } catch (const std::exception& e) {
        failures[k] = e.what()[0] ? e.what() : "unknown error";
      }
    });
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (failures[k].empty()) continue;
      throw TuningError("evaluation of " + to_string(space.at(indices[k])) + " for phase " + std::to_string(phase_id) +
                            " failed: " + failures[k],
                        phase_id, indices[k]);
    }
    for (std::size_t k = 0; k < indices.size(); ++k) memo.emplace(indices[k], out[k]);
    return indices.size();
  };
  auto lookup = [&](std::size_t i) { return Evaluation{i, space.at(i), memo.at(i)}; };

  Archive archive;
  std::vector<std::size_t> order(n);
  for (std::size_t t = 0; t < params.generations; ++t) {
    // Uniform sample without replacement (partial Fisher-Yates).
    std::iota(order.begin(), order.end(), 0);
    const std::size_t draw = std::min(params.population, n);
    for (std::size_t k = 0; k < draw; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng() % (n - k));
      std::swap(order[k], order[j]);
    }
    std::vector<std::size_t> picked(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(draw));
    result.population_evaluations += evaluate(picked);

    if (t == 0 && history && !history->empty()) {
      if (auto similar = history->most_similar(phase_stats)) {
        result.warm_start_phase = similar->entry->phase_id;
        std::vector<std::size_t> seed;
        for (const auto& e : similar->entry->archive) {
          if (auto idx = space.index_of(e.config)) seed.push_back(*idx);
        }
        result.seed_evaluations += evaluate(seed);
        for (auto i : seed) archive.push_back(lookup(i));
      }
    }

    std::vector<Evaluation> population;
    population.reserve(picked.size());
    for (auto i : picked) population.push_back(lookup(i));
    ArchiveUpdateStats st;
    archive = update_archive(population, archive, params.archive_size, &st);
    result.truncations += st.truncated;
  }

  for (const auto& [i, v] : memo) result.evaluated.push_back({i, space.at(i), v});
  result.selection = select_best(archive, params.priority, params.temp_threshold_c);
  if (!result.selection.feasible) {
    // Truncation may have dropped every member under the threshold; any
    // dominator of a feasible evaluation is itself feasible, so the best
    // feasible evaluation is still non-dominated among all evaluations.
    auto fallback = select_best(result.evaluated, params.priority, params.temp_threshold_c);
    if (fallback.feasible) result.selection = fallback;
  }
  result.archive = std::move(archive);
  result.evaluations_performed = memo.size();
  return result;
}

}  // namespace thermotune
