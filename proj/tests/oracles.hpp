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

// Independent reference implementations used by the tests. Written for
// obviousness, not speed; none of them calls into the library's algorithms.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <list>
#include <random>
#include <vector>

#include "thermotune/cache_sim.hpp"
#include "thermotune/design_space.hpp"
#include "thermotune/models.hpp"
#include "thermotune/thermal.hpp"
#include "thermotune/trace.hpp"

namespace oracle {

using thermotune::CacheConfig;
using thermotune::CacheStats;
using thermotune::Evaluation;
using thermotune::MemAccess;
using thermotune::ObjectiveVector;

// One list per set, most recently used at the front.
class NaiveLru {
 public:
  explicit NaiveLru(const CacheConfig& c)
      : line_(c.line_bytes), ways_(c.assoc_ways), sets_(c.size_bytes / (c.line_bytes * c.assoc_ways)) {}

  // Returns {hit, wrote_back}.
  std::pair<bool, bool> access(std::uint64_t addr, bool write) {
    const std::uint64_t block = addr / line_;
    auto& set = sets_[block % sets_.size()];
    for (auto it = set.begin(); it != set.end(); ++it) {
      if (it->block == block) {
        Line l = *it;
        l.dirty = l.dirty || write;
        set.erase(it);
        set.push_front(l);
        return {true, false};
      }
    }
    bool wb = false;
    if (set.size() == ways_) {
      wb = set.back().dirty;
      set.pop_back();
    }
    set.push_front({block, write});
    return {false, wb};
  }

 private:
  struct Line {
    std::uint64_t block;
    bool dirty;
  };
  std::uint64_t line_;
  std::size_t ways_;
  std::vector<std::list<Line>> sets_;
};

inline CacheStats naive_simulate(const std::vector<MemAccess>& trace, const CacheConfig& i, const CacheConfig& d) {
  NaiveLru ic(i), dc(d);
  CacheStats s;
  for (const auto& a : trace) {
    if (a.kind == thermotune::AccessKind::kInstructionFetch) {
      ++s.i_accesses;
      s.i_misses += !ic.access(a.address, false).first;
    } else {
      ++s.d_accesses;
      const auto [hit, wb] = dc.access(a.address, a.kind == thermotune::AccessKind::kDataWrite);
      s.d_misses += !hit;
      s.d_writebacks += wb;
    }
  }
  return s;
}

inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const bool no_worse = a.exec_time_s <= b.exec_time_s && a.energy_j <= b.energy_j && a.peak_temp_c <= b.peak_temp_c;
  const bool better = a.exec_time_s < b.exec_time_s || a.energy_j < b.energy_j || a.peak_temp_c < b.peak_temp_c;
  return no_worse && better;
}

inline std::vector<std::size_t> strengths(const std::vector<Evaluation>& u) {
  std::vector<std::size_t> s(u.size(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) s[i] += dominates(u[i].objectives, u[j].objectives) ? 1 : 0;
  }
  return s;
}

inline std::vector<std::uint64_t> fitnesses(const std::vector<Evaluation>& u) {
  const auto s = strengths(u);
  std::vector<std::uint64_t> r(u.size(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (dominates(u[j].objectives, u[i].objectives)) r[i] += s[j];
    }
  }
  return r;
}

// O(n^2): keep every point no other point dominates, in input order.
inline std::vector<Evaluation> pareto(const std::vector<Evaluation>& pts) {
  std::vector<Evaluation> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) dominated = dominated || dominates(q.objectives, p.objectives);
    if (!dominated) out.push_back(p);
  }
  return out;
}

// Repeatedly removes the point whose ascending list of distances to the
// others (min-max normalized over the original set) is lexicographically
// smallest; ties remove the higher config index. Returns survivors in
// input order.
inline std::vector<Evaluation> truncate(std::vector<Evaluation> pts, std::size_t keep) {
  auto comp = [](const ObjectiveVector& v, int k) {
    return k == 0 ? v.exec_time_s : k == 1 ? v.energy_j : v.peak_temp_c;
  };
  double lo[3], hi[3];
  for (int k = 0; k < 3; ++k) {
    lo[k] = hi[k] = comp(pts[0].objectives, k);
    for (const auto& p : pts) {
      lo[k] = std::min(lo[k], comp(p.objectives, k));
      hi[k] = std::max(hi[k], comp(p.objectives, k));
    }
  }
  auto norm = [&](const Evaluation& e, int k) {
    return hi[k] > lo[k] ? (comp(e.objectives, k) - lo[k]) / (hi[k] - lo[k]) : 0.0;
  };
  auto distance = [&](const Evaluation& a, const Evaluation& b) {
    double s = 0;
    for (int k = 0; k < 3; ++k) s += (norm(a, k) - norm(b, k)) * (norm(a, k) - norm(b, k));
    return std::sqrt(s);
  };
  while (pts.size() > keep) {
    std::size_t victim = 0;
    std::vector<double> victim_d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<double> d;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i != j) d.push_back(distance(pts[i], pts[j]));
      }
      std::sort(d.begin(), d.end());
      if (i == 0 || d < victim_d || (d == victim_d && pts[i].config_index > pts[victim].config_index)) {
        victim = i;
        victim_d = d;
      }
    }
    pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return pts;
}

struct EulerResult {
  double peak_c;
  std::vector<double> segment_end_c;
};

// Explicit Euler on C dT/dt = P - (T - T_amb)/R with step at most `h`.
inline EulerResult euler(const std::vector<thermotune::PowerSegment>& series, const thermotune::ThermalParams& p,
                         double initial_c, double h) {
  double t = initial_c;
  EulerResult r{initial_c, {}};
  for (const auto& seg : series) {
    const auto steps = static_cast<std::size_t>(std::ceil(seg.duration_s / h));
    const double dt = seg.duration_s / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
      t += dt * (seg.power_w - (t - p.t_ambient_c) / p.r_conv_k_per_w) / p.c_j_per_k;
      r.peak_c = std::max(r.peak_c, t);
    }
    r.segment_end_c.push_back(t);
  }
  return r;
}

// Objective tables drawn from a coarse grid so ties and dominance are common.
inline std::vector<Evaluation> random_table(std::mt19937_64& rng, std::size_t n, int levels = 6) {
  std::uniform_int_distribution<int> v(1, levels);
  std::vector<Evaluation> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].config_index = i;
    out[i].objectives = {static_cast<double>(v(rng)), static_cast<double>(v(rng)), 40.0 + v(rng)};
  }
  return out;
}

inline std::vector<MemAccess> random_trace(std::mt19937_64& rng, std::size_t n, std::uint64_t span) {
  std::uniform_int_distribution<std::uint64_t> addr(0, span - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  std::vector<MemAccess> t(n);
  for (auto& a : t) {
    a.kind = static_cast<thermotune::AccessKind>(kind(rng));
    a.address = addr(rng);
  }
  return t;
}

}  // namespace oracle
