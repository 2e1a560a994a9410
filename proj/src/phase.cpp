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

#include "thermotune/phase.hpp"

#include <algorithm>
#include <cmath>

#include "thermotune/errors.hpp"

namespace thermotune {

double phase_distance(const PhaseStats& a, const PhaseStats& b, double issue_width) {
  const double di = a.imr - b.imr;
  const double dd = a.dmr - b.dmr;
  const double dp = (a.ipc - b.ipc) / issue_width;
  return std::sqrt(di * di + dd * dd + dp * dp);
}

std::vector<Phase> classify(std::span<const PhaseStats> interval_stats, double theta, double issue_width,
                            std::span<const double> weights) {
  if (!(theta >= 0.0)) throw ConfigError("phase threshold must be non-negative");
  if (!weights.empty() && weights.size() != interval_stats.size()) {
    throw ConfigError("classify: one weight per interval required");
  }
  std::vector<Phase> phases;
  for (std::size_t i = 0; i < interval_stats.size(); ++i) {
    const auto& s = interval_stats[i];
    // Zero-weight intervals (no accesses) still need to pull the centroid
    // when they found a phase.
    const double w = weights.empty() ? 1.0 : std::max(weights[i], 0.0);

    Phase* best = nullptr;
    double best_d = 0.0;
    for (auto& p : phases) {
      const double d = phase_distance(s, p.stats, issue_width);
      if (!best || d < best_d) {
        best = &p;
        best_d = d;
      }
    }
    if (best && best_d <= theta) {
      const double total = best->weight + w;
      if (total > 0.0) {
        best->stats.imr += (s.imr - best->stats.imr) * w / total;
        best->stats.dmr += (s.dmr - best->stats.dmr) * w / total;
        best->stats.ipc += (s.ipc - best->stats.ipc) * w / total;
      }
      best->weight = total;
      best->member_intervals.push_back(i);
    } else {
      Phase p;
      p.id = static_cast<int>(phases.size());
      p.stats = s;
      p.weight = w;
      p.member_intervals.push_back(i);
      phases.push_back(std::move(p));
    }
  }
  return phases;
}

std::optional<SimilarPhase> PhaseHistoryTable::most_similar(const PhaseStats& stats,
                                                            std::size_t* distance_evals) const {
  std::optional<SimilarPhase> best;
  std::size_t evals = 0;
  for (const auto& [id, entry] : entries_) {
    const double d = phase_distance(stats, entry.stats, issue_width_);
    ++evals;
    if (!best || d < best->distance) best = SimilarPhase{&entry, d};
  }
  if (distance_evals) *distance_evals = evals;
  return best;
}

const PhaseHistoryEntry* PhaseHistoryTable::lookup(int phase_id) const {
  auto it = entries_.find(phase_id);
  return it == entries_.end() ? nullptr : &it->second;
}

void PhaseHistoryTable::store(PhaseHistoryEntry entry) {
  const bool member = std::any_of(entry.archive.begin(), entry.archive.end(),
                                  [&](const Evaluation& e) { return e.config == entry.best_config; });
  if (!member) throw InvariantError("history entry's best configuration is not in its archive");
  const int id = entry.phase_id;
  entries_.insert_or_assign(id, std::move(entry));
}

}  // namespace thermotune
