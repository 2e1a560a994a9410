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
#include <vector>

#include "thermotune/design_space.hpp"
#include "thermotune/models.hpp"

namespace thermotune {

// Execution characteristics of an interval or phase under the base
// configuration. `ipc` is raw; distances normalize it by the issue width.
struct PhaseStats {
  double imr = 0.0;
  double dmr = 0.0;
  double ipc = 0.0;

  bool operator==(const PhaseStats&) const = default;
};

// Euclidean distance over (imr, dmr, ipc / issue_width).
double phase_distance(const PhaseStats& a, const PhaseStats& b, double issue_width = 4.0);

struct Phase {
  int id = 0;
  PhaseStats stats;  // weighted centroid of the members
  std::vector<std::size_t> member_intervals;
  double weight = 0.0;
};

// Leader clustering in input order: each interval joins the phase with the
// nearest centroid when that distance is <= theta, otherwise it founds a new
// phase. Centroids are running weighted means (weights default to 1; the
// runtime passes per-interval access counts). Phase ids are 0, 1, ... in
// order of founding.
std::vector<Phase> classify(std::span<const PhaseStats> interval_stats, double theta, double issue_width = 4.0,
                            std::span<const double> weights = {});

struct PhaseHistoryEntry {
  int phase_id = 0;
  PhaseStats stats;
  std::vector<Evaluation> archive;
  SystemConfig best_config;
};

struct SimilarPhase {
  const PhaseHistoryEntry* entry = nullptr;
  double distance = 0.0;
};

// Previously characterized phases keyed by id. Single writer; concurrent
// const queries are safe between writes.
class PhaseHistoryTable {
 public:
  explicit PhaseHistoryTable(double issue_width = 4.0) : issue_width_(issue_width) {}

  // Nearest entry by phase_distance, lowest id on ties; nullopt when empty.
  // When `distance_evals` is given it receives the number of distances
  // computed (always size()).
  std::optional<SimilarPhase> most_similar(const PhaseStats& stats, std::size_t* distance_evals = nullptr) const;

  const PhaseHistoryEntry* lookup(int phase_id) const;

  // Last writer wins. Throws InvariantError when best_config is not an
  // archive member.
  void store(PhaseHistoryEntry entry);

  int next_id() const noexcept { return entries_.empty() ? 0 : entries_.rbegin()->first + 1; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double issue_width() const noexcept { return issue_width_; }
  const std::map<int, PhaseHistoryEntry>& entries() const noexcept { return entries_; }

 private:
  double issue_width_;
  std::map<int, PhaseHistoryEntry> entries_;
};

}  // namespace thermotune
