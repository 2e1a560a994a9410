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

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "thermotune/errors.hpp"
#include "thermotune/phase.hpp"

using namespace thermotune;

namespace {

PhaseHistoryEntry entry(int id, PhaseStats stats) {
  PhaseHistoryEntry e;
  e.phase_id = id;
  e.stats = stats;
  Evaluation ev;
  ev.config = SystemConfig{{8192, 64, 1}, {8192, 64, 1}, 1'000'000'000u + static_cast<std::uint64_t>(id)};
  e.archive = {ev};
  e.best_config = ev.config;
  return e;
}

}  // namespace

TEST_SUITE("phase") {

TEST_CASE("distance examples") {
  const PhaseStats a{0.1, 0.2, 1.5};
  CHECK(phase_distance(a, a) == 0.0);
  CHECK(phase_distance({0, 0, 0}, {0, 0, 4}, 4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(phase_distance({0, 0, 0}, {0.6, 0.8, 0}) - 1.0) < 1e-12);
}

TEST_CASE("distance is a metric") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> mr(0, 1), ipc(0, 4);
  for (int k = 0; k < 1000; ++k) {
    const PhaseStats a{mr(rng), mr(rng), ipc(rng)}, b{mr(rng), mr(rng), ipc(rng)}, c{mr(rng), mr(rng), ipc(rng)};
    CHECK(phase_distance(a, b) >= 0);
    CHECK(phase_distance(a, b) == phase_distance(b, a));
    CHECK(phase_distance(a, c) <= phase_distance(a, b) + phase_distance(b, c) + 1e-12);
  }
}

TEST_CASE("classification") {
  const std::vector<PhaseStats> same(5, PhaseStats{0.1, 0.1, 2});
  CHECK(classify(same, 0.1).size() == 1);

  std::vector<PhaseStats> two;
  for (int i = 0; i < 6; ++i) two.push_back(i % 2 ? PhaseStats{0.3, 0.4, 2} : PhaseStats{0.0, 0.0, 2});
  const auto p = classify(two, 0.1);
  REQUIRE(p.size() == 2);
  CHECK(p[0].member_intervals == std::vector<std::size_t>{0, 2, 4});
  CHECK(p[1].member_intervals == std::vector<std::size_t>{1, 3, 5});

  CHECK(classify(two, std::numeric_limits<double>::infinity()).size() == 1);
  CHECK(classify({}, 0.1).empty());
  CHECK_THROWS_AS(classify(two, -1), ConfigError);
}

TEST_CASE("every interval belongs to exactly one phase") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> mr(0, 0.5);
  std::vector<PhaseStats> s;
  for (int i = 0; i < 200; ++i) s.push_back({mr(rng), mr(rng), 2});
  std::vector<int> seen(s.size(), 0);
  for (const auto& ph : classify(s, 0.15))
    for (auto i : ph.member_intervals) ++seen[i];
  for (int c : seen) CHECK(c == 1);
}

TEST_CASE("history lookup") {
  PhaseHistoryTable h;
  CHECK_FALSE(h.most_similar({0, 0, 0}).has_value());
  CHECK(h.lookup(0) == nullptr);

  h.store(entry(0, {0.3, 0, 0}));
  h.store(entry(1, {0.1, 0, 0}));
  h.store(entry(2, {0.2, 0, 0}));
  std::size_t evals = 0;
  const auto m = h.most_similar({0, 0, 0}, &evals);
  REQUIRE(m.has_value());
  CHECK(m->entry->phase_id == 1);
  CHECK(m->distance == doctest::Approx(0.1));
  CHECK(evals == 3);

  const auto exact = h.most_similar({0.2, 0, 0});
  CHECK(exact->entry->phase_id == 2);
  CHECK(exact->distance == 0.0);
  CHECK(h.next_id() == 3);
}

TEST_CASE("store semantics") {
  PhaseHistoryTable h;
  h.store(entry(4, {0.1, 0.1, 1}));
  REQUIRE(h.lookup(4) != nullptr);
  CHECK(h.lookup(4)->stats == PhaseStats{0.1, 0.1, 1});
  h.store(entry(4, {0.2, 0.2, 2}));
  CHECK(h.size() == 1);
  CHECK(h.lookup(4)->stats == PhaseStats{0.2, 0.2, 2});

  auto bad = entry(5, {0, 0, 0});
  bad.best_config.freq_hz = 7;
  CHECK_THROWS_AS(h.store(bad), InvariantError);
}

}  // TEST_SUITE
