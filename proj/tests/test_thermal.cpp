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

#include "doctest.h"
#include "oracles.hpp"
#include "thermotune/errors.hpp"
#include "thermotune/thermal.hpp"

using namespace thermotune;

TEST_SUITE("thermal") {

TEST_CASE("steady state") {
  const ThermalParams p;
  CHECK(steady_state(0, p) == 45.0);
  CHECK(steady_state(5, p) == 65.0);
  CHECK(steady_state(10, p) == 85.0);
  CHECK_THROWS_AS(steady_state(-1, p), DomainError);
}

TEST_CASE("step") {
  const ThermalParams p;
  const double tss = steady_state(3, p);
  CHECK(step({tss}, 3, 0.05, p).temp_c == tss);

  // One time constant from ambient with P*R = 20.
  const double expect = 45.0 + 20.0 * (1.0 - 1.0 / M_E);
  CHECK(std::abs(step({45}, 5, p.tau_s(), p).temp_c - expect) < 1e-12);
  CHECK(std::abs(step({45}, 5, p.tau_s(), p).temp_c - 57.642) < 1e-3);

  CHECK(std::abs(step({45}, 5, 50 * p.tau_s(), p).temp_c - 65.0) < 1e-9);
}

TEST_CASE("empty and idle profiles") {
  const ThermalParams p;
  const auto empty = run_profile({}, p, {50});
  CHECK(empty.peak_c == 50);
  CHECK(empty.final_state.temp_c == 50);

  const PowerSegment idle{0, 1.0};
  const auto r = run_profile({&idle, 1}, p, ambient_state(p));
  CHECK(r.peak_c == 45.0);
}

TEST_CASE("constant power approaches steady state") {
  const ThermalParams p;
  const PowerSegment seg{5, 100 * p.tau_s()};
  const auto r = run_profile({&seg, 1}, p, ambient_state(p));
  CHECK(std::abs(r.peak_c - 65.0) < 1e-9);
  CHECK(r.peak_c <= 65.0);
}

TEST_CASE("two-segment profile matches hand-computed exponentials") {
  const ThermalParams p;
  const std::vector<PowerSegment> s{{6, 0.13}, {1, 0.07}};
  const double tau = p.r_conv_k_per_w * p.c_j_per_k;
  const double t1 = 69.0 + (45.0 - 69.0) * std::exp(-0.13 / tau);
  const double t2 = 49.0 + (t1 - 49.0) * std::exp(-0.07 / tau);
  const auto r = run_profile(s, p, ambient_state(p));
  CHECK(std::abs(r.final_state.temp_c - t2) < 1e-9);
  CHECK(std::abs(r.peak_c - t1) < 1e-9);
  REQUIRE(!r.samples.empty());
  CHECK(r.samples.front().time_s == 0.0);
  CHECK(std::abs(r.samples.back().time_s - 0.2) < 1e-12);
}

TEST_CASE("samples follow the grid") {
  const ThermalParams p;
  const PowerSegment seg{2, 0.055};
  const auto r = run_profile({&seg, 1}, p, ambient_state(p));
  // 0, 10..50 ms, then the segment end.
  REQUIRE(r.samples.size() == 7);
  for (std::size_t i = 1; i + 1 < r.samples.size(); ++i) {
    CHECK(std::abs(r.samples[i].time_s - 0.01 * static_cast<double>(i)) < 1e-12);
  }
}

TEST_CASE("higher power never gives a lower temperature") {
  const ThermalParams p;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pw(0, 3), dur(0.005, 0.2);
  for (int k = 0; k < 50; ++k) {
    std::vector<PowerSegment> lo, hi;
    for (int i = 0; i < 6; ++i) {
      const double d = dur(rng), a = pw(rng);
      lo.push_back({a, d});
      hi.push_back({a + pw(rng), d});
    }
    const auto rl = run_profile(lo, p, ambient_state(p));
    const auto rh = run_profile(hi, p, ambient_state(p));
    REQUIRE(rl.samples.size() == rh.samples.size());
    for (std::size_t i = 0; i < rl.samples.size(); ++i) CHECK(rh.samples[i].temp_c >= rl.samples[i].temp_c);
  }
}

TEST_CASE("agrees with fine-step integration") {
  const ThermalParams p;
  const std::vector<PowerSegment> s{{0.8, 0.3}, {0.1, 0.2}, {1.0, 0.15}};
  const auto exact = run_profile(s, p, ambient_state(p));
  const auto fine = oracle::euler(s, p, 45.0, p.tau_s() / 1e4);
  CHECK(std::abs(exact.final_state.temp_c - fine.segment_end_c.back()) < 1e-4);
  CHECK(std::abs(exact.peak_c - fine.peak_c) < 1e-4);
}

TEST_CASE("invalid parameters") {
  ThermalParams p;
  p.c_j_per_k = 0;
  CHECK_THROWS_AS(check_params(p), ConfigError);
  const ThermalParams ok;
  const PowerSegment bad{-1, 0.1};
  CHECK_THROWS_AS(run_profile({&bad, 1}, ok, ambient_state(ok)), DomainError);
}

}  // TEST_SUITE
