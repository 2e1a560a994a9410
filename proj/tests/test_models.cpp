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

#include "doctest.h"
#include "thermotune/errors.hpp"
#include "thermotune/models.hpp"

using namespace thermotune;

namespace {

SystemConfig at_freq(std::uint64_t hz) {
  const CacheConfig c{32768, 64, 4};
  return {c, c, hz};
}

EnergyParams null_energy() {
  EnergyParams p;
  p.cache_access_j = 0;
  p.miss_byte_j = 0;
  p.instr_j = 0;
  p.leakage_w = 0;
  return p;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("voltage table") {
  const EnergyParams p;
  CHECK(voltage(p.f_min_hz, p) == p.v_min);
  CHECK(voltage(p.f_max_hz, p) == p.v_max);
  CHECK(voltage((p.f_min_hz + p.f_max_hz) / 2, p) == doctest::Approx(1.1).epsilon(1e-12));
  CHECK_THROWS_AS(voltage(p.f_max_hz * 1.01, p), ConfigError);
  CHECK_THROWS_AS(voltage(p.f_min_hz * 0.99, p), ConfigError);
}

TEST_CASE("execution time") {
  TimingParams t;
  t.ipc_base = 1;
  const CacheStats none;
  CHECK(exec_time(none, at_freq(1'000'000'000), 1e6, t) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(exec_time(none, at_freq(2'000'000'000), 1e6, t) == doctest::Approx(0.5e-3).epsilon(1e-12));

  TimingParams t2;
  t2.ipc_base = 2;
  t2.mem_latency_s = 100e-9;
  CacheStats misses;
  misses.d_misses = 10'000;
  CHECK(exec_time(misses, at_freq(1'000'000'000), 1e6, t2) == doctest::Approx(1.5e-3).epsilon(1e-12));
}

TEST_CASE("miss penalty rounds up to whole cycles") {
  CHECK(miss_penalty_cycles(100e-9, 1e9) == 100);
  CHECK(miss_penalty_cycles(100e-9, 1.2e9) == 120);
  CHECK(miss_penalty_cycles(1.05e-9, 1e9) == 2);
}

TEST_CASE("more misses never run faster") {
  const TimingParams t;
  CacheStats a, b;
  a.i_misses = 10;
  b.i_misses = 11;
  const auto cfg = at_freq(1'400'000'000);
  CHECK(exec_time(b, cfg, 1e5, t) > exec_time(a, cfg, 1e5, t));
}

TEST_CASE("null energy model") {
  CacheStats s;
  s.i_accesses = 100;
  s.d_accesses = 40;
  s.d_misses = 7;
  CHECK(energy(s, at_freq(1'000'000'000), 1e-3, 1e5, null_energy()) == 0.0);
}

TEST_CASE("static energy is linear in time, dynamic energy is not") {
  CacheStats s;
  s.i_accesses = 100;
  s.i_misses = 3;
  const EnergyParams p;
  const auto cfg = at_freq(1'400'000'000);
  const auto e1 = energy_breakdown(s, cfg, 1e-3, 1e5, p);
  const auto e2 = energy_breakdown(s, cfg, 2e-3, 1e5, p);
  CHECK(e2.static_j == doctest::Approx(2 * e1.static_j).epsilon(1e-12));
  CHECK(e2.core_j == e1.core_j);
  CHECK(e2.cache_j == e1.cache_j);
}

TEST_CASE("single hit at the reference size costs the base access energy") {
  EnergyParams p = null_energy();
  p.cache_access_j = 1e-9;
  p.size_ref_bytes = 32768;
  CacheStats s;
  s.d_accesses = 1;
  SystemConfig cfg{{32768, 64, 1}, {32768, 64, 1}, 2'000'000'000};
  CHECK(energy(s, cfg, 1e-3, 0, p) == doctest::Approx(1e-9).epsilon(1e-12));
}

TEST_CASE("objective vectors") {
  const TimingParams t;
  const EnergyParams e;
  const ThermalParams th;
  CacheStats s;
  s.i_accesses = 100'000;
  s.i_misses = 50;
  s.d_accesses = 40'000;
  s.d_misses = 300;
  const auto lo = objective_vector(s, at_freq(1'000'000'000), 1e5, t, e, th, std::nullopt, 2000);
  const auto again = objective_vector(s, at_freq(1'000'000'000), 1e5, t, e, th, std::nullopt, 2000);
  CHECK(lo == again);
  const auto hi = objective_vector(s, at_freq(2'000'000'000), 1e5, t, e, th, std::nullopt, 2000);
  CHECK(hi.exec_time_s < lo.exec_time_s);
  CHECK(hi.peak_temp_c >= lo.peak_temp_c);

  const auto cold = objective_vector(s, at_freq(1'000'000'000), 1e5, t, null_energy(), th);
  CHECK(cold.energy_j == 0.0);
  CHECK(cold.peak_temp_c == th.t_ambient_c);
}

TEST_CASE("parameter validation") {
  TimingParams t;
  t.ipc_base = 8;
  CHECK_THROWS_AS(check_params(t), ConfigError);
  EnergyParams e;
  e.leakage_w = -1;
  CHECK_THROWS_AS(check_params(e), ConfigError);
}

}  // TEST_SUITE
