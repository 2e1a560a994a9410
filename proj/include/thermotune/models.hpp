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
#include <cstdint>
#include <optional>

#include "thermotune/cache_sim.hpp"
#include "thermotune/design_space.hpp"
#include "thermotune/thermal.hpp"

namespace thermotune {

struct TimingParams {
  double ipc_base = 2.0;          // instructions per cycle with no misses
  double mem_latency_s = 100e-9;  // main-memory latency, wall clock
  double issue_width = 4.0;
};

// Analytic per-access and per-instruction energy model. Voltage scales
// linearly between (f_min_hz, v_min) and (f_max_hz, v_max); v_max is the
// reference voltage for the dynamic and leakage terms.
struct EnergyParams {
  double cache_access_j = 0.5e-9;  // per access at size_ref_bytes, direct mapped
  double size_ref_bytes = 32.0 * 1024;
  double size_exponent = 0.5;
  double way_factor = 0.25;        // relative increase per extra way
  double miss_byte_j = 0.05e-9;    // transfer energy per line byte on a miss
  double instr_j = 2.0e-9;         // core dynamic energy per instruction at v_max
  double leakage_w = 1.0;          // at v_max
  double v_min = 0.9;
  double v_max = 1.3;
  double f_min_hz = 800e6;
  double f_max_hz = 2000e6;
};

// Costs for one (phase, configuration) pair; every component is minimized.
struct ObjectiveVector {
  double exec_time_s = 0.0;
  double energy_j = 0.0;
  double peak_temp_c = 0.0;

  double edp() const noexcept { return energy_j * exec_time_s; }
  bool operator==(const ObjectiveVector&) const = default;
};

// A configuration together with its measured costs on the current phase.
struct Evaluation {
  std::size_t config_index = 0;
  SystemConfig config;
  ObjectiveVector objectives;

  bool operator==(const Evaluation&) const = default;
};

// Throw ConfigError on out-of-range parameters.
void check_params(const TimingParams& p);
void check_params(const EnergyParams& p);

// Throws ConfigError outside [f_min_hz, f_max_hz].
double voltage(double freq_hz, const EnergyParams& params);

// Miss penalty in whole cycles: ceil(mem_latency_s * freq_hz), with products
// that are integral up to rounding noise taken as exact.
double miss_penalty_cycles(double mem_latency_s, double freq_hz);

// (instr / ipc_base + misses * miss_penalty_cycles) / freq.
double exec_time(const CacheStats& stats, const SystemConfig& config, double instr_count, const TimingParams& params);

// Cycles per the same formula; IPC under `config` is instr_count / cycles.
double cycles(const CacheStats& stats, const SystemConfig& config, double instr_count, const TimingParams& params);

// Per-access energy of one cache: cache_access_j * (size/size_ref)^exp *
// (1 + way_factor * (ways - 1)).
double cache_access_energy(const CacheConfig& cache, const EnergyParams& params);

struct EnergyBreakdown {
  double core_j = 0.0;
  double cache_j = 0.0;
  double static_j = 0.0;
  double total() const noexcept { return core_j + cache_j + static_j; }
};

EnergyBreakdown energy_breakdown(const CacheStats& stats, const SystemConfig& config, double exec_time_s,
                                 double instr_count, const EnergyParams& params);

double energy(const CacheStats& stats, const SystemConfig& config, double exec_time_s, double instr_count,
              const EnergyParams& params);

// Time and energy from the analytic models; peak temperature from running the
// average power (energy / time) for the execution time through the thermal
// model starting at `initial` (ambient when unset). `repeat` scales the
// segment to that many back-to-back executions with the same statistics:
// time and energy multiply, power is unchanged, heating lasts longer.
ObjectiveVector objective_vector(const CacheStats& stats, const SystemConfig& config, double instr_count,
                                 const TimingParams& timing, const EnergyParams& energy_params,
                                 const ThermalParams& thermal, std::optional<ThermalState> initial = std::nullopt,
                                 double repeat = 1.0);

}  // namespace thermotune
