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

#include "thermotune/models.hpp"

#include <algorithm>
#include <cmath>

#include "thermotune/errors.hpp"

namespace thermotune {

void check_params(const TimingParams& p) {
  if (!(p.issue_width > 0.0)) throw ConfigError("issue width must be positive");
  if (!(p.ipc_base > 0.0 && p.ipc_base <= p.issue_width)) throw ConfigError("ipc_base must lie in (0, issue_width]");
  if (!(p.mem_latency_s > 0.0)) throw ConfigError("memory latency must be positive");
}

void check_params(const EnergyParams& p) {
  for (double v : {p.cache_access_j, p.size_exponent, p.way_factor, p.miss_byte_j, p.instr_j, p.leakage_w, p.v_min}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("energy coefficients must be finite and non-negative");
  }
  if (!(p.size_ref_bytes > 0.0)) throw ConfigError("reference cache size must be positive");
  if (!(p.v_max > 0.0) || !(p.v_min <= p.v_max)) throw ConfigError("voltage endpoints must satisfy 0 <= v_min <= v_max, v_max > 0");
  if (!(p.f_min_hz > 0.0) || !(p.f_min_hz <= p.f_max_hz)) throw ConfigError("frequency endpoints must satisfy 0 < f_min <= f_max");
}

double voltage(double freq_hz, const EnergyParams& params) {
  if (!(freq_hz >= params.f_min_hz && freq_hz <= params.f_max_hz)) {
    throw ConfigError("frequency " + std::to_string(freq_hz) + " Hz outside the voltage table");
  }
  if (params.f_max_hz == params.f_min_hz) return params.v_max;
  return params.v_min + (params.v_max - params.v_min) * (freq_hz - params.f_min_hz) / (params.f_max_hz - params.f_min_hz);
}

double miss_penalty_cycles(double mem_latency_s, double freq_hz) {
  const double x = mem_latency_s * freq_hz;
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, r)) return r;
  return std::ceil(x);
}

double cycles(const CacheStats& stats, const SystemConfig& config, double instr_count, const TimingParams& params) {
  const double f = static_cast<double>(config.freq_hz);
  return instr_count / params.ipc_base +
         static_cast<double>(stats.misses()) * miss_penalty_cycles(params.mem_latency_s, f);
}

double exec_time(const CacheStats& stats, const SystemConfig& config, double instr_count, const TimingParams& params) {
  return cycles(stats, config, instr_count, params) / static_cast<double>(config.freq_hz);
}

double cache_access_energy(const CacheConfig& cache, const EnergyParams& params) {
  return params.cache_access_j * std::pow(cache.size_bytes / params.size_ref_bytes, params.size_exponent) *
         (1.0 + params.way_factor * (static_cast<double>(cache.assoc_ways) - 1.0));
}

EnergyBreakdown energy_breakdown(const CacheStats& stats, const SystemConfig& config, double exec_time_s,
                                 double instr_count, const EnergyParams& params) {
  const double v_rel = voltage(static_cast<double>(config.freq_hz), params) / params.v_max;
  EnergyBreakdown e;
  e.core_j = instr_count * params.instr_j * v_rel * v_rel;
  auto one_cache = [&](const CacheConfig& c, std::uint64_t accesses, std::uint64_t misses) {
    return static_cast<double>(accesses) * cache_access_energy(c, params) +
           static_cast<double>(misses) * c.line_bytes * params.miss_byte_j;
  };
  e.cache_j = one_cache(config.icache, stats.i_accesses, stats.i_misses) +
              one_cache(config.dcache, stats.d_accesses, stats.d_misses);
  e.static_j = params.leakage_w * v_rel * exec_time_s;
  return e;
}

double energy(const CacheStats& stats, const SystemConfig& config, double exec_time_s, double instr_count,
              const EnergyParams& params) {
  return energy_breakdown(stats, config, exec_time_s, instr_count, params).total();
}

ObjectiveVector objective_vector(const CacheStats& stats, const SystemConfig& config, double instr_count,
                                 const TimingParams& timing, const EnergyParams& energy_params,
                                 const ThermalParams& thermal, std::optional<ThermalState> initial, double repeat) {
  if (!(repeat > 0.0)) throw ConfigError("repeat factor must be positive");
  ObjectiveVector v;
  const double t = exec_time(stats, config, instr_count, timing);
  v.exec_time_s = t * repeat;
  v.energy_j = energy(stats, config, t, instr_count, energy_params) * repeat;
  const ThermalState start = initial.value_or(ambient_state(thermal));
  if (v.exec_time_s > 0.0) {
    const PowerSegment seg{v.energy_j / v.exec_time_s, v.exec_time_s};
    v.peak_temp_c = run_profile({&seg, 1}, thermal, start, false).peak_c;
  } else {
    v.peak_temp_c = start.temp_c;
  }
  return v;
}

}  // namespace thermotune
