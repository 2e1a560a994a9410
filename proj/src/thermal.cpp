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

#include "thermotune/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "thermotune/errors.hpp"

namespace thermotune {

void check_params(const ThermalParams& p) {
  if (!(p.r_conv_k_per_w > 0.0)) throw ConfigError("thermal resistance must be positive");
  if (!(p.c_j_per_k > 0.0)) throw ConfigError("thermal capacitance must be positive");
  if (!(p.sample_dt_s > 0.0)) throw ConfigError("thermal sampling period must be positive");
  if (!std::isfinite(p.t_ambient_c)) throw ConfigError("ambient temperature must be finite");
}

double steady_state(double power_w, const ThermalParams& params) {
  if (!(power_w >= 0.0)) throw DomainError("power must be non-negative");
  return params.t_ambient_c + power_w * params.r_conv_k_per_w;
}

ThermalState step(ThermalState state, double power_w, double dt_s, const ThermalParams& params) {
  const double t_ss = steady_state(power_w, params);
  return {t_ss + (state.temp_c - t_ss) * std::exp(-dt_s / params.tau_s())};
}

ThermalProfile run_profile(std::span<const PowerSegment> series, const ThermalParams& params, ThermalState initial,
                           bool keep_samples) {
  ThermalProfile out;
  out.final_state = initial;
  out.peak_c = initial.temp_c;
  out.mean_c = initial.temp_c;
  if (keep_samples) out.samples.push_back({0.0, initial.temp_c});
  if (series.empty()) return out;

  const double tau = params.tau_s();
  const double dt = params.sample_dt_s;
  double now = 0.0;
  double integral = 0.0;
  std::uint64_t next_tick = 1;
  ThermalState state = initial;

  for (const auto& seg : series) {
    if (!(seg.duration_s > 0.0)) throw DomainError("power segment duration must be positive");
    const double t_ss = steady_state(seg.power_w, params);
    integral += t_ss * seg.duration_s + (state.temp_c - t_ss) * tau * -std::expm1(-seg.duration_s / tau);

    const double seg_start = now;
    const ThermalState seg_initial = state;
    const double seg_end = seg_start + seg.duration_s;
    // Grid samples strictly inside the segment, evaluated from the segment
    // start so rounding does not accumulate across samples.
    while (static_cast<double>(next_tick) * dt < seg_end) {
      const double t = static_cast<double>(next_tick) * dt;
      const auto s = step(seg_initial, seg.power_w, t - seg_start, params);
      out.peak_c = std::max(out.peak_c, s.temp_c);
      if (keep_samples) out.samples.push_back({t, s.temp_c});
      ++next_tick;
    }
    state = step(seg_initial, seg.power_w, seg.duration_s, params);
    now = seg_end;
    if (static_cast<double>(next_tick) * dt == now) ++next_tick;
    out.peak_c = std::max(out.peak_c, state.temp_c);
    if (keep_samples) out.samples.push_back({now, state.temp_c});
  }
  out.final_state = state;
  out.mean_c = integral / now;
  return out;
}

}  // namespace thermotune
