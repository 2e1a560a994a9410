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

#include <optional>
#include <span>
#include <vector>

namespace thermotune {

// Single-node RC network from the die to ambient. R*C is the thermal time
// constant (0.2 s with the defaults).
struct ThermalParams {
  double r_conv_k_per_w = 4.0;
  double c_j_per_k = 0.05;
  double t_ambient_c = 45.0;
  double sample_dt_s = 0.010;

  double tau_s() const noexcept { return r_conv_k_per_w * c_j_per_k; }
};

struct ThermalState {
  double temp_c = 0.0;
};

void check_params(const ThermalParams& p);

inline ThermalState ambient_state(const ThermalParams& p) { return {p.t_ambient_c}; }

// t_ambient + power * R. Throws DomainError for negative power.
double steady_state(double power_w, const ThermalParams& params);

// Exact solution of the RC equation over dt_s with constant power.
ThermalState step(ThermalState state, double power_w, double dt_s, const ThermalParams& params);

struct PowerSegment {
  double power_w = 0.0;
  double duration_s = 0.0;
};

struct TempSample {
  double time_s = 0.0;
  double temp_c = 0.0;
};

struct ThermalProfile {
  double peak_c = 0.0;
  double mean_c = 0.0;  // time-weighted over the profile
  ThermalState final_state;
  std::vector<TempSample> samples;
};

// Integrates segment by segment. Samples land on every multiple of
// sample_dt_s plus each segment end (and t = 0); the peak is taken over those
// samples, which within a constant-power segment includes its maximum.
// An empty series returns the initial state with peak = mean = initial.
ThermalProfile run_profile(std::span<const PowerSegment> series, const ThermalParams& params, ThermalState initial,
                           bool keep_samples = true);

}  // namespace thermotune
