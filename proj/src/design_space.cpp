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

#include "thermotune/design_space.hpp"

#include <algorithm>
#include <bit>

#include "thermotune/errors.hpp"

namespace thermotune {

namespace {

constexpr CacheConfig kBaseCache{32 * 1024, 64, 4};
constexpr std::uint64_t kBaseFreqHz = 2'000'000'000;

template <typename T>
std::vector<T> sorted_unique(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

template <typename T>
bool contains(const std::vector<T>& set, T value) {
  return std::find(set.begin(), set.end(), value) != set.end();
}

bool passes_predicate(const std::string& name, const SystemConfig& c) {
  if (name.empty() || name == "none") return true;
  if (name == "shared-line-size") return c.icache.line_bytes == c.dcache.line_bytes;
  throw ConfigError("unknown validity predicate '" + name + "'");
}

std::string size_label(std::uint32_t bytes) {
  if (bytes >= 1024 && bytes % 1024 == 0) return std::to_string(bytes / 1024) + "K";
  return std::to_string(bytes) + "B";
}

}  // namespace

DesignSpaceSpec paper_full_spec() {
  DesignSpaceSpec spec;
  spec.cache_sizes = {8 * 1024, 16 * 1024, 32 * 1024};
  spec.line_sizes = {16, 32, 64};
  spec.associativities = {1, 2, 4};
  for (std::uint64_t mhz = 800; mhz <= 2000; mhz += 200) spec.frequencies_hz.push_back(mhz * 1'000'000);
  return spec;
}

DesignSpaceSpec paper_reduced_spec() {
  DesignSpaceSpec spec = paper_full_spec();
  spec.validity = "shared-line-size";
  return spec;
}

DesignSpaceSpec preset_spec(const std::string& name) {
  if (name == "paper-full") return paper_full_spec();
  if (name == "paper-reduced") return paper_reduced_spec();
  throw ConfigError("unknown design-space preset '" + name + "'");
}

std::vector<std::string> validity_predicates() { return {"none", "shared-line-size"}; }

void check_spec(const DesignSpaceSpec& spec) {
  auto check_set = [](const std::vector<std::uint32_t>& set, const char* what) {
    if (set.empty()) throw ConfigError(std::string("empty ") + what + " set");
    for (auto v : set) {
      if (!std::has_single_bit(v)) throw ConfigError(std::string(what) + " " + std::to_string(v) + " is not a power of two");
    }
  };
  check_set(spec.cache_sizes, "cache size");
  check_set(spec.line_sizes, "line size");
  check_set(spec.associativities, "associativity");
  if (spec.frequencies_hz.empty()) throw ConfigError("empty frequency set");
  for (auto f : spec.frequencies_hz) {
    if (f == 0) throw ConfigError("frequency must be positive");
  }
  const auto& names = validity_predicates();
  if (!spec.validity.empty() && std::find(names.begin(), names.end(), spec.validity) == names.end()) {
    throw ConfigError("unknown validity predicate '" + spec.validity + "'");
  }
}

Validation validate(const CacheConfig& cache, const DesignSpaceSpec& spec) {
  if (!contains(spec.cache_sizes, cache.size_bytes)) return {false, "cache size not in spec"};
  if (!contains(spec.line_sizes, cache.line_bytes)) return {false, "line size not in spec"};
  if (!contains(spec.associativities, cache.assoc_ways)) return {false, "associativity not in spec"};
  const auto sets = cache.set_count();
  if (sets < 1) return {false, "set count < 1"};
  if (!std::has_single_bit(sets)) return {false, "set count is not a power of two"};
  return {};
}

Validation validate(const SystemConfig& config, const DesignSpaceSpec& spec) {
  if (auto v = validate(config.icache, spec); !v) return {false, "icache: " + v.reason};
  if (auto v = validate(config.dcache, spec); !v) return {false, "dcache: " + v.reason};
  if (!contains(spec.frequencies_hz, config.freq_hz)) return {false, "frequency not in spec"};
  if (!passes_predicate(spec.validity, config)) return {false, "rejected by validity predicate '" + spec.validity + "'"};
  return {};
}

std::vector<SystemConfig> enumerate(const DesignSpaceSpec& spec) {
  check_spec(spec);
  const auto sizes = sorted_unique(spec.cache_sizes);
  const auto lines = sorted_unique(spec.line_sizes);
  const auto ways = sorted_unique(spec.associativities);
  const auto freqs = sorted_unique(spec.frequencies_hz);

  std::vector<CacheConfig> caches;
  for (auto s : sizes) {
    for (auto l : lines) {
      for (auto w : ways) {
        CacheConfig c{s, l, w};
        if (validate(c, spec)) caches.push_back(c);
      }
    }
  }

  std::vector<SystemConfig> out;
  for (const auto& ic : caches) {
    for (const auto& dc : caches) {
      for (auto f : freqs) {
        SystemConfig c{ic, dc, f};
        if (passes_predicate(spec.validity, c)) out.push_back(c);
      }
    }
  }
  return out;
}

SystemConfig base_config(const DesignSpaceSpec& spec) {
  const SystemConfig base = spec.base.value_or(SystemConfig{kBaseCache, kBaseCache, kBaseFreqHz});
  if (auto v = validate(base, spec); !v) throw ConfigError("base configuration " + to_string(base) + " invalid: " + v.reason);
  return base;
}

DesignSpace::DesignSpace(DesignSpaceSpec spec) : spec_(std::move(spec)), configs_(enumerate(spec_)) {
  if (configs_.empty()) throw ConfigError("design space has no valid configurations");
  try {
    base_index_ = index_of(base_config(spec_));
  } catch (const ConfigError&) {
    if (spec_.base) throw;
  }
}

std::optional<std::size_t> DesignSpace::index_of(const SystemConfig& config) const {
  auto it = std::lower_bound(configs_.begin(), configs_.end(), config);
  if (it == configs_.end() || *it != config) return std::nullopt;
  return static_cast<std::size_t>(it - configs_.begin());
}

const SystemConfig& DesignSpace::base() const {
  if (!base_index_) throw ConfigError("design space has no base configuration");
  return configs_[*base_index_];
}

std::string to_string(const CacheConfig& cache) {
  return size_label(cache.size_bytes) + "/" + std::to_string(cache.line_bytes) + "B/" + std::to_string(cache.assoc_ways) + "w";
}

std::string to_string(const SystemConfig& config) {
  return to_string(config.icache) + "," + to_string(config.dcache) + "@" + std::to_string(config.freq_hz / 1'000'000) + "MHz";
}

}  // namespace thermotune
