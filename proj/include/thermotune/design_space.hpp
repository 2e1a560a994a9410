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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thermotune {

// One L1 cache geometry. All three fields are powers of two.
struct CacheConfig {
  std::uint32_t size_bytes = 0;
  std::uint32_t line_bytes = 0;
  std::uint32_t assoc_ways = 0;

  // Zero when the geometry does not divide into at least one set.
  std::uint32_t set_count() const noexcept {
    const std::uint64_t way_bytes = std::uint64_t{line_bytes} * assoc_ways;
    if (way_bytes == 0 || size_bytes < way_bytes) return 0;
    return static_cast<std::uint32_t>(size_bytes / way_bytes);
  }

  auto operator<=>(const CacheConfig&) const = default;
};

// A point in the design space: instruction cache, data cache, clock.
struct SystemConfig {
  CacheConfig icache;
  CacheConfig dcache;
  std::uint64_t freq_hz = 0;

  auto operator<=>(const SystemConfig&) const = default;
};

// Parameter sets spanning the design space. `validity` names an optional
// predicate that rejects some cross-product combinations; empty means none.
struct DesignSpaceSpec {
  std::vector<std::uint32_t> cache_sizes;
  std::vector<std::uint32_t> line_sizes;
  std::vector<std::uint32_t> associativities;
  std::vector<std::uint64_t> frequencies_hz;
  std::string validity;
  std::optional<SystemConfig> base;
};

struct Validation {
  bool ok = true;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

// 8K..32K sizes, 16..64B lines, 1..4 ways, 800 MHz..2 GHz in 200 MHz steps;
// full cross product (5103 configurations).
DesignSpaceSpec paper_full_spec();
// Same ranges restricted by the "shared-line-size" predicate: both caches
// use one line size (1701 configurations).
DesignSpaceSpec paper_reduced_spec();
// Looks up "paper-full" or "paper-reduced"; throws ConfigError otherwise.
DesignSpaceSpec preset_spec(const std::string& name);

// Names accepted in DesignSpaceSpec::validity.
std::vector<std::string> validity_predicates();

// Throws ConfigError on empty sets, non-power-of-two values, zero
// frequencies or an unknown validity predicate.
void check_spec(const DesignSpaceSpec& spec);

Validation validate(const CacheConfig& cache, const DesignSpaceSpec& spec);
Validation validate(const SystemConfig& config, const DesignSpaceSpec& spec);

// Every valid configuration exactly once, ordered lexicographically over
// (icache, dcache, frequency) with each set sorted ascending.
std::vector<SystemConfig> enumerate(const DesignSpaceSpec& spec);

// The spec's declared base, or 32K/64B/4-way caches at 2 GHz. Throws
// ConfigError when the base is not a member of the space.
SystemConfig base_config(const DesignSpaceSpec& spec);

// Enumerated space with stable integer indices.
class DesignSpace {
 public:
  explicit DesignSpace(DesignSpaceSpec spec);

  const DesignSpaceSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return configs_.size(); }
  const SystemConfig& at(std::size_t index) const { return configs_.at(index); }
  std::span<const SystemConfig> configs() const noexcept { return configs_; }
  std::optional<std::size_t> index_of(const SystemConfig& config) const;
  // Unset when the space does not contain a base configuration.
  const std::optional<std::size_t>& base_index() const noexcept { return base_index_; }
  // Throws ConfigError when there is no base configuration.
  const SystemConfig& base() const;

 private:
  DesignSpaceSpec spec_;
  std::vector<SystemConfig> configs_;
  std::optional<std::size_t> base_index_;
};

// "32K/64B/4w" style labels.
std::string to_string(const CacheConfig& cache);
std::string to_string(const SystemConfig& config);

}  // namespace thermotune
