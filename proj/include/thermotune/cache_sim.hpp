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

#include <cstdint>
#include <span>
#include <vector>

#include "thermotune/design_space.hpp"
#include "thermotune/trace.hpp"

namespace thermotune {

struct CacheStats {
  std::uint64_t i_accesses = 0;
  std::uint64_t i_misses = 0;
  std::uint64_t d_accesses = 0;
  std::uint64_t d_misses = 0;
  std::uint64_t d_writebacks = 0;

  double imr() const noexcept { return i_accesses ? static_cast<double>(i_misses) / static_cast<double>(i_accesses) : 0.0; }
  double dmr() const noexcept { return d_accesses ? static_cast<double>(d_misses) / static_cast<double>(d_accesses) : 0.0; }
  std::uint64_t misses() const noexcept { return i_misses + d_misses; }

  CacheStats& operator+=(const CacheStats& o) noexcept {
    i_accesses += o.i_accesses;
    i_misses += o.i_misses;
    d_accesses += o.d_accesses;
    d_misses += o.d_misses;
    d_writebacks += o.d_writebacks;
    return *this;
  }
  bool operator==(const CacheStats&) const = default;
};

// Throws ConfigError unless line size, associativity and set count are
// positive powers of two.
void check_geometry(const CacheConfig& config);

// Set-associative cache with exact LRU replacement, write-allocate and
// write-back. Set index = (address / line_bytes) mod set_count.
class Cache {
 public:
  explicit Cache(const CacheConfig& config);

  // Returns true on a hit.
  bool access(std::uint64_t address, bool is_write);
  void reset();

  const CacheConfig& config() const noexcept { return config_; }
  std::uint64_t accesses() const noexcept { return accesses_; }
  std::uint64_t misses() const noexcept { return misses_; }
  std::uint64_t writebacks() const noexcept { return writebacks_; }

 private:
  struct Way {
    std::uint64_t block = 0;
    std::uint64_t last_use = 0;
    bool valid = false;
    bool dirty = false;
  };

  CacheConfig config_;
  unsigned line_shift_;
  std::uint64_t set_mask_;
  std::vector<Way> ways_;  // set-major, assoc_ways entries per set
  std::uint64_t clock_ = 0;
  std::uint64_t accesses_ = 0;
  std::uint64_t misses_ = 0;
  std::uint64_t writebacks_ = 0;
};

// Split L1 pair: instruction fetches go to the icache, data accesses to the
// dcache. Single-owner mutable state.
class CacheSimulator {
 public:
  CacheSimulator(const CacheConfig& icache, const CacheConfig& dcache);

  // Statistics for `segment` alone. With cold_start the caches are emptied
  // first; otherwise contents carry over from earlier calls.
  CacheStats run(std::span<const MemAccess> segment, bool cold_start = false);
  void reset();

 private:
  Cache icache_;
  Cache dcache_;
};

CacheStats simulate(std::span<const MemAccess> segment, const CacheConfig& icache, const CacheConfig& dcache);

// One simulator shared across all intervals, so cache state persists over
// interval boundaries.
std::vector<CacheStats> stats_per_interval(std::span<const Interval> intervals, const CacheConfig& icache,
                                           const CacheConfig& dcache);

}  // namespace thermotune
