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

#include "thermotune/cache_sim.hpp"

#include <bit>

#include "thermotune/errors.hpp"

namespace thermotune {

void check_geometry(const CacheConfig& config) {
  if (!std::has_single_bit(config.line_bytes)) throw ConfigError("line size must be a power of two: " + to_string(config));
  if (!std::has_single_bit(config.assoc_ways)) throw ConfigError("associativity must be a power of two: " + to_string(config));
  const auto sets = config.set_count();
  if (sets < 1 || !std::has_single_bit(sets)) throw ConfigError("set count must be a positive power of two: " + to_string(config));
}

Cache::Cache(const CacheConfig& config) : config_(config) {
  check_geometry(config);
  line_shift_ = static_cast<unsigned>(std::countr_zero(config.line_bytes));
  set_mask_ = config.set_count() - 1;
  ways_.resize(std::size_t{config.set_count()} * config.assoc_ways);
}

bool Cache::access(std::uint64_t address, bool is_write) {
  ++accesses_;
  ++clock_;
  const std::uint64_t block = address >> line_shift_;
  Way* set = &ways_[(block & set_mask_) * config_.assoc_ways];
  Way* victim = set;
  for (std::uint32_t w = 0; w < config_.assoc_ways; ++w) {
    Way& way = set[w];
    if (way.valid && way.block == block) {
      way.last_use = clock_;
      way.dirty |= is_write;
      return true;
    }
    // Invalid ways sort before every valid one (last_use 0 vs >= 1).
    if (!way.valid ? victim->valid : (victim->valid && way.last_use < victim->last_use)) victim = &way;
  }
  ++misses_;
  if (victim->valid && victim->dirty) ++writebacks_;
  *victim = Way{block, clock_, true, is_write};
  return false;
}

void Cache::reset() {
  for (auto& w : ways_) w = Way{};
  clock_ = accesses_ = misses_ = writebacks_ = 0;
}

CacheSimulator::CacheSimulator(const CacheConfig& icache, const CacheConfig& dcache) : icache_(icache), dcache_(dcache) {}

CacheStats CacheSimulator::run(std::span<const MemAccess> segment, bool cold_start) {
  if (cold_start) reset();
  CacheStats s;
  const auto wb0 = dcache_.writebacks();
  for (const auto& a : segment) {
    if (a.kind == AccessKind::kInstructionFetch) {
      ++s.i_accesses;
      s.i_misses += !icache_.access(a.address, false);
    } else {
      ++s.d_accesses;
      s.d_misses += !dcache_.access(a.address, a.kind == AccessKind::kDataWrite);
    }
  }
  s.d_writebacks = dcache_.writebacks() - wb0;
  return s;
}

void CacheSimulator::reset() {
  icache_.reset();
  dcache_.reset();
}

CacheStats simulate(std::span<const MemAccess> segment, const CacheConfig& icache, const CacheConfig& dcache) {
  CacheSimulator sim(icache, dcache);
  return sim.run(segment, true);
}

std::vector<CacheStats> stats_per_interval(std::span<const Interval> intervals, const CacheConfig& icache,
                                           const CacheConfig& dcache) {
  CacheSimulator sim(icache, dcache);
  std::vector<CacheStats> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) out.push_back(sim.run(iv.accesses));
  return out;
}

}  // namespace thermotune
