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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace thermotune {

enum class AccessKind : std::uint8_t { kInstructionFetch, kDataRead, kDataWrite };

struct MemAccess {
  AccessKind kind = AccessKind::kInstructionFetch;
  std::uint64_t address = 0;

  bool is_instruction() const noexcept { return kind == AccessKind::kInstructionFetch; }
  bool operator==(const MemAccess&) const = default;
};

using Trace = std::vector<MemAccess>;

// Text format, one record per line: `<I|D> <R|W> <0x-hex address>`.
// Blank lines and lines starting with '#' are skipped. Throws ParseError
// carrying the 1-based line number of the first malformed record.
Trace parse_trace(std::istream& in, unsigned address_bits = 32);
Trace parse_trace_file(const std::string& path, unsigned address_bits = 32);
void write_trace(std::ostream& out, std::span<const MemAccess> trace);

// One stretch of a synthetic program. Every instruction fetches sequentially
// from a loop over `code_bytes`; a `data_ratio` fraction of instructions also
// touch the working set, either by striding through it or (with probability
// `random_fraction`) at a uniformly random word.
struct SyntheticSegment {
  std::uint64_t working_set_bytes = 4096;
  std::uint64_t stride_bytes = 64;
  std::uint64_t instruction_count = 100'000;
  std::uint64_t code_bytes = 4096;
  double data_ratio = 0.4;
  double write_fraction = 0.25;
  double random_fraction = 0.2;
};

// Pure function of (script, seed). Throws ConfigError on a zero-length,
// zero-working-set or zero-stride segment, or fractions outside [0, 1].
Trace generate_synthetic(std::span<const SyntheticSegment> script, std::uint64_t seed);

struct Interval {
  std::size_t index = 0;
  std::size_t begin = 0;  // offset of the first access in the trace
  std::span<const MemAccess> accesses;
  std::uint64_t instruction_count = 0;
};

// Tiles the trace into intervals of exactly `interval_instructions`
// instruction fetches (the last may hold fewer). An interval ends just before
// the fetch that would exceed the quota, so data accesses stay with the
// instruction that issued them. A trace without fetches is a single interval.
// Spans alias `trace`.
std::vector<Interval> split_intervals(std::span<const MemAccess> trace, std::uint64_t interval_instructions);

}  // namespace thermotune
