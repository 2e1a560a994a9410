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

#include "thermotune/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string_view>

#include "thermotune/errors.hpp"

namespace thermotune {

namespace {

std::string_view next_token(std::string_view& rest) {
  auto start = rest.find_first_not_of(" \t");
  if (start == std::string_view::npos) {
    rest = {};
    return {};
  }
  rest.remove_prefix(start);
  auto end = rest.find_first_of(" \t");
  auto tok = rest.substr(0, end);
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  return tok;
}

MemAccess parse_record(std::string_view line, std::size_t line_no, unsigned address_bits) {
  auto rest = line;
  const auto kind = next_token(rest);
  const auto op = next_token(rest);
  const auto addr = next_token(rest);
  if (!next_token(rest).empty()) throw ParseError("trailing tokens", line_no);
  if (kind != "I" && kind != "D") throw ParseError("record kind must be I or D", line_no);
  if (op != "R" && op != "W") throw ParseError("operation must be R or W", line_no);
  if (kind == "I" && op == "W") throw ParseError("instruction records must be reads", line_no);
  if (addr.size() < 3 || addr[0] != '0' || (addr[1] != 'x' && addr[1] != 'X')) {
    throw ParseError("address must be 0x-prefixed hex", line_no);
  }
  std::uint64_t value = 0;
  const char* first = addr.data() + 2;
  const char* last = addr.data() + addr.size();
  auto [ptr, ec] = std::from_chars(first, last, value, 16);
  if (ec != std::errc{} || ptr != last) throw ParseError("bad hex address '" + std::string(addr) + "'", line_no);
  if (address_bits < 64 && (value >> address_bits) != 0) {
    throw ParseError("address exceeds " + std::to_string(address_bits) + "-bit width", line_no);
  }
  MemAccess a;
  a.address = value;
  if (kind == "I") {
    a.kind = AccessKind::kInstructionFetch;
  } else {
    a.kind = op == "R" ? AccessKind::kDataRead : AccessKind::kDataWrite;
  }
  return a;
}

// 53-bit uniform double in [0, 1); avoids implementation-defined
// distribution objects so traces are identical across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Trace parse_trace(std::istream& in, unsigned address_bits) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    const auto first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos || view[first] == '#') continue;
    trace.push_back(parse_record(view, line_no, address_bits));
  }
  return trace;
}

Trace parse_trace_file(const std::string& path, unsigned address_bits) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file '" + path + "'");
  return parse_trace(in, address_bits);
}

void write_trace(std::ostream& out, std::span<const MemAccess> trace) {
  char buf[32];
  for (const auto& a : trace) {
    const char* prefix = a.kind == AccessKind::kInstructionFetch ? "I R 0x" : a.kind == AccessKind::kDataRead ? "D R 0x" : "D W 0x";
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a.address, 16);
    out << prefix << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << '\n';
  }
}

Trace generate_synthetic(std::span<const SyntheticSegment> script, std::uint64_t seed) {
  constexpr std::uint64_t kCodeBase = 0x00400000;
  constexpr std::uint64_t kDataBase = 0x10000000;

  for (std::size_t i = 0; i < script.size(); ++i) {
    const auto& s = script[i];
    const auto where = "synthetic segment " + std::to_string(i) + ": ";
    if (s.instruction_count == 0) throw ConfigError(where + "instruction count must be positive");
    if (s.working_set_bytes == 0) throw ConfigError(where + "working set must be positive");
    if (s.stride_bytes == 0) throw ConfigError(where + "stride must be positive");
    if (s.code_bytes < 4) throw ConfigError(where + "code footprint must be at least 4 bytes");
    for (double f : {s.data_ratio, s.write_fraction, s.random_fraction}) {
      if (!(f >= 0.0 && f <= 1.0)) throw ConfigError(where + "fractions must lie in [0, 1]");
    }
  }

  std::mt19937_64 rng(seed);
  Trace trace;
  for (const auto& s : script) {
    const std::uint64_t code_words = s.code_bytes / 4;
    const std::uint64_t data_words = std::max<std::uint64_t>(1, s.working_set_bytes / 4);
    std::uint64_t pc = 0;
    std::uint64_t cursor = 0;
    for (std::uint64_t n = 0; n < s.instruction_count; ++n) {
      trace.push_back({AccessKind::kInstructionFetch, kCodeBase + 4 * pc});
      pc = (pc + 1) % code_words;
      if (unit(rng) >= s.data_ratio) continue;
      std::uint64_t offset;
      if (unit(rng) < s.random_fraction) {
        offset = 4 * (rng() % data_words);
      } else {
        offset = cursor;
        cursor = (cursor + s.stride_bytes) % s.working_set_bytes;
      }
      const auto kind = unit(rng) < s.write_fraction ? AccessKind::kDataWrite : AccessKind::kDataRead;
      trace.push_back({kind, kDataBase + offset});
    }
  }
  return trace;
}

std::vector<Interval> split_intervals(std::span<const MemAccess> trace, std::uint64_t interval_instructions) {
  if (interval_instructions == 0) throw ConfigError("interval length must be positive");
  std::vector<Interval> out;
  if (trace.empty()) return out;

  std::size_t begin = 0;
  std::uint64_t fetches = 0;
  auto close = [&](std::size_t end) {
    Interval iv;
    iv.index = out.size();
    iv.begin = begin;
    iv.accesses = trace.subspan(begin, end - begin);
    iv.instruction_count = fetches;
    out.push_back(iv);
    begin = end;
    fetches = 0;
  };
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!trace[i].is_instruction()) continue;
    if (fetches == interval_instructions) close(i);
    ++fetches;
  }
  close(trace.size());
  return out;
}

}  // namespace thermotune
