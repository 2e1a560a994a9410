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
#include <stdexcept>
#include <string>

namespace thermotune {

// Invalid or inconsistent configuration (design space, parameter blocks,
// synthetic scripts).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed trace or document input. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Argument outside a function's mathematical domain (negative power,
// non-finite objective component).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A data-structure invariant would be broken by the requested operation.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Characterization of a phase was aborted by an evaluator failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TuningError : public std::runtime_error {
 public:
  TuningError(const std::string& what, int phase_id, std::size_t config_index)
      : std::runtime_error(what), phase_id_(phase_id), config_index_(config_index) {}
  int phase_id() const noexcept { return phase_id_; }
  std::size_t config_index() const noexcept { return config_index_; }

 private:
  int phase_id_;
  std::size_t config_index_;
};

}  // namespace thermotune
