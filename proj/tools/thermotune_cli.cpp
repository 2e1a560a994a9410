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

// thermotune command-line driver.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
// THERMOTUNE_OUTPUT_DIR and THERMOTUNE_JOBS override the configuration file;
// --out and --jobs override both.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "thermotune/thermotune.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct SessionDeleter {
  void operator()(tt_session* s) const { tt_session_destroy(s); }
};
struct OutputDeleter {
  void operator()(tt_output* o) const { tt_output_destroy(o); }
};
using Session = std::unique_ptr<tt_session, SessionDeleter>;
using Output = std::unique_ptr<tt_output, OutputDeleter>;

int exit_code(tt_status status) {
  switch (status) {
    case TT_OK: return kExitOk;
    case TT_ERR_INVALID_ARGUMENT:
    case TT_ERR_CONFIG:
    case TT_ERR_PARSE: return kExitUsage;
    default: return kExitFailure;
  }
}

int report_error(tt_status status) {
  std::fprintf(stderr, "thermotune: %s: %s\n", tt_status_name(status), tt_last_error());
  return exit_code(status);
}

std::optional<std::string> read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string config;
  std::string trace;
  std::string synthetic;
  std::string priority;
  std::optional<double> threshold;
  std::string history;
  std::string out;
  unsigned jobs = 0;
  std::optional<unsigned long long> seed;
  int phase = -1;
  std::string grid;
  std::string baseline_kind;
  std::string report_a;
  std::string report_b;
};

// Builds the session and applies overrides; returns an exit code on failure.
int open_session(const Options& o, Session& session) {
  tt_session* raw = nullptr;
  tt_status st = o.config.empty() ? tt_session_create_default(&raw) : tt_session_load(o.config.c_str(), &raw);
  if (st != TT_OK) return report_error(st);
  session.reset(raw);

  if (const char* env = std::getenv("THERMOTUNE_OUTPUT_DIR"); env && *env) tt_session_set_output_dir(raw, env);
  if (const char* env = std::getenv("THERMOTUNE_JOBS"); env && *env) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0) {
      std::fprintf(stderr, "thermotune: THERMOTUNE_JOBS must be a positive integer\n");
      return kExitUsage;
    }
    tt_session_set_jobs(raw, static_cast<unsigned>(v));
  }
  if (!o.out.empty()) tt_session_set_output_dir(raw, o.out.c_str());
  if (o.jobs > 0 && (st = tt_session_set_jobs(raw, o.jobs)) != TT_OK) return report_error(st);
  if (o.seed && (st = tt_session_set_seed(raw, *o.seed)) != TT_OK) return report_error(st);
  if (!o.priority.empty()) {
    if (o.priority.size() != 1) {
      std::fprintf(stderr, "thermotune: --priority takes one of S, N, T, X\n");
      return kExitUsage;
    }
    if ((st = tt_session_set_priority(raw, o.priority[0])) != TT_OK) return report_error(st);
  }
  if (o.threshold && (st = tt_session_set_threshold(raw, *o.threshold)) != TT_OK) return report_error(st);
  if (!o.trace.empty() && (st = tt_session_set_trace_file(raw, o.trace.c_str())) != TT_OK) return report_error(st);
  if (!o.synthetic.empty()) {
    const auto text = read_text(o.synthetic);
    if (!text) {
      std::fprintf(stderr, "thermotune: cannot read synthetic script '%s'\n", o.synthetic.c_str());
      return kExitUsage;
    }
    if ((st = tt_session_set_synthetic(raw, text->c_str())) != TT_OK) return report_error(st);
  }
  return kExitOk;
}

// Writes the documents, prints the summary and maps the status.
int finish(tt_status status, tt_output* raw, const char* dir, bool print_only = false) {
  Output output(raw);
  if (!output) return report_error(status);
  if (!print_only) {
    if (const tt_status ws = tt_output_write(output.get(), dir); ws != TT_OK) return report_error(ws);
  }
  std::fputs(tt_output_summary(output.get()), stdout);
  if (!print_only) std::fprintf(stderr, "wrote %zu file(s) to %s\n", tt_output_count(output.get()), dir);
  if (status != TT_OK) return report_error(status);
  return kExitOk;
}

void add_config(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "experiment configuration (JSON); built-in defaults when omitted");
}

void add_trace(CLI::App* cmd, Options& o) {
  auto* t = cmd->add_option("--trace", o.trace, "trace file, overriding the configuration");
  auto* s = cmd->add_option("--synthetic", o.synthetic, "synthetic script (JSON), overriding the configuration");
  t->excludes(s);
}

void add_run(CLI::App* cmd, Options& o) {
  add_config(cmd, o);
  add_trace(cmd, o);
  cmd->add_option("--priority", o.priority, "selection priority: S (EDP), N (energy), T (temperature), X (time)");
  cmd->add_option("--threshold", o.threshold, "peak temperature threshold in degrees C");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--jobs", o.jobs, "worker threads for evaluations")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "tuning seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermotune: thermal-aware cache and frequency tuning on traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tt_version());
  Options o;

  auto* enumerate = app.add_subcommand("enumerate", "list the design space as CSV");
  add_config(enumerate, o);
  enumerate->add_option("--out", o.out, "also write space.csv to this directory");

  auto* tune = app.add_subcommand("tune", "tune every phase of a trace");
  add_run(tune, o);
  tune->add_option("--history", o.history, "phase history file, read if present and rewritten afterwards");

  auto* exhaustive = app.add_subcommand("exhaustive", "exhaustive search per phase");
  add_run(exhaustive, o);

  auto* baseline = app.add_subcommand("baseline", "frequency-only, cache-only or base-configuration runs");
  baseline->add_option("kind", o.baseline_kind, "dfs-only | cache-only | base")
      ->required()
      ->check(CLI::IsMember({"dfs-only", "cache-only", "base"}));
  add_run(baseline, o);

  auto* sweep_temp = app.add_subcommand("sweep-temp", "peak temperature impact of each cache parameter");
  add_config(sweep_temp, o);
  add_trace(sweep_temp, o);
  sweep_temp->add_option("--phase", o.phase, "phase id to study (default: the phase covering the most intervals)");
  sweep_temp->add_option("--out", o.out, "output directory");

  auto* sweep_params = app.add_subcommand("sweep-params", "tuning budget versus achieved EDP");
  add_config(sweep_params, o);
  add_trace(sweep_params, o);
  sweep_params->add_option("--phase", o.phase, "phase id to study (default: the phase covering the most intervals)");
  sweep_params->add_option("--grid", o.grid, "points as s:g:a,s:g:a,...");
  sweep_params->add_option("--out", o.out, "output directory");
  sweep_params->add_option("--jobs", o.jobs, "worker threads for evaluations")->check(CLI::PositiveNumber);
  sweep_params->add_option("--seed", o.seed, "tuning seed");

  auto* compare = app.add_subcommand("compare", "ratios of executed objectives between two reports (a / b)");
  compare->add_option("report_a", o.report_a, "report.json of the run to normalize")->required();
  compare->add_option("report_b", o.report_b, "report.json of the reference run")->required();
  compare->add_option("--out", o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (compare->parsed()) {
    const auto a = read_text(o.report_a);
    const auto b = read_text(o.report_b);
    if (!a || !b) {
      std::fprintf(stderr, "thermotune: cannot read '%s'\n", (!a ? o.report_a : o.report_b).c_str());
      return kExitUsage;
    }
    tt_output* out = nullptr;
    const tt_status st = tt_compare(a->c_str(), b->c_str(), &out);
    const std::string dir = o.out.empty() ? "." : o.out;
    return finish(st, out, dir.c_str(), o.out.empty());
  }

  Session session;
  if (const int rc = open_session(o, session); rc != kExitOk) return rc;
  const std::string dir = tt_session_output_dir(session.get());
  tt_output* out = nullptr;

  if (enumerate->parsed()) {
    const tt_status st = tt_enumerate(session.get(), &out);
    return finish(st, out, o.out.c_str(), o.out.empty());
  }
  if (tune->parsed()) {
    if (!o.history.empty() && std::filesystem::exists(o.history)) {
      const auto text = read_text(o.history);
      if (!text) {
        std::fprintf(stderr, "thermotune: cannot read history '%s'\n", o.history.c_str());
        return kExitUsage;
      }
      if (const tt_status st = tt_session_import_history(session.get(), text->c_str()); st != TT_OK) {
        return report_error(st);
      }
    }
    const tt_status st = tt_tune(session.get(), &out);
    if (out && !o.history.empty()) {
      std::size_t len = 0;
      const char* data = tt_output_find(out, "history.json", &len);
      std::ofstream h(o.history, std::ios::binary | std::ios::trunc);
      if (!h || !h.write(data, static_cast<std::streamsize>(len))) {
        std::fprintf(stderr, "thermotune: cannot write history '%s'\n", o.history.c_str());
        tt_output_destroy(out);
        return kExitFailure;
      }
    }
    return finish(st, out, dir.c_str());
  }
  tt_status st = TT_ERR_INVALID_ARGUMENT;
  if (exhaustive->parsed()) {
    st = tt_exhaustive(session.get(), &out);
  } else if (baseline->parsed()) {
    st = tt_baseline(session.get(), o.baseline_kind.c_str(), &out);
  } else if (sweep_temp->parsed()) {
    st = tt_sweep_temp(session.get(), o.phase, &out);
  } else if (sweep_params->parsed()) {
    st = tt_sweep_params(session.get(), o.phase, o.grid.empty() ? nullptr : o.grid.c_str(), &out);
  }
  return finish(st, out, dir.c_str());
}
