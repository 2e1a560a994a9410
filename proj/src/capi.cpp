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

#include "thermotune/thermotune.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thermotune/errors.hpp"
#include "thermotune/experiment.hpp"
#include "thermotune/io.hpp"
#include "thermotune/runtime.hpp"

using namespace thermotune;

struct tt_session {
  ExperimentConfig config;
  std::unique_ptr<DesignSpace> space;
  std::optional<Trace> trace;
  PhaseHistoryTable history;

  explicit tt_session(ExperimentConfig c)
      : config(std::move(c)),
        space(std::make_unique<DesignSpace>(config.space)),
        history(config.models.timing.issue_width) {}

  const Trace& loaded_trace() {
    if (!trace) trace = load_trace(config.trace);
    return *trace;
  }

  RunInputs inputs() {
    return RunInputs{loaded_trace(), *space, config.models, config.runtime, config.overheads};
  }
};

struct tt_output {
  std::vector<std::pair<std::string, std::string>> docs;
  std::string summary;
};

namespace {

thread_local std::string g_last_error;

tt_status fail(tt_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
tt_status guard(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    return fail(TT_ERR_CONFIG, e.what());
  } catch (const ParseError& e) {
    return fail(TT_ERR_PARSE, e.what());
  } catch (const DomainError& e) {
    return fail(TT_ERR_DOMAIN, e.what());
  } catch (const TuningError& e) {
    return fail(TT_ERR_TUNING, e.what());
  } catch (const IoError& e) {
    return fail(TT_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(TT_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TT_ERR_INTERNAL, e.what());
  }
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string run_summary(const RunReport& r) {
  std::string s = r.kind + ": " + std::to_string(r.phases.size()) + " phase(s), " + std::to_string(r.interval_count) +
                  " interval(s), " + std::to_string(r.totals.evaluations_performed) + " evaluation(s) over a " +
                  std::to_string(r.space_size) + "-config space\n";
  for (const auto& p : r.phases) {
    s += "  phase " + std::to_string(p.phase_id) + ": " + to_string(p.choice.chosen.config) + " evals=" +
         std::to_string(p.choice.evaluations) + (p.choice.characterized ? "" : " (history)") +
         (p.choice.feasible ? "" : " INFEASIBLE") + " peak=" + fmt("%.3f", p.executed.peak_temp_c) + "C\n";
  }
  const auto& t = r.totals;
  s += "  time=" + fmt("%.6g", t.exec_time_s) + "s energy=" + fmt("%.6g", t.energy_j) + "J edp=" + fmt("%.6g", t.edp) +
       " peak=" + fmt("%.3f", t.peak_temp_c) + "C overhead=" + fmt("%.6g", t.tuning_overhead_s) + "s reconfigs=" +
       std::to_string(t.reconfiguration_count) + "\n";
  if (!r.ok) s += "  aborted: " + r.error + "\n";
  return s;
}

tt_output* report_output(const RunReport& report, tt_session& s) {
  auto out = std::make_unique<tt_output>();
  out->docs.emplace_back("report.json", run_report_json(report, s.config));
  out->docs.emplace_back("phases.csv", phases_csv(report, *s.space));
  out->docs.emplace_back("occurrences.csv", occurrences_csv(report, *s.space));
  out->docs.emplace_back("thermal.csv", thermal_csv(report.thermal_samples));
  out->summary = run_summary(report);
  return out.release();
}

struct PhaseSegment {
  int phase_id = 0;
  std::span<const MemAccess> segment;
};

// First occurrence of `phase_id`; a negative id picks the phase covering the
// most intervals.
PhaseSegment phase_segment(tt_session& s, int phase_id) {
  const auto& trace = s.loaded_trace();
  const auto analysis = analyze(trace, *s.space, s.config.models, s.config.runtime);
  if (phase_id < 0) {
    std::size_t most = 0;
    for (const auto& p : analysis.phases) {
      if (p.member_intervals.size() > most) {
        most = p.member_intervals.size();
        phase_id = p.id;
      }
    }
  }
  for (const auto& occ : analysis.occurrences) {
    if (occ.phase_id == phase_id) {
      return {phase_id, std::span<const MemAccess>(trace).subspan(occ.begin, occ.end - occ.begin)};
    }
  }
  throw ConfigError("trace has no phase " + std::to_string(phase_id) + " (it has " +
                    std::to_string(analysis.phases.size()) + ")");
}

#define TT_CHECK(cond, what) \
  if (!(cond)) return fail(TT_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* tt_version(void) { return "1.0.0"; }

const char* tt_last_error(void) { return g_last_error.c_str(); }

const char* tt_status_name(tt_status status) {
  switch (status) {
    case TT_OK: return "ok";
    case TT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TT_ERR_CONFIG: return "configuration error";
    case TT_ERR_PARSE: return "parse error";
    case TT_ERR_DOMAIN: return "domain error";
    case TT_ERR_TUNING: return "tuning aborted";
    case TT_ERR_IO: return "i/o error";
    case TT_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

tt_status tt_session_create(const char* config_json, const char* base_dir, tt_session** out) {
  TT_CHECK(config_json && out, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tt_session(parse_config(config_json, base_dir ? base_dir : ""));
    return TT_OK;
  });
}

tt_status tt_session_load(const char* config_path, tt_session** out) {
  TT_CHECK(config_path && out, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tt_session(load_config(config_path));
    return TT_OK;
  });
}

tt_status tt_session_create_default(tt_session** out) {
  TT_CHECK(out, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tt_session(default_config());
    return TT_OK;
  });
}

void tt_session_destroy(tt_session* session) { delete session; }

tt_status tt_session_set_priority(tt_session* session, char priority) {
  TT_CHECK(session, "null session");
  TT_CHECK(std::strchr("SNTX", priority) && priority != '\0', "priority must be one of S, N, T, X");
  return guard([&] {
    session->config.tuning.priority = parse_priority(std::string(1, priority));
    return TT_OK;
  });
}

tt_status tt_session_set_threshold(tt_session* session, double temp_c) {
  TT_CHECK(session, "null session");
  TT_CHECK(std::isfinite(temp_c), "temperature threshold must be finite");
  session->config.tuning.temp_threshold_c = temp_c;
  return TT_OK;
}

tt_status tt_session_clear_threshold(tt_session* session) {
  TT_CHECK(session, "null session");
  session->config.tuning.temp_threshold_c.reset();
  return TT_OK;
}

tt_status tt_session_set_jobs(tt_session* session, unsigned jobs) {
  TT_CHECK(session, "null session");
  TT_CHECK(jobs >= 1, "job count must be at least 1");
  session->config.tuning.jobs = jobs;
  return TT_OK;
}

tt_status tt_session_set_seed(tt_session* session, unsigned long long seed) {
  TT_CHECK(session, "null session");
  session->config.tuning.seed = seed;
  return TT_OK;
}

tt_status tt_session_set_trace_file(tt_session* session, const char* path) {
  TT_CHECK(session && path, "null argument");
  session->config.trace.file = std::string(path);
  session->config.trace.synthetic.clear();
  session->trace.reset();
  return TT_OK;
}

tt_status tt_session_set_synthetic(tt_session* session, const char* script_json) {
  TT_CHECK(session && script_json, "null argument");
  return guard([&] {
    auto src = parse_synthetic_script(script_json);
    src.address_bits = session->config.trace.address_bits;
    session->config.trace = std::move(src);
    session->trace.reset();
    return TT_OK;
  });
}

tt_status tt_session_set_output_dir(tt_session* session, const char* dir) {
  TT_CHECK(session && dir, "null argument");
  session->config.output_dir = dir;
  return TT_OK;
}

const char* tt_session_output_dir(const tt_session* session) {
  return session ? session->config.output_dir.c_str() : "";
}

size_t tt_session_space_size(const tt_session* session) { return session ? session->space->size() : 0; }

tt_status tt_session_import_history(tt_session* session, const char* history_json) {
  TT_CHECK(session && history_json, "null argument");
  return guard([&] {
    session->history = history_from_json(history_json, *session->space, session->config.models.timing.issue_width);
    return TT_OK;
  });
}

size_t tt_session_history_size(const tt_session* session) { return session ? session->history.size() : 0; }

tt_status tt_enumerate(tt_session* session, tt_output** out) {
  TT_CHECK(session && out, "null argument");
  *out = nullptr;
  return guard([&] {
    auto o = std::make_unique<tt_output>();
    o->docs.emplace_back("space.csv", space_csv(*session->space));
    o->summary = o->docs.back().second;
    *out = o.release();
    return TT_OK;
  });
}

tt_status tt_tune(tt_session* session, tt_output** out) {
  TT_CHECK(session && out, "null argument");
  *out = nullptr;
  return guard([&] {
    const auto report = run(session->inputs(), session->config.tuning, session->history);
    *out = report_output(report, *session);
    (*out)->docs.emplace_back("history.json", history_to_json(session->history));
    return report.ok ? TT_OK : fail(TT_ERR_TUNING, report.error);
  });
}

tt_status tt_exhaustive(tt_session* session, tt_output** out) {
  TT_CHECK(session && out, "null argument");
  *out = nullptr;
  return guard([&] {
    std::map<int, ParetoFront> fronts;
    const auto& t = session->config.tuning;
    const auto report = run_exhaustive(session->inputs(), t.priority, t.temp_threshold_c, t.jobs, &fronts);
    auto o = std::unique_ptr<tt_output>(report_output(report, *session));
    o->docs.emplace_back("front.csv", fronts_csv(fronts));
    *out = o.release();
    return report.ok ? TT_OK : fail(TT_ERR_TUNING, report.error);
  });
}

tt_status tt_baseline(tt_session* session, const char* kind, tt_output** out) {
  TT_CHECK(session && kind && out, "null argument");
  *out = nullptr;
  return guard([&] {
    const auto k = parse_baseline_kind(kind);
    const auto& t = session->config.tuning;
    const auto report = run_baseline(session->inputs(), k, t.priority, t.temp_threshold_c, t.jobs);
    *out = report_output(report, *session);
    return report.ok ? TT_OK : fail(TT_ERR_TUNING, report.error);
  });
}

tt_status tt_sweep_temp(tt_session* session, int phase_id, tt_output** out) {
  TT_CHECK(session && out, "null argument");
  *out = nullptr;
  return guard([&] {
    const auto ps = phase_segment(*session, phase_id);
    const PhaseEvaluator evaluator(ps.segment, session->config.models, ambient_state(session->config.models.thermal));
    const auto table = temp_impact_sweep(evaluator.as_evaluator(), *session->space);
    auto o = std::make_unique<tt_output>();
    o->docs.emplace_back("temp_impact.csv", temp_impact_csv(table));
    o->docs.emplace_back("temp_ranking.csv", temp_ranking_csv(table));
    o->summary = "parameter impact on peak temperature (phase " + std::to_string(ps.phase_id) + ")\n" +
                 o->docs.back().second;
    *out = o.release();
    return TT_OK;
  });
}

tt_status tt_sweep_params(tt_session* session, int phase_id, const char* grid, tt_output** out) {
  TT_CHECK(session && out, "null argument");
  *out = nullptr;
  return guard([&] {
    const auto points = grid ? parse_sweep_grid(grid) : default_sweep_grid();
    const auto ps = phase_segment(*session, phase_id);
    const PhaseEvaluator evaluator(ps.segment, session->config.models, ambient_state(session->config.models.thermal));
    const auto rows = param_sweep(evaluator.as_evaluator(), *session->space, points, session->config.tuning,
                                  session->config.overheads);
    auto o = std::make_unique<tt_output>();
    o->docs.emplace_back("sweep.csv", sweep_csv(rows));
    o->summary = "tuning parameter sweep (phase " + std::to_string(ps.phase_id) + ")\n" + o->docs.back().second;
    *out = o.release();
    return TT_OK;
  });
}

tt_status tt_compare(const char* report_a_json, const char* report_b_json, tt_output** out) {
  TT_CHECK(report_a_json && report_b_json && out, "null argument");
  *out = nullptr;
  return guard([&] {
    const auto rows = compare_reports(report_a_json, report_b_json);
    auto o = std::make_unique<tt_output>();
    o->docs.emplace_back("compare.csv", compare_csv(rows));
    o->summary = o->docs.back().second;
    *out = o.release();
    return TT_OK;
  });
}

size_t tt_output_count(const tt_output* output) { return output ? output->docs.size() : 0; }

const char* tt_output_name(const tt_output* output, size_t index) {
  if (!output || index >= output->docs.size()) return nullptr;
  return output->docs[index].first.c_str();
}

const char* tt_output_data(const tt_output* output, size_t index, size_t* len) {
  if (!output || index >= output->docs.size()) return nullptr;
  if (len) *len = output->docs[index].second.size();
  return output->docs[index].second.c_str();
}

const char* tt_output_find(const tt_output* output, const char* name, size_t* len) {
  if (!output || !name) return nullptr;
  for (const auto& [n, data] : output->docs) {
    if (n == name) {
      if (len) *len = data.size();
      return data.c_str();
    }
  }
  return nullptr;
}

const char* tt_output_summary(const tt_output* output) { return output ? output->summary.c_str() : ""; }

tt_status tt_output_write(const tt_output* output, const char* dir) {
  TT_CHECK(output && dir, "null argument");
  return guard([&] {
    for (const auto& [name, data] : output->docs) write_file((std::filesystem::path(dir) / name).string(), data);
    return TT_OK;
  });
}

void tt_output_destroy(tt_output* output) { delete output; }

}  // extern "C"
