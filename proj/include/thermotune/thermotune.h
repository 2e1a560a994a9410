/* Copyright 2026 The thermotune Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to thermotune.
 *
 * A session holds a resolved experiment configuration, the trace it names
 * (loaded on first use) and a phase history table. Operations produce an
 * output object: a set of named documents (JSON or CSV text) plus a short
 * human-readable summary.
 *
 * Every function returning tt_status records a message retrievable with
 * tt_last_error() on failure. The message is per thread and stays valid
 * until the next failing call on that thread.
 */

#ifndef THERMOTUNE_THERMOTUNE_H_
#define THERMOTUNE_THERMOTUNE_H_

#include <stddef.h>

#if defined(_WIN32)
#define TT_API __declspec(dllexport)
#elif defined(__GNUC__)
#define TT_API __attribute__((visibility("default")))
#else
#define TT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tt_status {
  TT_OK = 0,
  TT_ERR_INVALID_ARGUMENT = 1, /* null handle, bad flag value */
  TT_ERR_CONFIG = 2,           /* unreadable or invalid configuration/input */
  TT_ERR_PARSE = 3,            /* malformed trace */
  TT_ERR_DOMAIN = 4,           /* model evaluated outside its domain */
  TT_ERR_TUNING = 5,           /* tuning aborted; a partial output may exist */
  TT_ERR_IO = 6,               /* output could not be written */
  TT_ERR_INTERNAL = 7
} tt_status;

typedef struct tt_session tt_session;
typedef struct tt_output tt_output;

TT_API const char* tt_version(void);
TT_API const char* tt_last_error(void);
TT_API const char* tt_status_name(tt_status status);

/* `base_dir` resolves relative trace paths; may be NULL. */
TT_API tt_status tt_session_create(const char* config_json, const char* base_dir, tt_session** out);
TT_API tt_status tt_session_load(const char* config_path, tt_session** out);
/* Session with the built-in defaults (paper-full space, synthetic trace). */
TT_API tt_status tt_session_create_default(tt_session** out);
TT_API void tt_session_destroy(tt_session* session);

/* Overrides. `priority` is one of 'S', 'N', 'T', 'X'. */
TT_API tt_status tt_session_set_priority(tt_session* session, char priority);
TT_API tt_status tt_session_set_threshold(tt_session* session, double temp_c);
TT_API tt_status tt_session_clear_threshold(tt_session* session);
TT_API tt_status tt_session_set_jobs(tt_session* session, unsigned jobs);
TT_API tt_status tt_session_set_seed(tt_session* session, unsigned long long seed);
TT_API tt_status tt_session_set_trace_file(tt_session* session, const char* path);
TT_API tt_status tt_session_set_synthetic(tt_session* session, const char* script_json);
TT_API tt_status tt_session_set_output_dir(tt_session* session, const char* dir);
TT_API const char* tt_session_output_dir(const tt_session* session);
TT_API size_t tt_session_space_size(const tt_session* session);

/* Replaces the session's history with a document from a previous run. */
TT_API tt_status tt_session_import_history(tt_session* session, const char* history_json);
TT_API size_t tt_session_history_size(const tt_session* session);

/* Operations. On success *out receives a new output object owned by the
 * caller. tt_tune also returns an output with TT_ERR_TUNING (partial
 * report); every other failure leaves *out NULL.
 *
 * Documents produced:
 *   enumerate      space.csv
 *   tune           report.json phases.csv occurrences.csv thermal.csv history.json
 *   exhaustive     report.json phases.csv occurrences.csv thermal.csv front.csv
 *   baseline       report.json phases.csv occurrences.csv thermal.csv
 *   sweep_temp     temp_impact.csv temp_ranking.csv
 *   sweep_params   sweep.csv
 *   compare        compare.csv
 */
TT_API tt_status tt_enumerate(tt_session* session, tt_output** out);
TT_API tt_status tt_tune(tt_session* session, tt_output** out);
TT_API tt_status tt_exhaustive(tt_session* session, tt_output** out);
/* `kind` is "dfs-only", "cache-only" or "base". */
TT_API tt_status tt_baseline(tt_session* session, const char* kind, tt_output** out);
/* Studies on one phase's first occurrence (phase ids come from `tune`); a
 * negative id selects the phase covering the most intervals. */
TT_API tt_status tt_sweep_temp(tt_session* session, int phase_id, tt_output** out);
/* `grid` is "s:g:a,s:g:a,..." or NULL for the default grid. */
TT_API tt_status tt_sweep_params(tt_session* session, int phase_id, const char* grid, tt_output** out);
/* Ratios of executed objectives, report_a / report_b. */
TT_API tt_status tt_compare(const char* report_a_json, const char* report_b_json, tt_output** out);

TT_API size_t tt_output_count(const tt_output* output);
TT_API const char* tt_output_name(const tt_output* output, size_t index);
/* NUL-terminated; `len` (optional) receives the byte count. */
TT_API const char* tt_output_data(const tt_output* output, size_t index, size_t* len);
TT_API const char* tt_output_find(const tt_output* output, const char* name, size_t* len);
TT_API const char* tt_output_summary(const tt_output* output);
/* Writes every document into `dir`, creating it if needed. */
TT_API tt_status tt_output_write(const tt_output* output, const char* dir);
TT_API void tt_output_destroy(tt_output* output);

#ifdef __cplusplus
}
#endif

#endif /* THERMOTUNE_THERMOTUNE_H_ */
