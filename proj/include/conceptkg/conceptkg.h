// Copyright 2026 The conceptkg Authors.
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

/* C interface to the concept graph consistency toolkit.
 *
 * Every function returns a ckg_status. On failure ckg_last_error() holds a
 * message for the calling thread. Strings returned through char** out
 * parameters are owned by the caller and released with ckg_string_free().
 * Configuration objects are passed as JSON text. */

#ifndef CONCEPTKG_CONCEPTKG_H_
#define CONCEPTKG_CONCEPTKG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CKG_BUILDING_LIBRARY)
#define CKG_API __attribute__((visibility("default")))
#else
#define CKG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ckg_status {
  CKG_OK = 0,
  CKG_ERR_INVALID_ARGUMENT = 1,
  CKG_ERR_IO = 2,
  CKG_ERR_CYCLE_DETECTED = 3,
  CKG_ERR_DANGLING_REFERENCE = 4,
  CKG_ERR_DUPLICATE_LABEL = 5,
  CKG_ERR_UNKNOWN_CONCEPT = 6,
  CKG_ERR_SEED_NOT_FOUND = 7,
  CKG_ERR_EMPTY_FRAGMENT = 8,
  CKG_ERR_UNREADABLE_SOURCE = 9,
  CKG_ERR_SCHEMA_VIOLATION = 10,
  CKG_ERR_UNKNOWN_TEMPLATE = 11,
  CKG_ERR_FINGERPRINT_MISMATCH = 12,
  CKG_ERR_MISMATCHED_DATASET = 13,
  CKG_ERR_DENOMINATOR_MISMATCH = 14,
  CKG_ERR_NETWORK = 15,
  CKG_ERR_MALFORMED_RESPONSE = 16,
  CKG_ERR_AUTH_MISSING = 17,
  CKG_ERR_INTERNAL = 99
} ckg_status;

typedef struct ckg_graph ckg_graph;
typedef struct ckg_dataset ckg_dataset;
typedef struct ckg_prompt ckg_prompt;
typedef struct ckg_truth ckg_truth;
typedef struct ckg_backend ckg_backend;
typedef struct ckg_results ckg_results;
typedef struct ckg_context ckg_context;
typedef struct ckg_scenario_set ckg_scenario_set;
typedef struct ckg_scenario_results ckg_scenario_results;

CKG_API const char *ckg_version(void);
CKG_API const char *ckg_status_name(ckg_status status);
/* Message of the last failed call on this thread; "" after success. */
CKG_API const char *ckg_last_error(void);
CKG_API void ckg_string_free(char *s);

/* ---- graphs ---- */

CKG_API ckg_status ckg_graph_load(const char *path, ckg_graph **out);
CKG_API ckg_status ckg_graph_save(const ckg_graph *graph, const char *path);
/* spec_json: {"seed_concept","seed_property","max_depth","direction","language"}.
 * report_json (optional) receives {"diagnostics":[...],"entities":n}. */
CKG_API ckg_status ckg_graph_extract_dump(const char *dump_path, const char *spec_json,
                                          ckg_graph **out, char **report_json);
/* live_json: {"endpoint","cache_dir","auth_env","max_attempts","initial_backoff_ms",
 * "max_backoff_ms","min_interval_ms","max_pages"}. report_json also carries
 * "network_calls" and "cache_hits". */
CKG_API ckg_status ckg_graph_extract_live(const char *spec_json, const char *live_json,
                                          ckg_graph **out, char **report_json);
/* {"fingerprint","concepts","edges","properties","same_as"} */
CKG_API ckg_status ckg_graph_info(const ckg_graph *graph, char **info_json);
CKG_API void ckg_graph_free(ckg_graph *graph);

/* ---- datasets ---- */

/* config_json: {"seed","negative_count","min_distance","min_path_len",
 * "article_mode","path_granularity"}; may be NULL for defaults.
 * warnings_json (optional) receives an array of strings. */
CKG_API ckg_status ckg_dataset_generate(const ckg_graph *graph, const char *config_json,
                                        ckg_dataset **out, char **warnings_json);
CKG_API ckg_status ckg_dataset_load(const char *path, ckg_dataset **out);
CKG_API ckg_status ckg_dataset_save(const ckg_dataset *dataset, const char *path);
/* {"fingerprint","graph_fingerprint","clusters","questions","by_type":{...}} */
CKG_API ckg_status ckg_dataset_info(const ckg_dataset *dataset, char **info_json);
CKG_API void ckg_dataset_free(ckg_dataset *dataset);

/* ---- prompts ---- */

CKG_API ckg_status ckg_prompt_default(ckg_prompt **out);
CKG_API ckg_status ckg_prompt_load(const char *path, ckg_prompt **out);
CKG_API ckg_status ckg_prompt_save(const ckg_prompt *prompt, const char *path);
CKG_API void ckg_prompt_free(ckg_prompt *prompt);

/* ---- ground truth and backends ---- */

CKG_API ckg_status ckg_truth_create(ckg_truth **out);
/* Fails with CKG_ERR_FINGERPRINT_MISMATCH if the dataset was built from
 * another graph. */
CKG_API ckg_status ckg_truth_add_dataset(ckg_truth *truth, const ckg_graph *graph,
                                         const ckg_dataset *dataset);
/* specialists_json: array of concept ids; NULL means every concept. */
CKG_API ckg_status ckg_truth_add_scenarios(ckg_truth *truth, const ckg_graph *graph,
                                           const ckg_scenario_set *scenarios,
                                           const char *specialists_json);
CKG_API void ckg_truth_free(ckg_truth *truth);

/* config_json: {"kind":"remote|perfect|noisy|scripted", ...}. truth may be
 * NULL for remote and scripted backends. */
CKG_API ckg_status ckg_backend_create(const char *config_json, const ckg_truth *truth,
                                      ckg_backend **out);
/* Copies the backend id into a new string. */
CKG_API ckg_status ckg_backend_id(const ckg_backend *backend, char **out);
CKG_API size_t ckg_backend_network_calls(const ckg_backend *backend);
CKG_API void ckg_backend_free(ckg_backend *backend);

/* ---- evaluation ---- */

/* context may be NULL. */
CKG_API ckg_status ckg_evaluate(const ckg_dataset *dataset, ckg_backend *backend,
                                const ckg_prompt *prompt, const ckg_context *context,
                                ckg_results **out);
CKG_API ckg_status ckg_results_load(const char *path, ckg_results **out);
CKG_API ckg_status ckg_results_save(const ckg_results *results, const char *path);
/* {"backend","errors","records","clusters","prompt_fingerprint",
 *  "context_fingerprint","dataset_fingerprint","graph_fingerprint"} */
CKG_API ckg_status ckg_results_info(const ckg_results *results, char **info_json);
CKG_API size_t ckg_results_error_count(const ckg_results *results);
CKG_API void ckg_results_free(ckg_results *results);

/* granularity: "question" (default when NULL) or "cluster". */
CKG_API ckg_status ckg_context_build(const ckg_results *const *results, size_t count,
                                     const ckg_dataset *dataset, const char *granularity,
                                     ckg_context **out);
CKG_API ckg_status ckg_context_load(const char *path, ckg_context **out);
CKG_API ckg_status ckg_context_save(const ckg_context *context, const char *path);
CKG_API size_t ckg_context_size(const ckg_context *context);
CKG_API void ckg_context_free(ckg_context *context);

/* ---- scenarios ---- */

CKG_API ckg_status ckg_scenarios_load(const char *path, ckg_scenario_set **out);
CKG_API size_t ckg_scenarios_count(const ckg_scenario_set *scenarios);
CKG_API void ckg_scenarios_free(ckg_scenario_set *scenarios);

CKG_API ckg_status ckg_scenarios_evaluate(const ckg_graph *graph,
                                          const ckg_scenario_set *scenarios,
                                          const char *specialists_json, ckg_backend *backend,
                                          const ckg_prompt *prompt, ckg_scenario_results **out);
CKG_API ckg_status ckg_scenario_results_load(const char *path, ckg_scenario_results **out);
CKG_API ckg_status ckg_scenario_results_save(const ckg_scenario_results *results,
                                             const char *path);
/* {"backend","answers","incorrect","scenarios","inconsistent","incomplete","errors"} */
CKG_API ckg_status ckg_scenario_results_info(const ckg_scenario_results *results,
                                             char **info_json);
CKG_API void ckg_scenario_results_free(ckg_scenario_results *results);

/* ---- reports ---- */

/* Renders one row per baseline, then one row per augmented run with its
 * improvement over the baseline of the same backend id. Scenario rows form
 * a second table. format: "markdown", "csv" or "json". Any list may be
 * empty; dataset may be NULL only when there are no cluster results. */
CKG_API ckg_status ckg_report_render(const ckg_dataset *dataset,
                                     const ckg_results *const *baselines, size_t n_baselines,
                                     const ckg_results *const *augmented, size_t n_augmented,
                                     const ckg_scenario_results *const *scenarios,
                                     size_t n_scenarios, const char *format, char **out);

#ifdef __cplusplus
}
#endif

#endif /* CONCEPTKG_CONCEPTKG_H_ */
