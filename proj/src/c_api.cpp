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

#include "conceptkg/conceptkg.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "conceptkg/closure.hpp"
#include "conceptkg/clusters.hpp"
#include "conceptkg/dataset_io.hpp"
#include "conceptkg/evaluation.hpp"
#include "conceptkg/graph_io.hpp"
#include "conceptkg/ingest.hpp"
#include "conceptkg/oracle.hpp"
#include "conceptkg/report.hpp"
#include "conceptkg/scenarios.hpp"
#include "json_util.hpp"

struct ckg_graph {
  ckg::DeductiveClosure closure;
};
struct ckg_dataset {
  ckg::ClusterDataset dataset;
};
struct ckg_prompt {
  ckg::PromptTemplate prompt;
};
struct ckg_truth {
  ckg::TruthTable truth;
};
struct ckg_backend {
  std::unique_ptr<ckg::Backend> backend;
};
struct ckg_results {
  ckg::ResultSet results;
};
struct ckg_context {
  ckg::ContextBlock context;
};
struct ckg_scenario_set {
  std::vector<ckg::PolicyScenario> scenarios;
};
struct ckg_scenario_results {
  ckg::ScenarioEvaluation evaluation;
};

namespace {

using ckg::detail::json;

thread_local std::string g_last_error;

ckg_status status_of(ckg::ErrorCode code) {
  return static_cast<ckg_status>(static_cast<int>(code) + 1);
}

template <class F>
ckg_status guard(F &&f) {
  try {
    f();
    g_last_error.clear();
    return CKG_OK;
  } catch (const ckg::Error &e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return CKG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return CKG_ERR_INTERNAL;
  }
}

void need(const void *p, const char *what) {
  if (p == nullptr) throw ckg::Error(ckg::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

char *dup(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void put(char **out, const std::string &s) {
  if (out != nullptr) *out = dup(s);
}

json parse_config(const char *text, const char *what) {
  if (text == nullptr || *text == '\0') return json::object();
  json j = ckg::detail::parse_or_schema_error(text, std::string(what) + " $");
  if (!j.is_object()) ckg::detail::schema_error(std::string(what) + " $", "expected an object");
  return j;
}

template <class T>
T field(const json &j, const char *key, T fallback, const char *what) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception &) {
    ckg::detail::schema_error(std::string(what) + " $." + key, "wrong type");
  }
}

ckg::ExtractionSpec read_spec(const char *spec_json) {
  const json j = parse_config(spec_json, "extraction spec");
  ckg::ExtractionSpec s;
  s.seed_concept = field<std::string>(j, "seed_concept", "", "extraction spec");
  if (s.seed_concept.empty())
    ckg::detail::schema_error("extraction spec $.seed_concept", "missing required field");
  s.seed_property = field<std::string>(j, "seed_property", "", "extraction spec");
  s.max_depth = field<int>(j, "max_depth", s.max_depth, "extraction spec");
  s.direction = ckg::parse_direction(field<std::string>(j, "direction", "descendants", "extraction spec"));
  s.language = field<std::string>(j, "language", s.language, "extraction spec");
  return s;
}

json diagnostics_json(const std::vector<std::string> &d) { return json(d); }

ckg::GenerationConfig read_generation(const char *config_json) {
  const json j = parse_config(config_json, "generation config");
  const char *w = "generation config";
  ckg::GenerationConfig c;
  c.seed = field<std::uint64_t>(j, "seed", c.seed, w);
  c.negative_count = field<std::size_t>(j, "negative_count", c.negative_count, w);
  c.min_distance = field<std::size_t>(j, "min_distance", c.min_distance, w);
  c.min_path_len = field<std::size_t>(j, "min_path_len", c.min_path_len, w);
  c.article_mode = ckg::parse_article_mode(
      field<std::string>(j, "article_mode", std::string(ckg::article_mode_name(c.article_mode)), w));
  c.path_granularity = ckg::parse_path_granularity(field<std::string>(
      j, "path_granularity", std::string(ckg::path_granularity_name(c.path_granularity)), w));
  return c;
}

std::vector<ckg::ConceptId> read_specialists(const ckg::ConceptGraph &g, const char *specialists_json) {
  std::vector<ckg::ConceptId> out;
  if (specialists_json == nullptr) {
    for (const auto &c : g.concepts()) out.push_back(c.id);
    return out;
  }
  const json j = ckg::detail::parse_or_schema_error(specialists_json, "specialists $");
  for (const auto &s : ckg::detail::string_list(j, "specialists $")) {
    ckg::ConceptId id(s);
    g.index_of(id);
    out.push_back(std::move(id));
  }
  return out;
}

}  // namespace

extern "C" {

const char *ckg_version(void) { return "1.0.0"; }

const char *ckg_status_name(ckg_status status) {
  switch (status) {
    case CKG_OK: return "Ok";
    case CKG_ERR_INTERNAL: return "Internal";
    default: break;
  }
  const int i = static_cast<int>(status) - 1;
  if (i < 0 || i > static_cast<int>(ckg::ErrorCode::kAuthMissing)) return "Unknown";
  return ckg::error_code_name(static_cast<ckg::ErrorCode>(i)).data();
}

const char *ckg_last_error(void) { return g_last_error.c_str(); }

void ckg_string_free(char *s) { std::free(s); }

// ---- graphs ----

ckg_status ckg_graph_load(const char *path, ckg_graph **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new ckg_graph{ckg::DeductiveClosure(ckg::read_graph_file(path))};
  });
}

ckg_status ckg_graph_save(const ckg_graph *graph, const char *path) {
  return guard([&] {
    need(graph, "graph");
    need(path, "path");
    ckg::write_graph_file(graph->closure.graph(), path);
  });
}

ckg_status ckg_graph_extract_dump(const char *dump_path, const char *spec_json, ckg_graph **out,
                                  char **report_json) {
  return guard([&] {
    need(dump_path, "dump_path");
    need(out, "out");
    const ckg::ExtractionSpec spec = read_spec(spec_json);
    ckg::ParsedDump dump = ckg::parse_entity_dump_file(dump_path);
    ckg::Extraction ex = ckg::extract_fragment(spec, dump.entities);
    std::vector<std::string> diags;
    for (const auto &d : dump.diagnostics) diags.push_back("line " + std::to_string(d.line) + ": " + d.message);
    diags.insert(diags.end(), ex.diagnostics.begin(), ex.diagnostics.end());
    auto g = std::make_unique<ckg_graph>(ckg_graph{ckg::DeductiveClosure(std::move(ex.graph))});
    put(report_json, json{{"entities", dump.entities.size()}, {"diagnostics", diagnostics_json(diags)}}.dump());
    *out = g.release();
  });
}

ckg_status ckg_graph_extract_live(const char *spec_json, const char *live_json, ckg_graph **out,
                                  char **report_json) {
  return guard([&] {
    need(out, "out");
    const ckg::ExtractionSpec spec = read_spec(spec_json);
    const json j = parse_config(live_json, "live options");
    const char *w = "live options";
    ckg::LiveFetchOptions o;
    o.endpoint = field<std::string>(j, "endpoint", "", w);
    if (o.endpoint.empty()) ckg::detail::schema_error("live options $.endpoint", "missing required field");
    o.cache_dir = field<std::string>(j, "cache_dir", "", w);
    o.auth_env = field<std::string>(j, "auth_env", "", w);
    o.max_attempts = field<int>(j, "max_attempts", o.max_attempts, w);
    o.initial_backoff = std::chrono::milliseconds(field<long>(j, "initial_backoff_ms", o.initial_backoff.count(), w));
    o.max_backoff = std::chrono::milliseconds(field<long>(j, "max_backoff_ms", o.max_backoff.count(), w));
    o.min_interval = std::chrono::milliseconds(field<long>(j, "min_interval_ms", o.min_interval.count(), w));
    o.max_pages = field<std::size_t>(j, "max_pages", o.max_pages, w);
    ckg::LiveFetchResult fetched = ckg::fetch_live(spec, o);
    ckg::Extraction ex = ckg::extract_fragment(spec, fetched.entities);
    std::vector<std::string> diags;
    for (const auto &d : fetched.diagnostics) diags.push_back(d.message);
    diags.insert(diags.end(), ex.diagnostics.begin(), ex.diagnostics.end());
    auto g = std::make_unique<ckg_graph>(ckg_graph{ckg::DeductiveClosure(std::move(ex.graph))});
    put(report_json, json{{"entities", fetched.entities.size()},
                          {"diagnostics", diagnostics_json(diags)},
                          {"network_calls", fetched.network_calls},
                          {"cache_hits", fetched.cache_hits}}
                         .dump());
    *out = g.release();
  });
}

ckg_status ckg_graph_info(const ckg_graph *graph, char **info_json) {
  return guard([&] {
    need(graph, "graph");
    need(info_json, "info_json");
    const ckg::ConceptGraph &g = graph->closure.graph();
    *info_json = dup(json{{"fingerprint", g.fingerprint()},
                          {"concepts", g.size()},
                          {"edges", g.edges().size()},
                          {"properties", g.properties().size()},
                          {"same_as", g.same_as().size()}}
                         .dump());
  });
}

void ckg_graph_free(ckg_graph *graph) { delete graph; }

// ---- datasets ----

ckg_status ckg_dataset_generate(const ckg_graph *graph, const char *config_json, ckg_dataset **out,
                                char **warnings_json) {
  return guard([&] {
    need(graph, "graph");
    need(out, "out");
    ckg::GeneratedDataset gen = ckg::generate_dataset(graph->closure, read_generation(config_json));
    auto d = std::make_unique<ckg_dataset>(ckg_dataset{std::move(gen.dataset)});
    put(warnings_json, json(gen.warnings).dump());
    *out = d.release();
  });
}

ckg_status ckg_dataset_load(const char *path, ckg_dataset **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new ckg_dataset{ckg::read_dataset_file(path)};
  });
}

ckg_status ckg_dataset_save(const ckg_dataset *dataset, const char *path) {
  return guard([&] {
    need(dataset, "dataset");
    need(path, "path");
    ckg::write_dataset_file(dataset->dataset, path);
  });
}

ckg_status ckg_dataset_info(const ckg_dataset *dataset, char **info_json) {
  return guard([&] {
    need(dataset, "dataset");
    need(info_json, "info_json");
    const ckg::ClusterDataset &d = dataset->dataset;
    json by_type = json::object();
    for (auto t : ckg::kAllClusterTypes) by_type[std::string(ckg::cluster_type_name(t))] = d.count(t);
    *info_json = dup(json{{"fingerprint", ckg::dataset_fingerprint(d)},
                          {"graph_fingerprint", d.graph_fingerprint},
                          {"clusters", d.clusters.size()},
                          {"questions", d.question_count()},
                          {"by_type", std::move(by_type)}}
                         .dump());
  });
}

void ckg_dataset_free(ckg_dataset *dataset) { delete dataset; }

// ---- prompts ----

ckg_status ckg_prompt_default(ckg_prompt **out) {
  return guard([&] {
    need(out, "out");
    *out = new ckg_prompt{ckg::default_prompt()};
  });
}

ckg_status ckg_prompt_load(const char *path, ckg_prompt **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new ckg_prompt{ckg::read_prompt_file(path)};
  });
}

ckg_status ckg_prompt_save(const ckg_prompt *prompt, const char *path) {
  return guard([&] {
    need(prompt, "prompt");
    need(path, "path");
    ckg::detail::write_file_atomic(path, ckg::write_prompt(prompt->prompt));
  });
}

void ckg_prompt_free(ckg_prompt *prompt) { delete prompt; }

// ---- truth and backends ----

ckg_status ckg_truth_create(ckg_truth **out) {
  return guard([&] {
    need(out, "out");
    *out = new ckg_truth{};
  });
}

ckg_status ckg_truth_add_dataset(ckg_truth *truth, const ckg_graph *graph, const ckg_dataset *dataset) {
  return guard([&] {
    need(truth, "truth");
    need(graph, "graph");
    need(dataset, "dataset");
    if (dataset->dataset.graph_fingerprint != graph->closure.graph_fingerprint())
      throw ckg::Error(ckg::ErrorCode::kFingerprintMismatch,
                       "dataset graph " + dataset->dataset.graph_fingerprint + " differs from graph " +
                           graph->closure.graph_fingerprint());
    truth->truth.add_dataset(dataset->dataset);
  });
}

ckg_status ckg_truth_add_scenarios(ckg_truth *truth, const ckg_graph *graph,
                                   const ckg_scenario_set *scenarios, const char *specialists_json) {
  return guard([&] {
    need(truth, "truth");
    need(graph, "graph");
    need(scenarios, "scenarios");
    const auto specialists = read_specialists(graph->closure.graph(), specialists_json);
    for (const auto &s : scenarios->scenarios)
      for (const auto &q : ckg::gen_scenario_questions(graph->closure, s, specialists))
        truth->truth.add(q.question, q.expected);
  });
}

void ckg_truth_free(ckg_truth *truth) { delete truth; }

ckg_status ckg_backend_create(const char *config_json, const ckg_truth *truth, ckg_backend **out) {
  return guard([&] {
    need(config_json, "config_json");
    need(out, "out");
    const ckg::BackendConfig cfg = ckg::read_backend_config(config_json);
    if ((cfg.kind == ckg::BackendKind::kPerfect || cfg.kind == ckg::BackendKind::kNoisy) && truth == nullptr)
      throw ckg::Error(ckg::ErrorCode::kInvalidArgument, "oracle backends need a truth table");
    static const ckg::TruthTable kEmpty;
    *out = new ckg_backend{ckg::make_backend(cfg, truth ? truth->truth : kEmpty)};
  });
}

ckg_status ckg_backend_id(const ckg_backend *backend, char **out) {
  return guard([&] {
    need(backend, "backend");
    need(out, "out");
    *out = dup(backend->backend->id());
  });
}

size_t ckg_backend_network_calls(const ckg_backend *backend) {
  return backend ? backend->backend->network_calls() : 0;
}

void ckg_backend_free(ckg_backend *backend) { delete backend; }

// ---- evaluation ----

ckg_status ckg_evaluate(const ckg_dataset *dataset, ckg_backend *backend, const ckg_prompt *prompt,
                        const ckg_context *context, ckg_results **out) {
  return guard([&] {
    need(dataset, "dataset");
    need(backend, "backend");
    need(prompt, "prompt");
    need(out, "out");
    *out = new ckg_results{ckg::evaluate_dataset(dataset->dataset, *backend->backend, prompt->prompt,
                                                 context ? &context->context : nullptr)};
  });
}

ckg_status ckg_results_load(const char *path, ckg_results **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new ckg_results{ckg::read_results_file(path)};
  });
}

ckg_status ckg_results_save(const ckg_results *results, const char *path) {
  return guard([&] {
    need(results, "results");
    need(path, "path");
    ckg::write_results_file(results->results, path);
  });
}

ckg_status ckg_results_info(const ckg_results *results, char **info_json) {
  return guard([&] {
    need(results, "results");
    need(info_json, "info_json");
    const ckg::ResultSet &r = results->results;
    *info_json = dup(json{{"backend", r.backend_id},
                          {"errors", r.error_count()},
                          {"records", r.records.size()},
                          {"clusters", r.verdicts.size()},
                          {"prompt_fingerprint", r.prompt_fingerprint},
                          {"context_fingerprint", r.context_fingerprint},
                          {"dataset_fingerprint", r.dataset_fingerprint},
                          {"graph_fingerprint", r.graph_fingerprint}}
                         .dump());
  });
}

size_t ckg_results_error_count(const ckg_results *results) {
  return results ? results->results.error_count() : 0;
}

void ckg_results_free(ckg_results *results) { delete results; }

ckg_status ckg_context_build(const ckg_results *const *results, size_t count, const ckg_dataset *dataset,
                             const char *granularity, ckg_context **out) {
  return guard([&] {
    need(dataset, "dataset");
    need(out, "out");
    if (count > 0) need(results, "results");
    ckg::ContextGranularity g = ckg::ContextGranularity::kQuestion;
    if (granularity != nullptr && std::strcmp(granularity, "cluster") == 0) {
      g = ckg::ContextGranularity::kCluster;
    } else if (granularity != nullptr && std::strcmp(granularity, "question") != 0) {
      throw ckg::Error(ckg::ErrorCode::kInvalidArgument,
                       std::string("unknown context granularity '") + granularity + "'");
    }
    std::vector<ckg::ResultSet> sets;
    for (size_t i = 0; i < count; ++i) {
      need(results[i], "results[i]");
      sets.push_back(results[i]->results);
    }
    *out = new ckg_context{ckg::build_context(sets, dataset->dataset, g)};
  });
}

ckg_status ckg_context_load(const char *path, ckg_context **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new ckg_context{ckg::read_context(ckg::detail::read_file(path))};
  });
}

ckg_status ckg_context_save(const ckg_context *context, const char *path) {
  return guard([&] {
    need(context, "context");
    need(path, "path");
    ckg::detail::write_file_atomic(path, ckg::write_context(context->context));
  });
}

size_t ckg_context_size(const ckg_context *context) { return context ? context->context.entries.size() : 0; }

void ckg_context_free(ckg_context *context) { delete context; }

// ---- scenarios ----

ckg_status ckg_scenarios_load(const char *path, ckg_scenario_set **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new ckg_scenario_set{ckg::read_scenarios_file(path)};
  });
}

size_t ckg_scenarios_count(const ckg_scenario_set *scenarios) {
  return scenarios ? scenarios->scenarios.size() : 0;
}

void ckg_scenarios_free(ckg_scenario_set *scenarios) { delete scenarios; }

ckg_status ckg_scenarios_evaluate(const ckg_graph *graph, const ckg_scenario_set *scenarios,
                                  const char *specialists_json, ckg_backend *backend,
                                  const ckg_prompt *prompt, ckg_scenario_results **out) {
  return guard([&] {
    need(graph, "graph");
    need(scenarios, "scenarios");
    need(backend, "backend");
    need(prompt, "prompt");
    need(out, "out");
    const auto specialists = read_specialists(graph->closure.graph(), specialists_json);
    *out = new ckg_scenario_results{ckg::evaluate_scenarios(graph->closure, scenarios->scenarios, specialists,
                                                            *backend->backend, prompt->prompt)};
  });
}

ckg_status ckg_scenario_results_load(const char *path, ckg_scenario_results **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new ckg_scenario_results{ckg::read_scenario_results(ckg::detail::read_file(path))};
  });
}

ckg_status ckg_scenario_results_save(const ckg_scenario_results *results, const char *path) {
  return guard([&] {
    need(results, "results");
    need(path, "path");
    ckg::detail::write_file_atomic(path, ckg::write_scenario_results(results->evaluation));
  });
}

ckg_status ckg_scenario_results_info(const ckg_scenario_results *results, char **info_json) {
  return guard([&] {
    need(results, "results");
    need(info_json, "info_json");
    const auto &ev = results->evaluation;
    std::size_t errors = 0;
    for (const auto &r : ev.results)
      for (const auto &a : r.answers) errors += a.error ? 1 : 0;
    *info_json = dup(json{{"backend", ev.backend_id},
                          {"answers", ev.summary.answers},
                          {"incorrect", ev.summary.incorrect},
                          {"scenarios", ev.summary.scenarios},
                          {"inconsistent", ev.summary.inconsistent},
                          {"incomplete", ev.summary.incomplete},
                          {"errors", errors}}
                         .dump());
  });
}

void ckg_scenario_results_free(ckg_scenario_results *results) { delete results; }

// ---- reports ----

ckg_status ckg_report_render(const ckg_dataset *dataset, const ckg_results *const *baselines,
                             size_t n_baselines, const ckg_results *const *augmented, size_t n_augmented,
                             const ckg_scenario_results *const *scenarios, size_t n_scenarios,
                             const char *format, char **out) {
  return guard([&] {
    need(out, "out");
    const std::string fmt = format ? format : "markdown";
    if (fmt != "markdown" && fmt != "csv" && fmt != "json")
      throw ckg::Error(ckg::ErrorCode::kInvalidArgument, "unknown report format '" + fmt + "'");
    if ((n_baselines > 0 || n_augmented > 0) && dataset == nullptr)
      throw ckg::Error(ckg::ErrorCode::kInvalidArgument, "cluster reports need the dataset");
    std::vector<ckg::ClusterTableRow> rows;
    std::vector<ckg::ReportRow> base_rows;
    for (size_t i = 0; i < n_baselines; ++i) {
      need(baselines[i], "baselines[i]");
      base_rows.push_back(ckg::compute_report(baselines[i]->results, dataset->dataset));
      rows.push_back({base_rows.back(), std::nullopt});
    }
    for (size_t i = 0; i < n_augmented; ++i) {
      need(augmented[i], "augmented[i]");
      ckg::ReportRow row = ckg::compute_report(augmented[i]->results, dataset->dataset);
      std::optional<ckg::Percent> imp;
      for (const auto &b : base_rows)
        if (b.backend_id == row.backend_id) imp = ckg::improvement(b, row);
      row.backend_id += " + context";
      rows.push_back({std::move(row), imp});
    }
    std::vector<ckg::ScenarioSummary> sc;
    for (size_t i = 0; i < n_scenarios; ++i) {
      need(scenarios[i], "scenarios[i]");
      sc.push_back(scenarios[i]->evaluation.summary);
    }
    std::string text;
    if (fmt == "json") {
      text = ckg::render_report_json(rows, sc);
    } else if (fmt == "csv") {
      if (!rows.empty()) text += ckg::render_cluster_csv(rows);
      if (!sc.empty()) text += (text.empty() ? "" : "\n") + ckg::render_scenario_csv(sc);
    } else {
      if (!rows.empty()) text += ckg::render_cluster_markdown(rows);
      if (!sc.empty()) text += (text.empty() ? "" : "\n") + ckg::render_scenario_markdown(sc);
    }
    *out = dup(text);
  });
}

}  // extern "C"
