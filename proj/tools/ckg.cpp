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

// ckg: extract -> generate -> evaluate -> augment -> report.
//
// Every flag has a run-config equivalent (see README). Flags win over the
// config. Relative paths in a config file resolve against its directory.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conceptkg/conceptkg.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBackendErrors = 1;
constexpr int kExitInput = 2;

struct Failure {
  std::string message;
};

void check(ckg_status s, const std::string &what) {
  if (s != CKG_OK)
    throw Failure{what + ": " + ckg_status_name(s) + ": " + ckg_last_error()};
}

template <class T, void (*Free)(T *)>
struct Deleter {
  void operator()(T *p) const { Free(p); }
};
using Graph = std::unique_ptr<ckg_graph, Deleter<ckg_graph, ckg_graph_free>>;
using Dataset = std::unique_ptr<ckg_dataset, Deleter<ckg_dataset, ckg_dataset_free>>;
using Prompt = std::unique_ptr<ckg_prompt, Deleter<ckg_prompt, ckg_prompt_free>>;
using Truth = std::unique_ptr<ckg_truth, Deleter<ckg_truth, ckg_truth_free>>;
using Backend = std::unique_ptr<ckg_backend, Deleter<ckg_backend, ckg_backend_free>>;
using Results = std::unique_ptr<ckg_results, Deleter<ckg_results, ckg_results_free>>;
using Context = std::unique_ptr<ckg_context, Deleter<ckg_context, ckg_context_free>>;
using Scenarios = std::unique_ptr<ckg_scenario_set, Deleter<ckg_scenario_set, ckg_scenarios_free>>;
using ScenarioResults =
    std::unique_ptr<ckg_scenario_results, Deleter<ckg_scenario_results, ckg_scenario_results_free>>;

std::string take(char *s) {
  std::string out = s ? s : "";
  ckg_string_free(s);
  return out;
}

std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{"cannot write '" + path.string() + "'"};
}

void log(const std::string &msg) { std::cerr << "ckg: " << msg << "\n"; }

// ---- run configuration ----

struct RunConfig {
  fs::path base = ".";
  json doc = json::object();

  std::string path(const json &v) const {
    fs::path p(v.get<std::string>());
    return (p.is_relative() ? base / p : p).lexically_normal().string();
  }
  const json *at(std::initializer_list<const char *> keys) const {
    const json *cur = &doc;
    for (const char *k : keys) {
      if (!cur->is_object()) return nullptr;
      auto it = cur->find(k);
      if (it == cur->end() || it->is_null()) return nullptr;
      cur = &*it;
    }
    return cur;
  }
  std::string path_or(std::initializer_list<const char *> keys, const std::string &flag) const {
    if (!flag.empty()) return flag;
    const json *v = at(keys);
    return v ? path(*v) : std::string();
  }
  fs::path output_dir(const std::string &flag) const {
    std::string d = path_or({"output_dir"}, flag);
    return d.empty() ? fs::path("out") : fs::path(d);
  }
};

RunConfig load_config(const std::string &path) {
  RunConfig rc;
  if (path.empty()) return rc;
  rc.base = fs::path(path).parent_path();
  if (rc.base.empty()) rc.base = ".";
  try {
    rc.doc = json::parse(read_text(path));
  } catch (const json::parse_error &e) {
    throw Failure{"config '" + path + "' is not valid JSON: " + e.what()};
  }
  if (!rc.doc.is_object()) throw Failure{"config '" + path + "' must be a JSON object"};
  return rc;
}

// Backend configs may be inline JSON, a path to a JSON file, or the bare
// words "perfect".
json backend_json(const std::string &spec, const fs::path &base) {
  if (spec == "perfect") return json{{"kind", "perfect"}};
  json j;
  fs::path file_base = base;
  if (!spec.empty() && spec.front() == '{') {
    j = json::parse(spec);
  } else {
    j = json::parse(read_text(spec));
    file_base = fs::path(spec).parent_path();
  }
  for (const char *key : {"answers", "cache_dir"}) {
    if (j.contains(key) && j[key].is_string()) {
      fs::path p(j[key].get<std::string>());
      if (p.is_relative()) j[key] = (file_base / p).lexically_normal().string();
    }
  }
  return j;
}

std::vector<json> backend_list(const RunConfig &rc, const std::vector<std::string> &flags) {
  std::vector<json> out;
  for (const auto &f : flags) out.push_back(backend_json(f, "."));
  if (out.empty()) {
    if (const json *list = rc.at({"backends"}); list && list->is_array()) {
      for (const auto &b : *list) out.push_back(b.is_string() ? backend_json(rc.path(b), rc.base)
                                                             : backend_json(b.dump(), rc.base));
    }
  }
  if (out.empty()) throw Failure{"at least one backend is required (--backend or \"backends\")"};
  return out;
}

bool needs_truth(const json &b) {
  const std::string kind = b.value("kind", "");
  return kind == "perfect" || kind == "noisy";
}

std::string safe_name(std::string s) {
  for (char &c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')) c = '_';
  return s;
}

Graph load_graph(const std::string &path) {
  if (path.empty()) throw Failure{"a graph file is required (--graph or \"graph.file\")"};
  ckg_graph *g = nullptr;
  check(ckg_graph_load(path.c_str(), &g), "loading graph '" + path + "'");
  return Graph(g);
}

Dataset load_dataset(const std::string &path) {
  if (path.empty()) throw Failure{"a dataset file is required (--dataset or \"dataset\")"};
  ckg_dataset *d = nullptr;
  check(ckg_dataset_load(path.c_str(), &d), "loading dataset '" + path + "'");
  return Dataset(d);
}

Prompt load_prompt(const std::string &path) {
  ckg_prompt *p = nullptr;
  if (path.empty()) check(ckg_prompt_default(&p), "default prompt");
  else check(ckg_prompt_load(path.c_str(), &p), "loading prompt '" + path + "'");
  return Prompt(p);
}

Backend make_backend(const json &cfg, const ckg_truth *truth) {
  ckg_backend *b = nullptr;
  check(ckg_backend_create(cfg.dump().c_str(), truth, &b), "creating backend");
  return Backend(b);
}

std::string backend_id(const ckg_backend *b) {
  char *s = nullptr;
  check(ckg_backend_id(b, &s), "backend id");
  return take(s);
}

json info_of(ckg_status (*fn)(const ckg_dataset *, char **), const ckg_dataset *d) {
  char *s = nullptr;
  check(fn(d, &s), "dataset info");
  return json::parse(take(s));
}

json results_info(const ckg_results *r) {
  char *s = nullptr;
  check(ckg_results_info(r, &s), "results info");
  return json::parse(take(s));
}

void write_reports(const fs::path &dir, const std::string &stem, const ckg_dataset *dataset,
                   const std::vector<const ckg_results *> &base, const std::vector<const ckg_results *> &aug,
                   const std::vector<const ckg_scenario_results *> &sc) {
  for (const char *fmt : {"markdown", "csv", "json"}) {
    char *s = nullptr;
    check(ckg_report_render(dataset, base.data(), base.size(), aug.data(), aug.size(), sc.data(), sc.size(), fmt,
                            &s),
          "rendering report");
    const std::string ext = std::string(fmt) == "markdown" ? ".md" : std::string(".") + fmt;
    write_text(dir / (stem + ext), take(s));
  }
  log("wrote " + (dir / (stem + ".md")).string() + " (+ .csv, .json)");
}

// ---- commands ----

struct ExtractOpts {
  std::string config, graph, dump, live, cache_dir, auth_env, seed, property, direction, language, out;
  int depth = -1;
};

int cmd_extract(const ExtractOpts &o) {
  const RunConfig rc = load_config(o.config);
  const fs::path out_path = o.out.empty() ? rc.output_dir("") / "graph.json" : fs::path(o.out);
  json manifest;
  Graph g;

  const std::string native = rc.path_or({"graph", "file"}, o.graph);
  const std::string dump = rc.path_or({"graph", "dump"}, o.dump);
  std::string live = o.live;
  if (live.empty())
    if (const json *v = rc.at({"graph", "live", "endpoint"})) live = v->get<std::string>();

  if (!native.empty() && dump.empty() && live.empty()) {
    g = load_graph(native);
    manifest["source"] = {{"kind", "native"}, {"path", native}};
  } else {
    json spec = json::object();
    if (const json *s = rc.at({"graph", "spec"})) spec = *s;
    if (!o.seed.empty()) spec["seed_concept"] = o.seed;
    if (!o.property.empty()) spec["seed_property"] = o.property;
    if (o.depth >= 0) spec["max_depth"] = o.depth;
    if (!o.direction.empty()) spec["direction"] = o.direction;
    if (!o.language.empty()) spec["language"] = o.language;
    if (!spec.contains("seed_concept")) throw Failure{"extraction needs a seed concept (--seed)"};
    ckg_graph *raw = nullptr;
    char *report = nullptr;
    if (!dump.empty()) {
      check(ckg_graph_extract_dump(dump.c_str(), spec.dump().c_str(), &raw, &report), "extracting from dump");
      manifest["source"] = {{"kind", "dump"}, {"path", dump}};
    } else if (!live.empty()) {
      json lj = json::object();
      if (const json *l = rc.at({"graph", "live"})) lj = *l;
      lj["endpoint"] = live;
      if (!o.cache_dir.empty()) lj["cache_dir"] = o.cache_dir;
      else if (lj.contains("cache_dir")) lj["cache_dir"] = rc.path(lj["cache_dir"]);
      if (!o.auth_env.empty()) lj["auth_env"] = o.auth_env;
      check(ckg_graph_extract_live(spec.dump().c_str(), lj.dump().c_str(), &raw, &report), "live extraction");
      manifest["source"] = {{"kind", "live"}, {"endpoint", live}};
    } else {
      throw Failure{"no graph source: give --graph, --dump or --live"};
    }
    g.reset(raw);
    json rep = json::parse(take(report));
    manifest["extraction"] = spec;
    manifest["report"] = rep;
    for (const auto &d : rep["diagnostics"]) log("note: " + d.get<std::string>());
  }
  check(ckg_graph_save(g.get(), out_path.string().c_str()), "writing graph");
  char *info = nullptr;
  check(ckg_graph_info(g.get(), &info), "graph info");
  manifest["graph"] = json::parse(take(info));
  manifest["graph"]["path"] = out_path.string();
  manifest["tool_version"] = ckg_version();
  fs::path mpath = out_path;
  mpath.replace_extension(".manifest.json");
  write_text(mpath, manifest.dump(2) + "\n");
  log("graph " + manifest["graph"]["fingerprint"].get<std::string>() + ": " +
      std::to_string(manifest["graph"]["concepts"].get<int>()) + " concepts, " +
      std::to_string(manifest["graph"]["edges"].get<int>()) + " edges, " +
      std::to_string(manifest["graph"]["properties"].get<int>()) + " property assertions -> " + out_path.string());
  return kExitOk;
}

struct GenerateOpts {
  std::string config, graph, out, article_mode, path_granularity;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> negatives, min_distance, min_path_len;
};

int cmd_generate(const GenerateOpts &o) {
  const RunConfig rc = load_config(o.config);
  std::string graph_path = rc.path_or({"graph", "file"}, o.graph);
  if (graph_path.empty() && !o.config.empty()) graph_path = (rc.output_dir("") / "graph.json").string();
  Graph g = load_graph(graph_path);
  json gen = json::object();
  if (const json *c = rc.at({"generation"})) gen = *c;
  if (o.seed) gen["seed"] = *o.seed;
  if (o.negatives) gen["negative_count"] = *o.negatives;
  if (o.min_distance) gen["min_distance"] = *o.min_distance;
  if (o.min_path_len) gen["min_path_len"] = *o.min_path_len;
  if (!o.article_mode.empty()) gen["article_mode"] = o.article_mode;
  if (!o.path_granularity.empty()) gen["path_granularity"] = o.path_granularity;
  if (gen.value("negative_count", 66) > 0 && !gen.contains("seed"))
    throw Failure{"a seed is required when negative_count > 0 (--seed or \"generation.seed\")"};

  ckg_dataset *raw = nullptr;
  char *warnings = nullptr;
  check(ckg_dataset_generate(g.get(), gen.dump().c_str(), &raw, &warnings), "generating dataset");
  Dataset d(raw);
  for (const auto &w : json::parse(take(warnings))) log("warning: " + w.get<std::string>());
  const fs::path out = o.out.empty() ? rc.output_dir("") / "dataset.json" : fs::path(o.out);
  check(ckg_dataset_save(d.get(), out.string().c_str()), "writing dataset");
  const json info = info_of(ckg_dataset_info, d.get());
  std::string counts;
  for (const char *k : {"positive_edge", "inverse_edge", "negative_edge", "path", "property_inheritance"})
    counts += std::string(" ") + k + "=" + std::to_string(info["by_type"].value(k, 0));
  log("dataset " + info["fingerprint"].get<std::string>() + ": " + std::to_string(info["clusters"].get<int>()) +
      " clusters," + counts + "; " + std::to_string(info["questions"].get<int>()) + " questions -> " + out.string());
  return kExitOk;
}

struct EvalOpts {
  std::string config, graph, dataset, prompt, context, out_dir;
  std::vector<std::string> backends;
};

std::string dataset_path(const RunConfig &rc, const std::string &flag) {
  std::string p = rc.path_or({"dataset"}, flag);
  if (p.empty() && !rc.doc.empty()) p = (rc.output_dir("") / "dataset.json").string();
  return p;
}

std::string graph_path(const RunConfig &rc, const std::string &flag) {
  std::string p = rc.path_or({"graph", "file"}, flag);
  if (p.empty() && !rc.doc.empty()) p = (rc.output_dir("") / "graph.json").string();
  return p;
}

Truth truth_for(const std::vector<json> &backends, const RunConfig &rc, const std::string &graph_flag,
                const ckg_dataset *dataset, Graph &graph_out) {
  bool need = false;
  for (const auto &b : backends) need = need || needs_truth(b);
  if (!need) return Truth();
  graph_out = load_graph(graph_path(rc, graph_flag));
  ckg_truth *t = nullptr;
  check(ckg_truth_create(&t), "truth table");
  Truth truth(t);
  if (dataset) check(ckg_truth_add_dataset(truth.get(), graph_out.get(), dataset), "binding oracle to dataset");
  return truth;
}

int cmd_evaluate(const EvalOpts &o) {
  const RunConfig rc = load_config(o.config);
  Dataset d = load_dataset(dataset_path(rc, o.dataset));
  const auto backends = backend_list(rc, o.backends);
  Prompt prompt = load_prompt(rc.path_or({"prompt"}, o.prompt));
  Context ctx;
  if (!o.context.empty()) {
    ckg_context *c = nullptr;
    check(ckg_context_load(o.context.c_str(), &c), "loading context");
    ctx.reset(c);
  }
  Graph g;
  Truth truth = truth_for(backends, rc, o.graph, d.get(), g);
  const fs::path dir = rc.output_dir(o.out_dir);

  std::vector<Results> all;
  std::size_t errors = 0;
  for (const auto &bj : backends) {
    Backend b = make_backend(bj, truth.get());
    const std::string id = backend_id(b.get());
    ckg_results *r = nullptr;
    check(ckg_evaluate(d.get(), b.get(), prompt.get(), ctx.get(), &r), "evaluating " + id);
    Results res(r);
    const std::string suffix = ctx ? ".augmented" : "";
    const fs::path file = dir / ("results-" + safe_name(id) + suffix + ".jsonl");
    check(ckg_results_save(res.get(), file.string().c_str()), "writing results");
    const std::size_t e = ckg_results_error_count(res.get());
    errors += e;
    log(id + ": " + std::to_string(results_info(res.get())["records"].get<int>()) + " answers, " +
        std::to_string(e) + " backend errors, " + std::to_string(ckg_backend_network_calls(b.get())) +
        " network calls -> " + file.string());
    all.push_back(std::move(res));
  }
  std::vector<const ckg_results *> rows;
  for (const auto &r : all) rows.push_back(r.get());
  if (ctx) write_reports(dir, "report.augmented", d.get(), {}, rows, {});
  else write_reports(dir, "report", d.get(), rows, {}, {});
  return errors > 0 ? kExitBackendErrors : kExitOk;
}

struct AugmentOpts {
  std::string config, graph, dataset, prompt, granularity, out_dir;
  std::vector<std::string> baselines, backends;
};

int cmd_augment(const AugmentOpts &o) {
  const RunConfig rc = load_config(o.config);
  Dataset d = load_dataset(dataset_path(rc, o.dataset));
  const fs::path dir = rc.output_dir(o.out_dir);

  std::vector<std::string> baseline_paths = o.baselines;
  if (baseline_paths.empty()) {
    if (const json *b = rc.at({"baselines"}); b && b->is_array())
      for (const auto &p : *b) baseline_paths.push_back(rc.path(p));
  }
  if (baseline_paths.empty() && fs::is_directory(dir)) {
    for (const auto &e : fs::directory_iterator(dir)) {
      const std::string name = e.path().filename().string();
      if (name.rfind("results-", 0) == 0 && name.size() > 6 && name.substr(name.size() - 6) == ".jsonl" &&
          name.find(".augmented.") == std::string::npos)
        baseline_paths.push_back(e.path().string());
    }
    std::sort(baseline_paths.begin(), baseline_paths.end());
  }
  if (baseline_paths.empty()) throw Failure{"no baseline results given (--baseline)"};

  std::vector<Results> base;
  for (const auto &p : baseline_paths) {
    ckg_results *r = nullptr;
    check(ckg_results_load(p.c_str(), &r), "loading baseline '" + p + "'");
    base.emplace_back(r);
  }
  std::vector<const ckg_results *> base_ptrs;
  for (const auto &r : base) base_ptrs.push_back(r.get());

  std::string gran = o.granularity;
  if (gran.empty())
    if (const json *v = rc.at({"context_granularity"})) gran = v->get<std::string>();
  ckg_context *c = nullptr;
  check(ckg_context_build(base_ptrs.data(), base_ptrs.size(), d.get(), gran.empty() ? nullptr : gran.c_str(), &c),
        "building context");
  Context ctx(c);
  const fs::path ctx_file = dir / "context.json";
  check(ckg_context_save(ctx.get(), ctx_file.string().c_str()), "writing context");
  const std::size_t n = ckg_context_size(ctx.get());
  log("context: " + std::to_string(n) + " statements missed by all " + std::to_string(base.size()) +
      " baselines -> " + ctx_file.string());
  if (n == 0) {
    log("notice: context is empty; nothing to augment, augmented run skipped");
    write_reports(dir, "report", d.get(), base_ptrs, {}, {});
    return kExitOk;
  }

  std::vector<json> backends;
  if (!o.backends.empty() || rc.at({"backends"})) {
    backends = backend_list(rc, o.backends);
  } else {
    throw Failure{"augmented runs need backends (--backend or \"backends\")"};
  }
  Prompt prompt = load_prompt(rc.path_or({"prompt"}, o.prompt));
  Graph g;
  Truth truth = truth_for(backends, rc, o.graph, d.get(), g);

  std::vector<Results> aug;
  std::size_t errors = 0;
  for (const auto &bj : backends) {
    Backend b = make_backend(bj, truth.get());
    const std::string id = backend_id(b.get());
    ckg_results *r = nullptr;
    check(ckg_evaluate(d.get(), b.get(), prompt.get(), ctx.get(), &r), "evaluating " + id + " with context");
    Results res(r);
    const fs::path file = dir / ("results-" + safe_name(id) + ".augmented.jsonl");
    check(ckg_results_save(res.get(), file.string().c_str()), "writing results");
    errors += ckg_results_error_count(res.get());
    log(id + " with context -> " + file.string());
    aug.push_back(std::move(res));
  }
  std::vector<const ckg_results *> aug_ptrs;
  for (const auto &r : aug) aug_ptrs.push_back(r.get());
  write_reports(dir, "comparison", d.get(), base_ptrs, aug_ptrs, {});
  return errors > 0 ? kExitBackendErrors : kExitOk;
}

struct ScenarioOpts {
  std::string config, graph, scenarios, prompt, out_dir;
  std::vector<std::string> specialists, backends;
};

int cmd_scenarios(const ScenarioOpts &o) {
  const RunConfig rc = load_config(o.config);
  const std::string sc_path = rc.path_or({"scenarios"}, o.scenarios);
  if (sc_path.empty()) throw Failure{"a scenario file is required (--scenarios or \"scenarios\")"};
  ckg_scenario_set *s = nullptr;
  check(ckg_scenarios_load(sc_path.c_str(), &s), "loading scenarios '" + sc_path + "'");
  Scenarios set(s);
  Graph g = load_graph(graph_path(rc, o.graph));
  json specialists = json::array();
  for (const auto &sp : o.specialists) specialists.push_back(sp);
  if (specialists.empty())
    if (const json *v = rc.at({"specialists"})) specialists = *v;
  const std::string sp_text = specialists.empty() ? std::string() : specialists.dump();
  const char *sp = sp_text.empty() ? nullptr : sp_text.c_str();

  const auto backends = backend_list(rc, o.backends);
  Truth truth;
  bool need = false;
  for (const auto &b : backends) need = need || needs_truth(b);
  if (need) {
    ckg_truth *t = nullptr;
    check(ckg_truth_create(&t), "truth table");
    truth.reset(t);
    check(ckg_truth_add_scenarios(truth.get(), g.get(), set.get(), sp), "scenario truth");
  }
  Prompt prompt = load_prompt(rc.path_or({"prompt"}, o.prompt));
  const fs::path dir = rc.output_dir(o.out_dir);
  std::vector<ScenarioResults> all;
  std::size_t errors = 0;
  for (const auto &bj : backends) {
    Backend b = make_backend(bj, truth.get());
    const std::string id = backend_id(b.get());
    ckg_scenario_results *r = nullptr;
    check(ckg_scenarios_evaluate(g.get(), set.get(), sp, b.get(), prompt.get(), &r), "scenarios for " + id);
    ScenarioResults res(r);
    const fs::path file = dir / ("scenario-results-" + safe_name(id) + ".jsonl");
    check(ckg_scenario_results_save(res.get(), file.string().c_str()), "writing scenario results");
    char *info = nullptr;
    check(ckg_scenario_results_info(res.get(), &info), "scenario info");
    const json ij = json::parse(take(info));
    errors += ij["errors"].get<std::size_t>();
    log(id + ": " + std::to_string(ij["incorrect"].get<int>()) + "/" + std::to_string(ij["answers"].get<int>()) +
        " incorrect answers, " + std::to_string(ij["inconsistent"].get<int>()) + "/" +
        std::to_string(ij["scenarios"].get<int>()) + " inconsistent scenarios -> " + file.string());
    all.push_back(std::move(res));
  }
  std::vector<const ckg_scenario_results *> ptrs;
  for (const auto &r : all) ptrs.push_back(r.get());
  write_reports(dir, "scenario-report", nullptr, {}, {}, ptrs);
  return errors > 0 ? kExitBackendErrors : kExitOk;
}

struct ReportOpts {
  std::string config, dataset, format, out;
  std::vector<std::string> baselines, augmented, scenario_results;
};

int cmd_report(const ReportOpts &o) {
  const RunConfig rc = load_config(o.config);
  Dataset d;
  if (!o.baselines.empty() || !o.augmented.empty()) d = load_dataset(dataset_path(rc, o.dataset));
  auto load_all = [](const std::vector<std::string> &paths) {
    std::vector<Results> out;
    for (const auto &p : paths) {
      ckg_results *r = nullptr;
      check(ckg_results_load(p.c_str(), &r), "loading results '" + p + "'");
      out.emplace_back(r);
    }
    return out;
  };
  auto base = load_all(o.baselines);
  auto aug = load_all(o.augmented);
  std::vector<ScenarioResults> sc;
  for (const auto &p : o.scenario_results) {
    ckg_scenario_results *r = nullptr;
    check(ckg_scenario_results_load(p.c_str(), &r), "loading scenario results '" + p + "'");
    sc.emplace_back(r);
  }
  if (base.empty() && aug.empty() && sc.empty()) throw Failure{"nothing to report"};
  std::vector<const ckg_results *> bp, ap;
  std::vector<const ckg_scenario_results *> sp;
  for (auto &r : base) bp.push_back(r.get());
  for (auto &r : aug) ap.push_back(r.get());
  for (auto &r : sc) sp.push_back(r.get());
  const std::string fmt = o.format.empty() ? "markdown" : o.format;
  char *s = nullptr;
  check(ckg_report_render(d.get(), bp.data(), bp.size(), ap.data(), ap.size(), sp.data(), sp.size(), fmt.c_str(), &s),
        "rendering report");
  const std::string text = take(s);
  if (o.out.empty() || o.out == "-") std::cout << text;
  else write_text(o.out, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Concept graph consistency toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ckg_version()));

  ExtractOpts ex;
  auto *extract = app.add_subcommand("extract", "Extract a concept hierarchy into a native graph file");
  extract->add_option("-c,--config", ex.config, "Run config (JSON)");
  extract->add_option("--graph", ex.graph, "Native graph file to validate and copy [graph.file]");
  extract->add_option("--dump", ex.dump, "Entity dump, JSON lines [graph.dump]");
  extract->add_option("--live", ex.live, "Live entity endpoint URL [graph.live.endpoint]");
  extract->add_option("--cache-dir", ex.cache_dir, "Page cache for --live [graph.live.cache_dir]");
  extract->add_option("--auth-env", ex.auth_env, "Env var holding a bearer token [graph.live.auth_env]");
  extract->add_option("--seed", ex.seed, "Seed concept id [graph.spec.seed_concept]");
  extract->add_option("--property", ex.property, "Seed property id [graph.spec.seed_property]");
  extract->add_option("--depth", ex.depth, "Maximum depth [graph.spec.max_depth]");
  extract->add_option("--direction", ex.direction, "ancestors|descendants|both [graph.spec.direction]");
  extract->add_option("--language", ex.language, "Label language [graph.spec.language]");
  extract->add_option("-o,--out", ex.out, "Output graph file (default <output_dir>/graph.json)");

  GenerateOpts ge;
  auto *generate = app.add_subcommand("generate", "Generate question clusters from a graph");
  generate->add_option("-c,--config", ge.config, "Run config (JSON)");
  generate->add_option("--graph", ge.graph, "Graph file [graph.file]");
  generate->add_option("--seed", ge.seed, "Sampling seed [generation.seed]");
  generate->add_option("--negatives", ge.negatives, "Negative edge clusters [generation.negative_count]");
  generate->add_option("--min-distance", ge.min_distance, "Minimum hop distance [generation.min_distance]");
  generate->add_option("--min-path-len", ge.min_path_len, "Minimum path length [generation.min_path_len]");
  generate->add_option("--article-mode", ge.article_mode, "paper|grammatical [generation.article_mode]");
  generate->add_option("--path-granularity", ge.path_granularity, "pair|path [generation.path_granularity]");
  generate->add_option("-o,--out", ge.out, "Output dataset (default <output_dir>/dataset.json)");

  EvalOpts ev;
  auto *evaluate = app.add_subcommand("evaluate", "Ask every question of a dataset to one or more backends");
  evaluate->add_option("-c,--config", ev.config, "Run config (JSON)");
  evaluate->add_option("--dataset", ev.dataset, "Dataset file [dataset]");
  evaluate->add_option("--graph", ev.graph, "Graph file, needed by oracle backends [graph.file]");
  evaluate->add_option("--backend", ev.backends, "Backend config: JSON file, inline JSON or 'perfect' [backends]");
  evaluate->add_option("--prompt", ev.prompt, "Prompt template file [prompt]");
  evaluate->add_option("--context", ev.context, "Context file to prepend");
  evaluate->add_option("--out-dir", ev.out_dir, "Output directory [output_dir]");

  AugmentOpts au;
  auto *augment = app.add_subcommand("augment", "Build a context from joint misses and re-evaluate");
  augment->add_option("-c,--config", au.config, "Run config (JSON)");
  augment->add_option("--dataset", au.dataset, "Dataset file [dataset]");
  augment->add_option("--graph", au.graph, "Graph file, needed by oracle backends [graph.file]");
  augment->add_option("--baseline", au.baselines, "Baseline results files [baselines]");
  augment->add_option("--backend", au.backends, "Backends for the augmented run [backends]");
  augment->add_option("--prompt", au.prompt, "Prompt template file [prompt]");
  augment->add_option("--granularity", au.granularity, "question|cluster [context_granularity]");
  augment->add_option("--out-dir", au.out_dir, "Output directory [output_dir]");

  ScenarioOpts sc;
  auto *scenarios = app.add_subcommand("scenarios", "Evaluate policy scenarios");
  scenarios->add_option("-c,--config", sc.config, "Run config (JSON)");
  scenarios->add_option("--graph", sc.graph, "Graph file [graph.file]");
  scenarios->add_option("--scenarios", sc.scenarios, "Scenario file [scenarios]");
  scenarios->add_option("--specialist", sc.specialists, "Specialist concept ids [specialists]");
  scenarios->add_option("--backend", sc.backends, "Backend configs [backends]");
  scenarios->add_option("--prompt", sc.prompt, "Prompt template file [prompt]");
  scenarios->add_option("--out-dir", sc.out_dir, "Output directory [output_dir]");

  ReportOpts re;
  auto *report = app.add_subcommand("report", "Render tables from results files");
  report->add_option("-c,--config", re.config, "Run config (JSON)");
  report->add_option("--dataset", re.dataset, "Dataset file [dataset]");
  report->add_option("--baseline", re.baselines, "Baseline results files");
  report->add_option("--augmented", re.augmented, "Augmented results files");
  report->add_option("--scenario-results", re.scenario_results, "Scenario results files");
  report->add_option("--format", re.format, "markdown|csv|json");
  report->add_option("-o,--out", re.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (extract->parsed()) return cmd_extract(ex);
    if (generate->parsed()) return cmd_generate(ge);
    if (evaluate->parsed()) return cmd_evaluate(ev);
    if (augment->parsed()) return cmd_augment(au);
    if (scenarios->parsed()) return cmd_scenarios(sc);
    if (report->parsed()) return cmd_report(re);
  } catch (const Failure &f) {
    std::cerr << "ckg: error: " << f.message << "\n";
    return kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "ckg: error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
