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

#include "conceptkg/dataset_io.hpp"

#include <set>

#include "json_util.hpp"

namespace ckg {

using detail::json;

std::string write_dataset(const ClusterDataset &dataset) {
  json clusters = json::array();
  for (const auto &c : dataset.clusters) {
    json j = {{"id", c.id},
              {"type", cluster_type_name(c.type)},
              {"expected", yes_no_name(c.expected)},
              {"source", c.source.str()},
              {"target", c.target.str()},
              {"questions", c.questions},
              {"statements", c.statements}};
    if (c.path) {
      json path = json::array();
      for (const auto &step : *c.path) path.push_back(step.str());
      j["path"] = std::move(path);
    }
    clusters.push_back(std::move(j));
  }
  const GenerationConfig &cfg = dataset.config;
  json doc = {{"version", dataset.version},
              {"graph_fingerprint", dataset.graph_fingerprint},
              {"config",
               {{"seed", cfg.seed},
                {"negative_count", cfg.negative_count},
                {"min_distance", cfg.min_distance},
                {"min_path_len", cfg.min_path_len},
                {"article_mode", article_mode_name(cfg.article_mode)},
                {"path_granularity", path_granularity_name(cfg.path_granularity)},
                {"template_version", cfg.template_version}}},
              {"clusters", std::move(clusters)}};
  return doc.dump(2) + "\n";
}

namespace {

std::uint64_t require_uint(const json &obj, std::string_view key, const std::string &locus) {
  const json &v = detail::require(obj, key, locus);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    detail::schema_error(detail::child_path(locus, key), "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

template <class F>
auto as_schema(const std::string &locus, F &&parse) {
  try {
    return parse();
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kSchemaViolation) throw;
    detail::schema_error(locus, e.what());
  }
}

}  // namespace

ClusterDataset read_dataset(std::string_view text) {
  const json doc = detail::parse_or_schema_error(text, "$");
  ClusterDataset ds;
  ds.version = detail::require_string(doc, "version", "$");
  if (ds.version != kDatasetVersion) {
    detail::schema_error("$.version", "unsupported dataset version '" + ds.version + "'");
  }
  ds.graph_fingerprint = detail::require_string(doc, "graph_fingerprint", "$");

  const json &cfg = detail::require(doc, "config", "$");
  GenerationConfig &gc = ds.config;
  gc.seed = require_uint(cfg, "seed", "$.config");
  gc.negative_count = require_uint(cfg, "negative_count", "$.config");
  gc.min_distance = require_uint(cfg, "min_distance", "$.config");
  gc.min_path_len = require_uint(cfg, "min_path_len", "$.config");
  gc.article_mode = as_schema("$.config.article_mode", [&] {
    return parse_article_mode(detail::require_string(cfg, "article_mode", "$.config"));
  });
  gc.path_granularity = as_schema("$.config.path_granularity", [&] {
    return parse_path_granularity(detail::require_string(cfg, "path_granularity", "$.config"));
  });
  gc.template_version = detail::require_string(cfg, "template_version", "$.config");

  const json &clusters = detail::require_array(doc, "clusters", "$");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const json &cj = clusters[i];
    std::string locus = detail::child_path("$.clusters", i);
    QuestionCluster c;
    c.id = detail::require_string(cj, "id", locus);
    locus += "(id=" + c.id + ")";
    if (!ids.insert(c.id).second) detail::schema_error(locus, "duplicate cluster id");
    c.type = as_schema(locus + ".type",
                       [&] { return parse_cluster_type(detail::require_string(cj, "type", locus)); });
    const std::string expected = detail::require_string(cj, "expected", locus);
    if (expected != "yes" && expected != "no") {
      detail::schema_error(locus + ".expected", "expected 'yes' or 'no'");
    }
    c.expected = expected == "yes" ? YesNo::kYes : YesNo::kNo;
    if (c.expected != expected_for(c.type)) {
      detail::schema_error(locus + ".expected", "does not match the rule for its type");
    }
    c.source = ConceptId(detail::require_string(cj, "source", locus));
    c.target = ConceptId(detail::require_string(cj, "target", locus));
    if (auto it = cj.find("path"); it != cj.end() && !it->is_null()) {
      ConceptPath path;
      for (auto &s : detail::string_list(*it, locus + ".path")) path.emplace_back(std::move(s));
      c.path = std::move(path);
    }
    c.questions = detail::string_list(detail::require_array(cj, "questions", locus), locus + ".questions");
    c.statements =
        detail::string_list(detail::require_array(cj, "statements", locus), locus + ".statements");
    if (c.questions.empty()) detail::schema_error(locus + ".questions", "must not be empty");
    if (c.statements.size() != c.questions.size()) {
      detail::schema_error(locus + ".statements", "must be parallel to questions");
    }
    ds.clusters.push_back(std::move(c));
  }
  return ds;
}

ClusterDataset read_dataset_file(const std::string &path) {
  return read_dataset(detail::read_file(path));
}

void write_dataset_file(const ClusterDataset &dataset, const std::string &path) {
  detail::write_file_atomic(path, write_dataset(dataset));
}

}  // namespace ckg
