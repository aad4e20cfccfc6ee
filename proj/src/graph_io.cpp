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

#include "conceptkg/graph_io.hpp"

#include "json_util.hpp"

namespace ckg {

using detail::json;

std::string write_graph(const ConceptGraph &graph) {
  json concepts = json::array();
  for (const auto &c : graph.concepts()) {
    concepts.push_back({{"id", c.id.str()}, {"label", c.label}, {"aliases", c.aliases}});
  }
  json edges = json::array();
  for (const auto &e : graph.edges()) {
    edges.push_back({{"child", e.child.str()}, {"parent", e.parent.str()}});
  }
  json properties = json::array();
  for (const auto &p : graph.properties()) {
    properties.push_back(
        {{"subject", p.subject.str()}, {"property", p.property_label}, {"value", p.value_label}});
  }
  json same_as = json::array();
  for (const auto &[a, b] : graph.same_as()) same_as.push_back({a.str(), b.str()});

  json doc = {{"concepts", std::move(concepts)},
              {"edges", std::move(edges)},
              {"properties", std::move(properties)},
              {"same_as", std::move(same_as)}};
  return doc.dump(2) + "\n";
}

ConceptGraph read_graph(std::string_view text) {
  const json doc = detail::parse_or_schema_error(text, "$");
  if (!doc.is_object()) detail::schema_error("$", "expected an object");

  std::vector<Concept> concepts;
  const json &cs = detail::require_array(doc, "concepts", "$");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string locus = "$.concepts[" + std::to_string(i) + "]";
    Concept c;
    c.id = ConceptId(detail::require_string(cs[i], "id", locus));
    c.label = detail::require_string(cs[i], "label", locus);
    if (auto it = cs[i].find("aliases"); it != cs[i].end()) {
      c.aliases = detail::string_list(*it, locus + ".aliases");
    }
    concepts.push_back(std::move(c));
  }

  std::vector<SubConceptEdge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) detail::schema_error("$.edges", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string locus = "$.edges[" + std::to_string(i) + "]";
      edges.push_back({ConceptId(detail::require_string((*it)[i], "child", locus)),
                       ConceptId(detail::require_string((*it)[i], "parent", locus))});
    }
  }

  std::vector<PropertyAssertion> properties;
  if (auto it = doc.find("properties"); it != doc.end()) {
    if (!it->is_array()) detail::schema_error("$.properties", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string locus = "$.properties[" + std::to_string(i) + "]";
      const json &p = (*it)[i];
      properties.push_back({ConceptId(detail::require_string(p, "subject", locus)),
                            detail::require_string(p, "property", locus),
                            detail::require_string(p, "value", locus)});
    }
  }

  std::vector<SameAsPair> same_as;
  if (auto it = doc.find("same_as"); it != doc.end()) {
    if (!it->is_array()) detail::schema_error("$.same_as", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string locus = "$.same_as[" + std::to_string(i) + "]";
      auto ids = detail::string_list((*it)[i], locus);
      if (ids.size() != 2) detail::schema_error(locus, "expected a pair of ids");
      same_as.emplace_back(ConceptId(ids[0]), ConceptId(ids[1]));
    }
  }

  return build_graph(std::move(concepts), std::move(edges), std::move(properties),
                     std::move(same_as));
}

ConceptGraph read_graph_file(const std::string &path) {
  return read_graph(detail::read_file(path));
}

void write_graph_file(const ConceptGraph &graph, const std::string &path) {
  detail::write_file_atomic(path, write_graph(graph));
}

}  // namespace ckg
