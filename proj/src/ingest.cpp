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

#include "conceptkg/ingest.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "conceptkg/error.hpp"
#include "json_util.hpp"

namespace ckg {

using detail::json;

namespace detail {

// Shared with the live fetcher. Returns false and fills `why` when the record
// does not meet the subset contract.
bool parse_entity_record(const json &rec, RawEntity &out, std::string &why);

}  // namespace detail

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_claim(const json &claim, ClaimValue &out) {
  if (claim.is_string()) {
    out.entity_id = claim.get<std::string>();
    return true;
  }
  if (!claim.is_object()) return false;
  auto snak = claim.find("mainsnak");
  if (snak == claim.end() || !snak->is_object()) return false;
  if (snak->value("snaktype", "value") != "value") return false;
  auto dv = snak->find("datavalue");
  if (dv == snak->end() || !dv->is_object()) return false;
  auto value = dv->find("value");
  if (value == dv->end()) return false;
  if (value->is_string()) {
    out.text = value->get<std::string>();
    return true;
  }
  if (!value->is_object()) return false;
  if (auto id = value->find("id"); id != value->end() && id->is_string()) {
    out.entity_id = id->get<std::string>();
    return true;
  }
  if (auto num = value->find("numeric-id"); num != value->end() && num->is_number_integer()) {
    const std::string type = value->value("entity-type", "item");
    out.entity_id = (type == "property" ? "P" : "Q") + std::to_string(num->get<long long>());
    return true;
  }
  if (auto text = value->find("text"); text != value->end() && text->is_string()) {
    out.text = text->get<std::string>();
    return true;
  }
  return false;
}

std::string label_text(const json &v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object()) {
    auto it = v.find("value");
    if (it != v.end() && it->is_string()) return it->get<std::string>();
  }
  return {};
}

}  // namespace

namespace detail {

bool parse_entity_record(const json &rec, RawEntity &out, std::string &why) {
  if (!rec.is_object()) {
    why = "record is not an object";
    return false;
  }
  auto id = rec.find("id");
  if (id == rec.end() || !id->is_string() || id->get<std::string>().empty()) {
    why = "record has no id";
    return false;
  }
  out = RawEntity{};
  out.id = id->get<std::string>();
  auto labels = rec.find("labels");
  if (labels == rec.end() || !labels->is_object()) {
    why = "record " + out.id + " has no labels map";
    return false;
  }
  for (const auto &[lang, v] : labels->items()) {
    std::string text = label_text(v);
    if (!text.empty()) out.labels[lang] = std::move(text);
  }
  if (out.labels.empty()) {
    why = "record " + out.id + " has no usable label";
    return false;
  }
  if (auto aliases = rec.find("aliases"); aliases != rec.end() && aliases->is_object()) {
    for (const auto &[lang, list] : aliases->items()) {
      if (!list.is_array()) continue;
      for (const auto &a : list) {
        std::string text = label_text(a);
        if (!text.empty()) out.aliases[lang].push_back(std::move(text));
      }
    }
  }
  if (auto claims = rec.find("claims"); claims != rec.end() && claims->is_object()) {
    for (const auto &[prop, list] : claims->items()) {
      if (!list.is_array()) continue;
      for (const auto &c : list) {
        ClaimValue v;
        if (parse_claim(c, v)) out.claims[prop].push_back(std::move(v));
      }
    }
  }
  return true;
}

}  // namespace detail

ParsedDump parse_entity_dump(std::istream &source) {
  if (!source) throw Error(ErrorCode::kUnreadableSource, "source stream is not readable");
  ParsedDump out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(source, line)) {
    ++lineno;
    std::string body = trim(line);
    if (!body.empty() && body.back() == ',') body.pop_back();
    if (body.empty() || body == "[" || body == "]") continue;
    json rec;
    try {
      rec = json::parse(body);
    } catch (const json::parse_error &e) {
      out.diagnostics.push_back({lineno, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    RawEntity entity;
    std::string why;
    if (detail::parse_entity_record(rec, entity, why)) {
      out.entities.push_back(std::move(entity));
    } else {
      out.diagnostics.push_back({lineno, why});
    }
  }
  if (source.bad()) throw Error(ErrorCode::kUnreadableSource, "read error at line " + std::to_string(lineno));
  return out;
}

ParsedDump parse_entity_dump_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableSource, "cannot open '" + path + "'");
  return parse_entity_dump(in);
}

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::kAncestors: return "ancestors";
    case Direction::kDescendants: return "descendants";
    case Direction::kBoth: return "both";
  }
  return "descendants";
}

Direction parse_direction(std::string_view name) {
  if (name == "ancestors") return Direction::kAncestors;
  if (name == "descendants") return Direction::kDescendants;
  if (name == "both") return Direction::kBoth;
  throw Error(ErrorCode::kInvalidArgument, "unknown direction '" + std::string(name) + "'");
}

Extraction extract_fragment(const ExtractionSpec &spec, const std::vector<RawEntity> &entities) {
  if (spec.max_depth < 1) throw Error(ErrorCode::kInvalidArgument, "max_depth must be >= 1");
  if (spec.seed_concept.empty()) throw Error(ErrorCode::kInvalidArgument, "empty seed concept");

  Extraction out;
  auto note = [&](std::string msg) { out.diagnostics.push_back(std::move(msg)); };

  // Records sorted by id; a repeated id keeps the last occurrence.
  std::map<std::string, const RawEntity *> by_id;
  for (const auto &e : entities) {
    if (!by_id.emplace(e.id, &e).second) {
      note("duplicate record for " + e.id + "; keeping the last one");
      by_id[e.id] = &e;
    }
  }
  if (!by_id.contains(spec.seed_concept)) {
    throw Error(ErrorCode::kSeedNotFound, "seed " + spec.seed_concept + " is not in the source");
  }

  auto parents_of = [&](const RawEntity &e) {
    std::set<std::string> ps;
    for (std::string_view prop : {kInstanceOf, kSubclassOf}) {
      auto it = e.claims.find(std::string(prop));
      if (it == e.claims.end()) continue;
      for (const auto &v : it->second) {
        if (!v.entity_id.empty() && v.entity_id != e.id) ps.insert(v.entity_id);
      }
    }
    return ps;
  };

  std::map<std::string, std::set<std::string>> parents;
  std::map<std::string, std::set<std::string>> children;
  for (const auto &[id, e] : by_id) {
    parents[id] = parents_of(*e);
    for (const auto &p : parents[id]) children[p].insert(id);
  }

  std::set<std::string> nodes{spec.seed_concept};
  std::set<std::string> missing;
  auto bfs = [&](const std::map<std::string, std::set<std::string>> &next) {
    std::deque<std::pair<std::string, int>> queue{{spec.seed_concept, 0}};
    std::set<std::string> seen{spec.seed_concept};
    while (!queue.empty()) {
      auto [id, depth] = queue.front();
      queue.pop_front();
      if (depth >= spec.max_depth) continue;
      auto it = next.find(id);
      if (it == next.end()) continue;
      for (const auto &n : it->second) {
        if (!seen.insert(n).second) continue;
        if (!by_id.contains(n)) {
          missing.insert(n);
          continue;
        }
        nodes.insert(n);
        queue.emplace_back(n, depth + 1);
      }
    }
  };
  if (spec.direction != Direction::kDescendants) bfs(parents);
  if (spec.direction != Direction::kAncestors) bfs(children);
  for (const auto &m : missing) note("referenced entity " + m + " is not in the source; skipped");

  auto label_of = [&](const std::string &id) -> std::string {
    auto it = by_id.find(id);
    if (it == by_id.end()) return id;
    auto l = it->second->labels.find(spec.language);
    return l == it->second->labels.end() ? id : l->second;
  };

  std::vector<Concept> concepts;
  std::set<std::string> used_labels;
  for (const auto &id : nodes) {
    const RawEntity &e = *by_id.at(id);
    Concept c{ConceptId(id), label_of(id), {}};
    if (e.labels.find(spec.language) == e.labels.end()) {
      note(id + " has no '" + spec.language + "' label; using the id");
    }
    if (!used_labels.insert(normalize_label(c.label)).second) {
      note("label '" + c.label + "' of " + id + " is already taken; disambiguated");
      c.label += " (" + id + ")";
      used_labels.insert(normalize_label(c.label));
    }
    if (auto a = e.aliases.find(spec.language); a != e.aliases.end()) c.aliases = a->second;
    concepts.push_back(std::move(c));
  }

  // Insert edges in id order, refusing any edge whose parent already reaches
  // the child.
  std::map<std::string, std::vector<std::string>> accepted;
  auto reaches = [&](const std::string &from, const std::string &to) {
    std::vector<std::string> stack{from};
    std::unordered_set<std::string> seen{from};
    while (!stack.empty()) {
      std::string cur = std::move(stack.back());
      stack.pop_back();
      if (cur == to) return true;
      for (const auto &p : accepted[cur]) {
        if (seen.insert(p).second) stack.push_back(p);
      }
    }
    return false;
  };
  std::vector<SubConceptEdge> edges;
  for (const auto &child : nodes) {
    for (const auto &parent : parents[child]) {
      if (!nodes.contains(parent)) continue;
      if (reaches(parent, child)) {
        note("dropped back-edge " + child + " -> " + parent + " (would close a cycle)");
        continue;
      }
      accepted[child].push_back(parent);
      edges.push_back({ConceptId(child), ConceptId(parent)});
    }
  }
  if (edges.empty()) {
    throw Error(ErrorCode::kEmptyFragment,
                "no subConceptOf edges reachable from " + spec.seed_concept);
  }

  std::vector<PropertyAssertion> properties;
  if (!spec.seed_property.empty()) {
    const std::string property_label = label_of(spec.seed_property);
    for (const auto &id : nodes) {
      auto it = by_id.at(id)->claims.find(spec.seed_property);
      if (it == by_id.at(id)->claims.end()) continue;
      for (const auto &v : it->second) {
        std::string value = v.entity_id.empty() ? v.text : label_of(v.entity_id);
        if (!value.empty()) properties.push_back({ConceptId(id), property_label, value});
      }
    }
  }

  std::vector<SameAsPair> same_as;
  for (const auto &id : nodes) {
    auto it = by_id.at(id)->claims.find(std::string(kSameAs));
    if (it == by_id.at(id)->claims.end()) continue;
    for (const auto &v : it->second) {
      if (v.entity_id.empty() || v.entity_id == id || !nodes.contains(v.entity_id)) continue;
      same_as.emplace_back(ConceptId(std::min(id, v.entity_id)),
                           ConceptId(std::max(id, v.entity_id)));
    }
  }

  out.graph = build_graph(std::move(concepts), std::move(edges), std::move(properties),
                          std::move(same_as));
  return out;
}

}  // namespace ckg
