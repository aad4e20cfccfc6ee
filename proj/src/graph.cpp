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

#include "conceptkg/graph.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "conceptkg/error.hpp"
#include "conceptkg/hash.hpp"

namespace ckg {

struct ConceptGraph::State {
  std::vector<Concept> concepts;
  std::vector<SubConceptEdge> edges;
  std::vector<PropertyAssertion> properties;
  std::vector<SameAsPair> same_as;

  std::unordered_map<ConceptId, Index> by_id;
  std::unordered_map<std::string, Index> by_label;
  std::vector<std::vector<Index>> parents;
  std::vector<std::vector<Index>> children;
  std::vector<std::vector<std::size_t>> properties_of;
  std::vector<std::pair<Index, Index>> same_as_index;  // sorted, first < second
  std::string fingerprint;
};

namespace {

const ConceptGraph::State &empty_state() {
  static const auto *state = [] {
    auto *s = new ConceptGraph::State();
    s->fingerprint = Fnv1a().hex();
    return s;
  }();
  return *state;
}

// Iterative three-colour DFS along child -> parent edges. Returns one cycle
// as a list of indices (first == last), or empty when acyclic.
std::vector<ConceptGraph::Index> find_cycle(
    const std::vector<std::vector<ConceptGraph::Index>> &parents) {
  using Index = ConceptGraph::Index;
  enum Colour : std::uint8_t { kWhite, kGrey, kBlack };
  const std::size_t n = parents.size();
  std::vector<Colour> colour(n, kWhite);
  std::vector<Index> via(n, 0);
  std::vector<std::pair<Index, std::size_t>> stack;

  for (Index root = 0; root < n; ++root) {
    if (colour[root] != kWhite) continue;
    stack.emplace_back(root, 0);
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      if (next < parents[node].size()) {
        Index p = parents[node][next++];
        if (colour[p] == kGrey) {
          std::vector<Index> cycle{p};
          for (Index cur = node; cur != p; cur = via[cur]) cycle.push_back(cur);
          cycle.push_back(p);
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        if (colour[p] == kWhite) {
          colour[p] = kGrey;
          via[p] = node;
          stack.emplace_back(p, 0);
        }
      } else {
        colour[node] = kBlack;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

std::string normalize_label(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  bool pending_space = false;
  for (unsigned char c : label) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

ConceptGraph::ConceptGraph()
    : state_(std::shared_ptr<const State>(&empty_state(), [](const State *) {})) {}

std::size_t ConceptGraph::size() const noexcept { return state_->concepts.size(); }
const std::vector<Concept> &ConceptGraph::concepts() const noexcept { return state_->concepts; }
const std::vector<SubConceptEdge> &ConceptGraph::edges() const noexcept { return state_->edges; }
const std::vector<PropertyAssertion> &ConceptGraph::properties() const noexcept {
  return state_->properties;
}
const std::vector<SameAsPair> &ConceptGraph::same_as() const noexcept { return state_->same_as; }
const std::string &ConceptGraph::fingerprint() const noexcept { return state_->fingerprint; }

std::optional<ConceptGraph::Index> ConceptGraph::find(const ConceptId &id) const {
  auto it = state_->by_id.find(id);
  if (it == state_->by_id.end()) return std::nullopt;
  return it->second;
}

ConceptGraph::Index ConceptGraph::index_of(const ConceptId &id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::kUnknownConcept, "no concept with id '" + id.str() + "'");
}

std::optional<ConceptGraph::Index> ConceptGraph::find_by_label(std::string_view label) const {
  auto it = state_->by_label.find(normalize_label(label));
  if (it == state_->by_label.end()) return std::nullopt;
  return it->second;
}

const Concept &ConceptGraph::concept_at(Index i) const { return state_->concepts.at(i); }

std::span<const ConceptGraph::Index> ConceptGraph::parents(Index i) const {
  return state_->parents.at(i);
}

std::span<const ConceptGraph::Index> ConceptGraph::children(Index i) const {
  return state_->children.at(i);
}

std::span<const std::size_t> ConceptGraph::properties_of(Index i) const {
  return state_->properties_of.at(i);
}

bool ConceptGraph::has_edge(Index child, Index parent) const {
  const auto &ps = state_->parents.at(child);
  return std::binary_search(ps.begin(), ps.end(), parent);
}

bool ConceptGraph::is_same_as(Index a, Index b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(state_->same_as_index.begin(), state_->same_as_index.end(),
                            std::make_pair(a, b));
}

ConceptGraph build_graph(std::vector<Concept> concepts, std::vector<SubConceptEdge> edges,
                         std::vector<PropertyAssertion> properties,
                         std::vector<SameAsPair> same_as) {
  using Index = ConceptGraph::Index;
  auto state = std::make_shared<ConceptGraph::State>();

  std::sort(concepts.begin(), concepts.end(),
            [](const Concept &a, const Concept &b) { return a.id < b.id; });
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    Concept &c = concepts[i];
    if (c.id.empty()) throw Error(ErrorCode::kInvalidArgument, "concept with empty id");
    if (i > 0 && concepts[i - 1].id == c.id) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate concept id '" + c.id.str() + "'");
    }
    c.label = normalize_label(c.label);
    if (c.label.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "concept '" + c.id.str() + "' has an empty label");
    }
    for (auto &alias : c.aliases) alias = normalize_label(alias);
    std::erase(c.aliases, std::string());
    auto [it, inserted] = state->by_label.emplace(c.label, static_cast<Index>(i));
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateLabel, "label '" + c.label + "' used by '" +
                                                  concepts[it->second].id.str() + "' and '" +
                                                  c.id.str() + "'");
    }
    state->by_id.emplace(c.id, static_cast<Index>(i));
  }
  const std::size_t n = concepts.size();

  auto resolve = [&](const ConceptId &id, const char *what) {
    auto it = state->by_id.find(id);
    if (it == state->by_id.end()) {
      throw Error(ErrorCode::kDanglingReference,
                  std::string(what) + " refers to unknown concept '" + id.str() + "'");
    }
    return it->second;
  };

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  state->parents.assign(n, {});
  state->children.assign(n, {});
  for (const auto &e : edges) {
    Index child = resolve(e.child, "edge child");
    Index parent = resolve(e.parent, "edge parent");
    if (child == parent) {
      throw Error(ErrorCode::kCycleDetected, "self loop on '" + e.child.str() + "'");
    }
    state->parents[child].push_back(parent);
    state->children[parent].push_back(child);
  }
  for (auto &ps : state->parents) std::sort(ps.begin(), ps.end());
  for (auto &cs : state->children) std::sort(cs.begin(), cs.end());

  if (auto cycle = find_cycle(state->parents); !cycle.empty()) {
    std::string msg;
    for (Index i : cycle) {
      if (!msg.empty()) msg += " -> ";
      msg += concepts[i].id.str();
    }
    throw Error(ErrorCode::kCycleDetected, msg);
  }

  for (auto &p : properties) {
    p.property_label = normalize_label(p.property_label);
    p.value_label = normalize_label(p.value_label);
  }
  std::sort(properties.begin(), properties.end());
  properties.erase(std::unique(properties.begin(), properties.end()), properties.end());
  state->properties_of.assign(n, {});
  for (std::size_t k = 0; k < properties.size(); ++k) {
    const auto &p = properties[k];
    Index s = resolve(p.subject, "property assertion");
    if (p.property_label.empty() || p.value_label.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "property assertion on '" + p.subject.str() + "' has an empty field");
    }
    state->properties_of[s].push_back(k);
  }

  for (auto &[a, b] : same_as) {
    if (b < a) std::swap(a, b);
    Index ia = resolve(a, "same_as");
    Index ib = resolve(b, "same_as");
    if (ia == ib) {
      throw Error(ErrorCode::kInvalidArgument, "same_as pair links '" + a.str() + "' to itself");
    }
  }
  std::sort(same_as.begin(), same_as.end());
  same_as.erase(std::unique(same_as.begin(), same_as.end()), same_as.end());
  for (const auto &[a, b] : same_as) {
    Index ia = state->by_id.at(a), ib = state->by_id.at(b);
    state->same_as_index.emplace_back(std::min(ia, ib), std::max(ia, ib));
  }
  std::sort(state->same_as_index.begin(), state->same_as_index.end());

  Fnv1a h;
  for (const auto &e : edges) h.update(e.child.str()).separator().update(e.parent.str()).separator();
  state->fingerprint = h.hex();

  state->concepts = std::move(concepts);
  state->edges = std::move(edges);
  state->properties = std::move(properties);
  state->same_as = std::move(same_as);
  return ConceptGraph(std::move(state));
}

}  // namespace ckg
