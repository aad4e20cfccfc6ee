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

#ifndef CONCEPTKG_GRAPH_HPP_
#define CONCEPTKG_GRAPH_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ckg {

// External-KG identifier (a Wikidata Q-number) or a local slug.
class ConceptId {
 public:
  ConceptId() = default;
  explicit ConceptId(std::string value) : value_(std::move(value)) {}

  const std::string &str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const ConceptId &, const ConceptId &) = default;
  friend bool operator==(const ConceptId &, const ConceptId &) = default;

 private:
  std::string value_;
};

struct Concept {
  ConceptId id;
  std::string label;
  std::vector<std::string> aliases;

  friend bool operator==(const Concept &, const Concept &) = default;
};

struct SubConceptEdge {
  ConceptId child;
  ConceptId parent;

  friend auto operator<=>(const SubConceptEdge &, const SubConceptEdge &) = default;
  friend bool operator==(const SubConceptEdge &, const SubConceptEdge &) = default;
};

struct PropertyAssertion {
  ConceptId subject;
  std::string property_label;
  std::string value_label;

  friend auto operator<=>(const PropertyAssertion &, const PropertyAssertion &) = default;
  friend bool operator==(const PropertyAssertion &, const PropertyAssertion &) = default;
};

// Unordered pair, stored with first < second.
using SameAsPair = std::pair<ConceptId, ConceptId>;

// Lowercase, trim and collapse internal whitespace.
std::string normalize_label(std::string_view label);

// Immutable subConceptOf hierarchy. Copies share the same validated state,
// so passing graphs by value is cheap and thread-safe.
//
// Concepts are indexed 0..size()-1 in id order; the index-based accessors
// are what the reasoning code uses, the id-based ones are for callers.
class ConceptGraph {
 public:
  using Index = std::uint32_t;

  ConceptGraph();

  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  const std::vector<Concept> &concepts() const noexcept;
  const std::vector<SubConceptEdge> &edges() const noexcept;
  const std::vector<PropertyAssertion> &properties() const noexcept;
  const std::vector<SameAsPair> &same_as() const noexcept;

  std::optional<Index> find(const ConceptId &id) const;
  // Throws kUnknownConcept.
  Index index_of(const ConceptId &id) const;
  std::optional<Index> find_by_label(std::string_view label) const;

  const Concept &concept_at(Index i) const;
  const ConceptId &id_at(Index i) const { return concept_at(i).id; }
  const std::string &label_at(Index i) const { return concept_at(i).label; }

  std::span<const Index> parents(Index i) const;
  std::span<const Index> children(Index i) const;
  // Indices into properties() whose subject is concept i.
  std::span<const std::size_t> properties_of(Index i) const;

  bool has_edge(Index child, Index parent) const;
  bool is_same_as(Index a, Index b) const;

  // Stable hash of the sorted edge list.
  const std::string &fingerprint() const noexcept;

  struct State;

 private:
  friend ConceptGraph build_graph(std::vector<Concept>, std::vector<SubConceptEdge>,
                                  std::vector<PropertyAssertion>, std::vector<SameAsPair>);
  explicit ConceptGraph(std::shared_ptr<const State> state) : state_(std::move(state)) {}

  std::shared_ptr<const State> state_;
};

// Validates and freezes a hierarchy. Duplicate edges, assertions and same-as
// pairs are collapsed; labels are normalized.
//
// Throws kCycleDetected (message lists one cycle), kDanglingReference,
// kDuplicateLabel, or kInvalidArgument for empty/duplicate ids and empty
// property fields.
ConceptGraph build_graph(std::vector<Concept> concepts, std::vector<SubConceptEdge> edges,
                         std::vector<PropertyAssertion> properties = {},
                         std::vector<SameAsPair> same_as = {});

}  // namespace ckg

template <>
struct std::hash<ckg::ConceptId> {
  std::size_t operator()(const ckg::ConceptId &id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // CONCEPTKG_GRAPH_HPP_
