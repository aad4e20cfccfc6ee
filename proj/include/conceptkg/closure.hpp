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

#ifndef CONCEPTKG_CLOSURE_HPP_
#define CONCEPTKG_CLOSURE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conceptkg/graph.hpp"

namespace ckg {

using ConceptPair = std::pair<ConceptId, ConceptId>;
using ConceptPath = std::vector<ConceptId>;

// Exact transitive reachability over subConceptOf, one bit row per concept.
// Irreflexive: a concept never implies itself.
class DeductiveClosure {
 public:
  using Index = ConceptGraph::Index;

  explicit DeductiveClosure(ConceptGraph graph);

  const ConceptGraph &graph() const noexcept { return graph_; }
  const std::string &graph_fingerprint() const noexcept { return graph_.fingerprint(); }

  // (descendant, ancestor) in the closure.
  bool implies(Index descendant, Index ancestor) const {
    return (bits_[descendant * words_ + (ancestor >> 6)] >> (ancestor & 63)) & 1U;
  }
  bool related(Index a, Index b) const { return implies(a, b) || implies(b, a); }
  // Implied but not a direct edge.
  bool strictly_implied(Index descendant, Index ancestor) const {
    return implies(descendant, ancestor) && !graph_.has_edge(descendant, ancestor);
  }

  std::vector<Index> ancestors(Index i) const;
  std::vector<Index> descendants(Index i) const;

  std::size_t implied_count() const;
  // Sorted by (descendant id, ancestor id).
  std::vector<ConceptPair> implied_pairs() const;
  std::vector<ConceptPair> strictly_implied_pairs() const;

 private:
  ConceptGraph graph_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

DeductiveClosure deductive_closure(const ConceptGraph &graph);

enum class Subsumption { kStrict, kReflexive };

// Throws kUnknownConcept.
bool is_subconcept(const DeductiveClosure &closure, const ConceptId &a, const ConceptId &b,
                   Subsumption mode = Subsumption::kStrict);

struct InheritedProperty {
  PropertyAssertion assertion;
  ConceptId source;  // the concept (self or ancestor) carrying the assertion

  friend bool operator==(const InheritedProperty &, const InheritedProperty &) = default;
};

// Assertions on the concept and on every ancestor, once each, ordered by
// assertion. Throws kUnknownConcept.
std::vector<InheritedProperty> inherited_properties(const DeductiveClosure &closure,
                                                    const ConceptId &concept_id);

struct PairSample {
  std::vector<ConceptPair> pairs;
  std::size_t candidates = 0;  // size of the eligible pool
  bool insufficient = false;   // fewer than the requested count were available
};

// Up to k ordered pairs (a, b) with no subsumption in either direction, no
// same-as link and undirected hop distance >= min_distance (disconnected
// counts as infinitely far). Uniform without replacement over the eligible
// pool, deterministic per seed, returned sorted by label.
PairSample unrelated_pairs(const DeductiveClosure &closure, std::size_t k,
                           std::size_t min_distance, std::uint64_t seed);

// Every directed path with at least min_len edges, ordered lexicographically
// by label sequence. Throws kInvalidArgument when min_len < 2.
std::vector<ConceptPath> implied_paths(const ConceptGraph &graph, std::size_t min_len);

}  // namespace ckg

#endif  // CONCEPTKG_CLOSURE_HPP_
