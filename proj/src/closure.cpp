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

#include "conceptkg/closure.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <random>
#include <tuple>

#include "conceptkg/error.hpp"
#include "conceptkg/random.hpp"

namespace ckg {

namespace {

using Index = ConceptGraph::Index;

// Parents before children.
std::vector<Index> top_down_order(const ConceptGraph &g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> pending(n);
  std::queue<Index> ready;
  for (Index i = 0; i < n; ++i) {
    pending[i] = g.parents(i).size();
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<Index> order;
  order.reserve(n);
  while (!ready.empty()) {
    Index i = ready.front();
    ready.pop();
    order.push_back(i);
    for (Index c : g.children(i)) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  return order;
}

std::vector<Index> label_order(const ConceptGraph &g) {
  std::vector<Index> order(g.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return g.label_at(a) < g.label_at(b); });
  return order;
}

}  // namespace

DeductiveClosure::DeductiveClosure(ConceptGraph graph) : graph_(std::move(graph)) {
  const std::size_t n = graph_.size();
  words_ = (n + 63) / 64;
  bits_.assign(n * words_, 0);
  for (Index i : top_down_order(graph_)) {
    std::uint64_t *row = &bits_[i * words_];
    for (Index p : graph_.parents(i)) {
      const std::uint64_t *prow = &bits_[p * words_];
      for (std::size_t w = 0; w < words_; ++w) row[w] |= prow[w];
      row[p >> 6] |= std::uint64_t{1} << (p & 63);
    }
  }
}

std::vector<Index> DeductiveClosure::ancestors(Index i) const {
  std::vector<Index> out;
  for (Index j = 0; j < graph_.size(); ++j) {
    if (implies(i, j)) out.push_back(j);
  }
  return out;
}

std::vector<Index> DeductiveClosure::descendants(Index i) const {
  std::vector<Index> out;
  for (Index j = 0; j < graph_.size(); ++j) {
    if (implies(j, i)) out.push_back(j);
  }
  return out;
}

std::size_t DeductiveClosure::implied_count() const {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<ConceptPair> DeductiveClosure::implied_pairs() const {
  std::vector<ConceptPair> out;
  for (Index a = 0; a < graph_.size(); ++a) {
    for (Index b : ancestors(a)) out.emplace_back(graph_.id_at(a), graph_.id_at(b));
  }
  return out;
}

std::vector<ConceptPair> DeductiveClosure::strictly_implied_pairs() const {
  std::vector<ConceptPair> out;
  for (Index a = 0; a < graph_.size(); ++a) {
    for (Index b : ancestors(a)) {
      if (!graph_.has_edge(a, b)) out.emplace_back(graph_.id_at(a), graph_.id_at(b));
    }
  }
  return out;
}

DeductiveClosure deductive_closure(const ConceptGraph &graph) { return DeductiveClosure(graph); }

bool is_subconcept(const DeductiveClosure &closure, const ConceptId &a, const ConceptId &b,
                   Subsumption mode) {
  const auto &g = closure.graph();
  Index ia = g.index_of(a);
  Index ib = g.index_of(b);
  if (ia == ib) return mode == Subsumption::kReflexive;
  return closure.implies(ia, ib);
}

std::vector<InheritedProperty> inherited_properties(const DeductiveClosure &closure,
                                                    const ConceptId &concept_id) {
  const auto &g = closure.graph();
  Index self = g.index_of(concept_id);
  std::vector<InheritedProperty> out;
  auto collect = [&](Index source) {
    for (std::size_t k : g.properties_of(source)) {
      out.push_back({g.properties()[k], g.id_at(source)});
    }
  };
  collect(self);
  for (Index a : closure.ancestors(self)) collect(a);
  std::sort(out.begin(), out.end(), [](const InheritedProperty &x, const InheritedProperty &y) {
    return x.assertion < y.assertion;
  });
  return out;
}

PairSample unrelated_pairs(const DeductiveClosure &closure, std::size_t k,
                           std::size_t min_distance, std::uint64_t seed) {
  const auto &g = closure.graph();
  const std::size_t n = g.size();
  const std::vector<Index> order = label_order(g);
  std::mt19937_64 rng(seed);

  PairSample sample;
  std::vector<std::pair<Index, Index>> reservoir;
  reservoir.reserve(std::min<std::size_t>(k, 1 << 16));

  constexpr std::size_t kFar = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kFar);
  std::vector<Index> touched;
  for (Index a : order) {
    // Hop distances from a, explored only as deep as the threshold needs.
    for (Index t : touched) dist[t] = kFar;
    touched.assign(1, a);
    dist[a] = 0;
    for (std::size_t head = 0; head < touched.size(); ++head) {
      Index u = touched[head];
      if (dist[u] + 1 >= min_distance) continue;
      auto visit = [&](Index v) {
        if (dist[v] == kFar) {
          dist[v] = dist[u] + 1;
          touched.push_back(v);
        }
      };
      for (Index v : g.parents(u)) visit(v);
      for (Index v : g.children(u)) visit(v);
    }

    for (Index b : order) {
      if (a == b || closure.related(a, b) || g.is_same_as(a, b)) continue;
      if (dist[b] != kFar && dist[b] < min_distance) continue;
      const std::size_t seen = sample.candidates++;
      if (k == 0) continue;
      if (reservoir.size() < k) {
        reservoir.emplace_back(a, b);
      } else if (std::uint64_t j = uniform_below(rng, seen + 1); j < k) {
        reservoir[j] = {a, b};
      }
    }
  }

  std::sort(reservoir.begin(), reservoir.end(), [&](const auto &x, const auto &y) {
    return std::tie(g.label_at(x.first), g.label_at(x.second)) <
           std::tie(g.label_at(y.first), g.label_at(y.second));
  });
  for (const auto &[a, b] : reservoir) sample.pairs.emplace_back(g.id_at(a), g.id_at(b));
  sample.insufficient = sample.pairs.size() < k;
  return sample;
}

std::vector<ConceptPath> implied_paths(const ConceptGraph &graph, std::size_t min_len) {
  if (min_len < 2) throw Error(ErrorCode::kInvalidArgument, "min_len must be at least 2");
  std::vector<std::vector<Index>> found;
  std::vector<Index> path;
  auto extend = [&](auto &self, Index node) -> void {
    path.push_back(node);
    if (path.size() - 1 >= min_len) found.push_back(path);
    for (Index p : graph.parents(node)) self(self, p);
    path.pop_back();
  };
  for (Index i = 0; i < graph.size(); ++i) extend(extend, i);

  std::sort(found.begin(), found.end(), [&](const auto &x, const auto &y) {
    return std::lexicographical_compare(
        x.begin(), x.end(), y.begin(), y.end(),
        [&](Index a, Index b) { return graph.label_at(a) < graph.label_at(b); });
  });
  std::vector<ConceptPath> out;
  out.reserve(found.size());
  for (const auto &p : found) {
    ConceptPath ids;
    for (Index i : p) ids.push_back(graph.id_at(i));
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace ckg
