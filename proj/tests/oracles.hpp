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

// Brute-force reference implementations and random inputs for the tests.
// Nothing here shares code with the library.

#ifndef CONCEPTKG_TESTS_ORACLES_HPP_
#define CONCEPTKG_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "conceptkg/graph.hpp"
#include "conceptkg/oracle.hpp"

namespace ckg_test {

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string &name) { return std::string(CKG_DATA_DIR) + "/" + name; }

inline std::string node_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "c%03d", i);
  return buf;
}

// A random DAG over nodes 0..n-1; ids sort in node order, so graph index i
// is node i. parents[i] lists direct parents.
struct RandomDag {
  int n = 0;
  std::vector<std::vector<int>> parents;
  std::vector<std::pair<int, int>> same_as;
  std::vector<std::tuple<int, std::string, std::string>> properties;

  ckg::ConceptGraph build() const {
    std::vector<ckg::Concept> cs;
    for (int i = 0; i < n; ++i) cs.push_back({ckg::ConceptId(node_id(i)), "concept " + node_id(i), {}});
    std::vector<ckg::SubConceptEdge> es;
    for (int c = 0; c < n; ++c)
      for (int p : parents[c]) es.push_back({ckg::ConceptId(node_id(c)), ckg::ConceptId(node_id(p))});
    std::vector<ckg::PropertyAssertion> ps;
    for (const auto &[s, prop, v] : properties) ps.push_back({ckg::ConceptId(node_id(s)), prop, v});
    std::vector<ckg::SameAsPair> sa;
    for (auto [a, b] : same_as)
      sa.emplace_back(ckg::ConceptId(node_id(std::min(a, b))), ckg::ConceptId(node_id(std::max(a, b))));
    return ckg::build_graph(cs, es, ps, sa);
  }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto &p : parents) e += p.size();
    return e;
  }
};

// Edges point from a node to one that comes later in a random permutation,
// so the result is acyclic regardless of id order.
inline RandomDag random_dag(std::mt19937_64 &rng, int n, double edge_p, int properties = 0,
                            int same_as = 0) {
  RandomDag d;
  d.n = n;
  d.parents.assign(n, {});
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(edge_p);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) d.parents[order[a]].push_back(order[b]);
  std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
  for (int k = 0; k < properties && n > 0; ++k)
    d.properties.emplace_back(pick(rng), "prop " + std::to_string(k % 3), "value " + std::to_string(k));
  for (int k = 0; k < same_as && n > 1; ++k) {
    int a = pick(rng), b = pick(rng);
    if (a != b) d.same_as.emplace_back(a, b);
  }
  return d;
}

// reach[a][b]: b is reachable from a over one or more parent steps.
inline std::vector<std::vector<bool>> brute_reach(const std::vector<std::vector<int>> &parents) {
  const int n = static_cast<int>(parents.size());
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::vector<int> stack(parents[s].begin(), parents[s].end());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (reach[s][v]) continue;
      reach[s][v] = true;
      for (int p : parents[v]) stack.push_back(p);
    }
  }
  return reach;
}

// Every directed path with at least min_len edges, as node lists.
inline std::vector<std::vector<int>> brute_paths(const std::vector<std::vector<int>> &parents,
                                                 std::size_t min_len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto dfs = [&](auto &&self, int v) -> void {
    cur.push_back(v);
    if (cur.size() - 1 >= min_len) out.push_back(cur);
    for (int p : parents[v]) self(self, p);
    cur.pop_back();
  };
  for (int s = 0; s < static_cast<int>(parents.size()); ++s) dfs(dfs, s);
  return out;
}

// Undirected hop distances from s; max() when unreachable.
inline std::vector<std::size_t> brute_hops(const std::vector<std::vector<int>> &parents, int s) {
  const int n = static_cast<int>(parents.size());
  std::vector<std::vector<int>> adj(n);
  for (int c = 0; c < n; ++c)
    for (int p : parents[c]) {
      adj[c].push_back(p);
      adj[p].push_back(c);
    }
  std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
  std::deque<int> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (dist[w] == std::numeric_limits<std::size_t>::max()) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

// Direct parents by graph index.
inline std::vector<std::vector<int>> graph_parents(const ckg::ConceptGraph &g) {
  std::vector<std::vector<int>> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto p : g.parents(i)) out[i].push_back(static_cast<int>(p));
  return out;
}

// Closed-form cluster counts from the topology, computed by brute force.
struct ExpectedCounts {
  std::size_t positive = 0, inverse = 0, negative_pool = 0, path_pairs = 0, paths = 0, property = 0;
};

inline ExpectedCounts expected_counts(const std::vector<std::vector<int>> &parents, const ckg::ConceptGraph &g,
                                      std::size_t min_distance) {
  const int n = static_cast<int>(parents.size());
  const auto reach = brute_reach(parents);
  ExpectedCounts e;
  for (int c = 0; c < n; ++c)
    for (int p : parents[c]) {
      ++e.positive;
      e.inverse += g.is_same_as(c, p) ? 0 : 1;
    }
  for (int a = 0; a < n; ++a) {
    const auto hops = brute_hops(parents, a);
    for (int b = 0; b < n; ++b) {
      if (a == b || reach[a][b] || reach[b][a] || g.is_same_as(a, b) || hops[b] < min_distance) continue;
      ++e.negative_pool;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (reach[a][b] && !g.has_edge(a, b)) ++e.path_pairs;
  // path level: every witness of a strictly implied (non-adjacent) pair
  for (const auto &path : brute_paths(parents, 2))
    if (!g.has_edge(path.front(), path.back())) ++e.paths;
  for (const auto &p : g.properties()) {
    const int s = static_cast<int>(g.index_of(p.subject));
    for (int c = 0; c < n; ++c) e.property += reach[c][s] ? 1 : 0;
  }
  return e;
}

// Backend driven by a callback returning the raw answer text.
class FnBackend : public ckg::Backend {
 public:
  using Fn = std::function<std::string(const ckg::PromptTemplate &, std::string_view)>;

  FnBackend(std::string id, Fn fn, std::size_t concurrency = 1)
      : id_(std::move(id)), fn_(std::move(fn)), concurrency_(concurrency) {}

  const std::string &id() const override { return id_; }
  std::size_t concurrency() const override { return concurrency_; }
  ckg::BackendAnswer ask(const ckg::PromptTemplate &prompt, std::string_view question) override {
    return {ckg::normalize_answer(fn_(prompt, question)), false, {}};
  }

 private:
  std::string id_;
  Fn fn_;
  std::size_t concurrency_;
};

}  // namespace ckg_test

#endif  // CONCEPTKG_TESTS_ORACLES_HPP_
