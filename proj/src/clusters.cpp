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

#include "conceptkg/clusters.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "conceptkg/error.hpp"

namespace ckg {

namespace {

using Index = ConceptGraph::Index;

std::string slug(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out;
}

QuestionCluster subsumption_cluster(std::string id, ClusterType type, const ConceptGraph &g,
                                    Index source, Index target, ArticleMode mode,
                                    const Lexicon &lexicon) {
  QuestionCluster c;
  c.id = std::move(id);
  c.type = type;
  c.expected = expected_for(type);
  c.source = g.id_at(source);
  c.target = g.id_at(target);
  for (QuestionForm form : kSubsumptionForms) {
    auto qs = render_subsumption(form, g.label_at(source), g.label_at(target), mode);
    c.questions.push_back(qs.question);
    c.statements.push_back(question_to_statement(qs.question, lexicon));
  }
  return c;
}

std::string pair_id(std::string_view prefix, const ConceptId &a, const ConceptId &b) {
  return std::string(prefix) + "/" + a.str() + "/" + b.str();
}

// Direct edges in (child label, parent label) order.
std::vector<std::pair<Index, Index>> labelled_edges(const ConceptGraph &g) {
  std::vector<std::pair<Index, Index>> edges;
  for (Index c = 0; c < g.size(); ++c) {
    for (Index p : g.parents(c)) edges.emplace_back(c, p);
  }
  std::sort(edges.begin(), edges.end(), [&](const auto &x, const auto &y) {
    return std::tie(g.label_at(x.first), g.label_at(x.second)) <
           std::tie(g.label_at(y.first), g.label_at(y.second));
  });
  return edges;
}

}  // namespace

std::string_view cluster_type_name(ClusterType type) {
  switch (type) {
    case ClusterType::kPositiveEdge: return "positive_edge";
    case ClusterType::kInverseEdge: return "inverse_edge";
    case ClusterType::kNegativeEdge: return "negative_edge";
    case ClusterType::kPath: return "path";
    case ClusterType::kPropertyInheritance: return "property_inheritance";
  }
  return "positive_edge";
}

ClusterType parse_cluster_type(std::string_view name) {
  for (ClusterType t : kAllClusterTypes) {
    if (cluster_type_name(t) == name) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown cluster type '" + std::string(name) + "'");
}

bool is_edge_type(ClusterType type) {
  return type == ClusterType::kPositiveEdge || type == ClusterType::kInverseEdge ||
         type == ClusterType::kNegativeEdge;
}

std::string_view yes_no_name(YesNo answer) { return answer == YesNo::kYes ? "yes" : "no"; }

YesNo expected_for(ClusterType type) {
  return type == ClusterType::kInverseEdge || type == ClusterType::kNegativeEdge ? YesNo::kNo
                                                                                 : YesNo::kYes;
}

std::string_view path_granularity_name(PathGranularity g) {
  return g == PathGranularity::kPair ? "pair" : "path";
}

PathGranularity parse_path_granularity(std::string_view name) {
  if (name == "pair") return PathGranularity::kPair;
  if (name == "path") return PathGranularity::kPath;
  throw Error(ErrorCode::kInvalidArgument, "unknown path granularity '" + std::string(name) + "'");
}

std::size_t ClusterDataset::question_count() const {
  return std::accumulate(clusters.begin(), clusters.end(), std::size_t{0},
                         [](std::size_t n, const QuestionCluster &c) { return n + c.questions.size(); });
}

std::size_t ClusterDataset::count(ClusterType type) const {
  return static_cast<std::size_t>(std::count_if(
      clusters.begin(), clusters.end(), [&](const QuestionCluster &c) { return c.type == type; }));
}

Lexicon graph_lexicon(const ConceptGraph &graph) {
  Lexicon lex;
  for (const auto &c : graph.concepts()) lex.terms.insert(c.label);
  for (const auto &p : graph.properties()) {
    lex.terms.insert(p.property_label);
    lex.terms.insert(p.value_label);
  }
  return lex;
}

std::vector<QuestionCluster> gen_positive_edge_clusters(const DeductiveClosure &closure,
                                                        ArticleMode mode) {
  const auto &g = closure.graph();
  const Lexicon lexicon = graph_lexicon(g);
  std::vector<QuestionCluster> out;
  for (const auto &[child, parent] : labelled_edges(g)) {
    out.push_back(subsumption_cluster(pair_id("pos", g.id_at(child), g.id_at(parent)),
                                      ClusterType::kPositiveEdge, g, child, parent, mode, lexicon));
  }
  return out;
}

std::vector<QuestionCluster> gen_inverse_edge_clusters(const DeductiveClosure &closure,
                                                       ArticleMode mode) {
  const auto &g = closure.graph();
  const Lexicon lexicon = graph_lexicon(g);
  std::vector<QuestionCluster> out;
  for (const auto &[child, parent] : labelled_edges(g)) {
    if (g.is_same_as(child, parent)) continue;
    out.push_back(subsumption_cluster(pair_id("inv", g.id_at(parent), g.id_at(child)),
                                      ClusterType::kInverseEdge, g, parent, child, mode, lexicon));
  }
  return out;
}

NegativeClusters gen_negative_edge_clusters(const DeductiveClosure &closure, std::size_t count,
                                            std::size_t min_distance, std::uint64_t seed,
                                            ArticleMode mode) {
  const auto &g = closure.graph();
  const Lexicon lexicon = graph_lexicon(g);
  NegativeClusters out;
  PairSample sample = unrelated_pairs(closure, count, min_distance, seed);
  out.available = sample.candidates;
  out.insufficient = sample.insufficient;
  for (const auto &[a, b] : sample.pairs) {
    out.clusters.push_back(subsumption_cluster(pair_id("neg", a, b), ClusterType::kNegativeEdge, g,
                                               g.index_of(a), g.index_of(b), mode, lexicon));
  }
  return out;
}

std::vector<QuestionCluster> gen_path_clusters(const DeductiveClosure &closure, std::size_t min_len,
                                               PathGranularity granularity, ArticleMode mode) {
  const auto &g = closure.graph();
  const Lexicon lexicon = graph_lexicon(g);
  std::vector<QuestionCluster> out;
  std::set<std::pair<Index, Index>> seen;
  for (const ConceptPath &path : implied_paths(g, min_len)) {
    Index source = g.index_of(path.front());
    Index target = g.index_of(path.back());
    if (!closure.strictly_implied(source, target)) continue;
    std::string id;
    if (granularity == PathGranularity::kPair) {
      if (!seen.emplace(source, target).second) continue;
      id = pair_id("path", path.front(), path.back());
    } else {
      id = "path";
      for (const auto &step : path) id += "/" + step.str();
    }
    QuestionCluster c =
        subsumption_cluster(std::move(id), ClusterType::kPath, g, source, target, mode, lexicon);
    c.path = path;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<QuestionCluster> gen_property_clusters(const DeductiveClosure &closure,
                                                   ArticleMode mode) {
  const auto &g = closure.graph();
  const Lexicon lexicon = graph_lexicon(g);
  std::vector<QuestionCluster> out;
  for (const auto &assertion : g.properties()) {
    const Index owner = g.index_of(assertion.subject);
    std::vector<Index> descendants = closure.descendants(owner);
    std::sort(descendants.begin(), descendants.end(),
              [&](Index a, Index b) { return g.label_at(a) < g.label_at(b); });
    for (Index d : descendants) {
      QuestionCluster c;
      c.id = "prop/" + g.id_at(d).str() + "/" + assertion.subject.str() + "/" +
             slug(assertion.property_label) + "/" + slug(assertion.value_label);
      c.type = ClusterType::kPropertyInheritance;
      c.expected = YesNo::kYes;
      c.source = g.id_at(d);
      c.target = assertion.subject;
      const QuestionStatement parts[] = {
          render_property(QuestionForm::kPropertyOf, assertion.property_label,
                          g.label_at(owner), assertion.value_label, mode),
          render_subsumption(QuestionForm::kIsA, g.label_at(d), g.label_at(owner), mode),
          render_property(QuestionForm::kPropertyOf, assertion.property_label, g.label_at(d),
                          assertion.value_label, mode),
          render_property(QuestionForm::kValueIs, assertion.property_label, g.label_at(d),
                          assertion.value_label, mode),
      };
      for (const auto &qs : parts) {
        c.questions.push_back(qs.question);
        c.statements.push_back(question_to_statement(qs.question, lexicon));
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

GeneratedDataset generate_dataset(const DeductiveClosure &closure, const GenerationConfig &config) {
  GeneratedDataset out;
  ClusterDataset &ds = out.dataset;
  ds.graph_fingerprint = closure.graph_fingerprint();
  ds.config = config;
  ds.config.template_version = std::string(kTemplateVersion);

  auto append = [&](std::vector<QuestionCluster> clusters) {
    for (auto &c : clusters) ds.clusters.push_back(std::move(c));
  };
  append(gen_positive_edge_clusters(closure, config.article_mode));
  append(gen_inverse_edge_clusters(closure, config.article_mode));
  NegativeClusters neg = gen_negative_edge_clusters(closure, config.negative_count,
                                                    config.min_distance, config.seed,
                                                    config.article_mode);
  if (neg.insufficient) {
    out.warnings.push_back("InsufficientPairs: requested " + std::to_string(config.negative_count) +
                           " negative edge clusters, graph admits " +
                           std::to_string(neg.available));
  }
  append(std::move(neg.clusters));
  append(gen_path_clusters(closure, config.min_path_len, config.path_granularity,
                           config.article_mode));
  append(gen_property_clusters(closure, config.article_mode));
  return out;
}

}  // namespace ckg
