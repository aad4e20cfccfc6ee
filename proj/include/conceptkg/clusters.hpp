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

#ifndef CONCEPTKG_CLUSTERS_HPP_
#define CONCEPTKG_CLUSTERS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conceptkg/closure.hpp"
#include "conceptkg/templates.hpp"

namespace ckg {

enum class ClusterType { kPositiveEdge, kInverseEdge, kNegativeEdge, kPath, kPropertyInheritance };

inline constexpr ClusterType kAllClusterTypes[] = {
    ClusterType::kPositiveEdge, ClusterType::kInverseEdge, ClusterType::kNegativeEdge,
    ClusterType::kPath, ClusterType::kPropertyInheritance};

std::string_view cluster_type_name(ClusterType type);
// Throws kInvalidArgument.
ClusterType parse_cluster_type(std::string_view name);
bool is_edge_type(ClusterType type);

enum class YesNo { kYes, kNo };

std::string_view yes_no_name(YesNo answer);
YesNo expected_for(ClusterType type);

struct QuestionCluster {
  std::string id;
  ClusterType type = ClusterType::kPositiveEdge;
  YesNo expected = YesNo::kYes;
  ConceptId source;
  ConceptId target;
  std::optional<ConceptPath> path;  // witness, path clusters only
  std::vector<std::string> questions;
  std::vector<std::string> statements;  // parallel to questions

  friend bool operator==(const QuestionCluster &, const QuestionCluster &) = default;
};

// kPair emits one path cluster per strictly-implied (source, target) pair
// with the first witness in label order; kPath emits one per witnessing path.
enum class PathGranularity { kPair, kPath };

std::string_view path_granularity_name(PathGranularity g);
PathGranularity parse_path_granularity(std::string_view name);

struct GenerationConfig {
  std::uint64_t seed = 1;
  std::size_t negative_count = 66;
  std::size_t min_distance = 2;
  std::size_t min_path_len = 2;
  ArticleMode article_mode = ArticleMode::kPaper;
  PathGranularity path_granularity = PathGranularity::kPair;
  std::string template_version = std::string(kTemplateVersion);

  friend bool operator==(const GenerationConfig &, const GenerationConfig &) = default;
};

inline constexpr std::string_view kDatasetVersion = "1";

struct ClusterDataset {
  std::string version = std::string(kDatasetVersion);
  std::string graph_fingerprint;
  GenerationConfig config;
  std::vector<QuestionCluster> clusters;

  std::size_t question_count() const;
  std::size_t count(ClusterType type) const;

  friend bool operator==(const ClusterDataset &, const ClusterDataset &) = default;
};

// Concept, property and value labels of the graph.
Lexicon graph_lexicon(const ConceptGraph &graph);

std::vector<QuestionCluster> gen_positive_edge_clusters(const DeductiveClosure &closure,
                                                        ArticleMode mode = ArticleMode::kPaper);

// Edges whose endpoints are linked by same-as are skipped.
std::vector<QuestionCluster> gen_inverse_edge_clusters(const DeductiveClosure &closure,
                                                       ArticleMode mode = ArticleMode::kPaper);

struct NegativeClusters {
  std::vector<QuestionCluster> clusters;
  std::size_t available = 0;
  bool insufficient = false;  // graph could not supply `count` pairs
};

NegativeClusters gen_negative_edge_clusters(const DeductiveClosure &closure, std::size_t count,
                                            std::size_t min_distance, std::uint64_t seed,
                                            ArticleMode mode = ArticleMode::kPaper);

std::vector<QuestionCluster> gen_path_clusters(
    const DeductiveClosure &closure, std::size_t min_len,
    PathGranularity granularity = PathGranularity::kPair, ArticleMode mode = ArticleMode::kPaper);

// One cluster per (assertion on P, strict descendant C of P):
//   is the {prop} of a {P} {v} ?  /  is a {C} a {P} ?  /
//   is the {prop} of a {C} {v} ?  /  is {v} the {prop} of a {C} ?
std::vector<QuestionCluster> gen_property_clusters(const DeductiveClosure &closure,
                                                   ArticleMode mode = ArticleMode::kPaper);

struct GeneratedDataset {
  ClusterDataset dataset;
  std::vector<std::string> warnings;
};

// All five types, in type order. Pure function of (graph, config).
GeneratedDataset generate_dataset(const DeductiveClosure &closure, const GenerationConfig &config);

}  // namespace ckg

#endif  // CONCEPTKG_CLUSTERS_HPP_
