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

#ifndef CONCEPTKG_EVALUATION_HPP_
#define CONCEPTKG_EVALUATION_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conceptkg/clusters.hpp"
#include "conceptkg/oracle.hpp"

namespace ckg {

// Exact percentage num/den * 100, kept as a fraction so that rounding to
// two decimals is exact (half away from zero).
struct Percent {
  std::int64_t num = 0;
  std::int64_t den = 0;

  double value() const { return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / den; }
  std::int64_t hundredths() const;
  double rounded() const { return static_cast<double>(hundredths()) / 100.0; }
  std::string str() const;  // "4.17", "-0.50", "0.00"
};

struct AnswerRecord {
  std::string cluster_id;
  std::size_t question_index = 0;
  std::string question;
  std::string raw;
  Normalized normalized = Normalized::kOther;
  bool correct = false;
  bool error = false;

  friend bool operator==(const AnswerRecord &, const AnswerRecord &) = default;
};

enum class Verdict { kConsistent, kInconsistent, kIncomplete };

std::string_view verdict_name(Verdict v);

struct ClusterVerdict {
  std::string cluster_id;
  Verdict verdict = Verdict::kConsistent;

  friend bool operator==(const ClusterVerdict &, const ClusterVerdict &) = default;
};

struct ResultSet {
  std::string backend_id;
  std::string prompt_fingerprint;
  std::string context_fingerprint;  // empty without context
  std::string dataset_fingerprint;
  std::string graph_fingerprint;
  std::vector<AnswerRecord> records;    // dataset order
  std::vector<ClusterVerdict> verdicts;  // dataset order

  std::size_t error_count() const;

  friend bool operator==(const ResultSet &, const ResultSet &) = default;
};

// Hash of the serialized dataset; binds result files to their dataset.
std::string dataset_fingerprint(const ClusterDataset &dataset);

// Asks every question once, using up to backend.concurrency() threads.
// Answers come back in input order. Exceptions from the backend are recorded
// as errored Other answers.
std::vector<BackendAnswer> answer_all(Backend &backend, const PromptTemplate &prompt,
                                      std::span<const std::string> questions);

// All correct -> Consistent, none correct -> Incomplete, else Inconsistent.
// Throws kInvalidArgument on an empty cluster.
Verdict classify_cluster(std::span<const AnswerRecord> records);

struct ContextBlock;

ResultSet evaluate_dataset(const ClusterDataset &dataset, Backend &backend,
                           const PromptTemplate &prompt, const ContextBlock *context = nullptr);

struct Tally {
  std::size_t consistent = 0;
  std::size_t inconsistent = 0;
  std::size_t incomplete = 0;

  std::size_t total() const { return consistent + inconsistent + incomplete; }
  void add(Verdict v);
  friend bool operator==(const Tally &, const Tally &) = default;
};

// One row of the cluster tables. Edge columns aggregate the positive,
// inverse and negative edge clusters.
struct ReportRow {
  std::string backend_id;
  std::array<Tally, 5> by_type{};  // indexed like kAllClusterTypes
  Tally edges;
  Tally paths;
  Tally property;
  Tally all;

  Percent pct_incomplete_edges() const { return {std::int64_t(edges.incomplete), std::int64_t(edges.total())}; }
  Percent pct_inconsistent_edges() const { return {std::int64_t(edges.inconsistent), std::int64_t(edges.total())}; }
  Percent pct_inconsistent_paths() const { return {std::int64_t(paths.inconsistent), std::int64_t(paths.total())}; }
  Percent pct_inconsistent_property() const {
    return {std::int64_t(property.inconsistent), std::int64_t(property.total())};
  }
  // Every cluster that is not Consistent (mixed or fully missed) over all
  // clusters; this is the quantity the published "% all incons." column and
  // its improvement column are computed from.
  Percent pct_all_inconsistent() const {
    return {std::int64_t(all.inconsistent + all.incomplete), std::int64_t(all.total())};
  }
};

// Pure fold over (cluster type, verdict) pairs.
ReportRow report_from_verdicts(std::string backend_id,
                               std::span<const std::pair<ClusterType, Verdict>> verdicts);

// Throws kMismatchedDataset when the result set does not cover the dataset.
ReportRow compute_report(const ResultSet &results, const ClusterDataset &dataset);

// baseline.pct_all_inconsistent - augmented.pct_all_inconsistent, exact.
// Throws kDenominatorMismatch.
Percent improvement(const ReportRow &baseline, const ReportRow &augmented);

struct QuestionRef {
  std::string cluster_id;
  std::size_t question_index = 0;

  friend bool operator==(const QuestionRef &, const QuestionRef &) = default;
};

struct ContextEntry {
  std::string statement;
  std::vector<QuestionRef> missed;  // the questions this statement answers

  friend bool operator==(const ContextEntry &, const ContextEntry &) = default;
};

struct ContextBlock {
  std::vector<ContextEntry> entries;  // dataset order, deduplicated
  std::vector<std::string> backends;  // whose joint misses produced it
  std::string dataset_fingerprint;

  std::vector<std::string> statements() const;
  bool empty() const { return entries.empty(); }

  friend bool operator==(const ContextBlock &, const ContextBlock &) = default;
};

// kQuestion: statements of questions every backend answered incorrectly.
// kCluster: all statements of clusters no backend answered consistently.
enum class ContextGranularity { kQuestion, kCluster };

// Throws kMismatchedDataset when a result set belongs to another dataset.
ContextBlock build_context(std::span<const ResultSet> results, const ClusterDataset &dataset,
                           ContextGranularity granularity = ContextGranularity::kQuestion);

// Results file: first line {"kind":"header",...}, then one record per line.
std::string write_results(const ResultSet &results);
// Verdicts are recomputed from the records. Throws kSchemaViolation.
ResultSet read_results(std::string_view text);
ResultSet read_results_file(const std::string &path);
void write_results_file(const ResultSet &results, const std::string &path);

// {"backends":[..],"dataset_fingerprint":..,"entries":[{"missed":[{"cluster_id","index"}],
//  "statement"}],"fingerprint":..}
std::string write_context(const ContextBlock &context);
ContextBlock read_context(std::string_view text);

}  // namespace ckg

#endif  // CONCEPTKG_EVALUATION_HPP_
