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

#include "conceptkg/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

#include "conceptkg/dataset_io.hpp"
#include "conceptkg/hash.hpp"
#include "json_util.hpp"

namespace ckg {

using detail::json;

std::int64_t Percent::hundredths() const {
  if (den == 0) return 0;
  const std::int64_t d = den < 0 ? -den : den;
  const std::int64_t n = den < 0 ? -num : num;
  const std::int64_t a = (n < 0 ? -n : n) * 10000;
  const std::int64_t q = (2 * a + d) / (2 * d);
  return n < 0 ? -q : q;
}

std::string Percent::str() const {
  const std::int64_t h = hundredths();
  const std::int64_t a = h < 0 ? -h : h;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", h < 0 ? "-" : "", static_cast<long long>(a / 100),
                static_cast<long long>(a % 100));
  return buf;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "Consistent";
    case Verdict::kInconsistent: return "Inconsistent";
    case Verdict::kIncomplete: return "Incomplete";
  }
  return "?";
}

std::size_t ResultSet::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const AnswerRecord &r) { return r.error; }));
}

std::string dataset_fingerprint(const ClusterDataset &dataset) {
  return fnv1a_hex(write_dataset(dataset));
}

std::vector<BackendAnswer> answer_all(Backend &backend, const PromptTemplate &prompt,
                                      std::span<const std::string> questions) {
  std::vector<BackendAnswer> out(questions.size());
  auto ask_one = [&](std::size_t i) {
    try {
      out[i] = backend.ask(prompt, questions[i]);
    } catch (const std::exception &e) {
      out[i] = BackendAnswer{NormalizedAnswer{Normalized::kOther, ""}, true, e.what()};
    }
  };
  const std::size_t workers = std::min(std::max<std::size_t>(backend.concurrency(), 1), questions.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < questions.size(); ++i) ask_one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < questions.size(); i = next++) ask_one(i);
    });
  }
  for (auto &t : pool) t.join();
  return out;
}

Verdict classify_cluster(std::span<const AnswerRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot classify an empty cluster");
  std::size_t right = 0;
  for (const auto &r : records) right += r.correct ? 1 : 0;
  if (right == records.size()) return Verdict::kConsistent;
  if (right == 0) return Verdict::kIncomplete;
  return Verdict::kInconsistent;
}

namespace {

bool is_correct(Normalized n, YesNo expected) {
  return (n == Normalized::kYes && expected == YesNo::kYes) ||
         (n == Normalized::kNo && expected == YesNo::kNo);
}

// Groups consecutive records by cluster id.
std::vector<ClusterVerdict> verdicts_of(const std::vector<AnswerRecord> &records) {
  std::vector<ClusterVerdict> out;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    while (j < records.size() && records[j].cluster_id == records[i].cluster_id) ++j;
    out.push_back({records[i].cluster_id,
                   classify_cluster(std::span<const AnswerRecord>(records.data() + i, j - i))});
    i = j;
  }
  return out;
}

std::size_t type_index(ClusterType t) { return static_cast<std::size_t>(t); }

}  // namespace

ResultSet evaluate_dataset(const ClusterDataset &dataset, Backend &backend,
                           const PromptTemplate &prompt, const ContextBlock *context) {
  PromptTemplate effective = prompt;
  if (context != nullptr) {
    if (!context->dataset_fingerprint.empty() &&
        context->dataset_fingerprint != dataset_fingerprint(dataset))
      throw Error(ErrorCode::kMismatchedDataset, "context block was built for another dataset");
    effective = prompt.with_context(context->statements());
  }

  std::vector<std::string> questions;
  questions.reserve(dataset.question_count());
  for (const auto &c : dataset.clusters)
    for (const auto &q : c.questions) questions.push_back(q);

  const auto answers = answer_all(backend, effective, questions);

  ResultSet rs;
  rs.backend_id = backend.id();
  rs.prompt_fingerprint = effective.fingerprint();
  rs.context_fingerprint = effective.context_fingerprint();
  rs.dataset_fingerprint = dataset_fingerprint(dataset);
  rs.graph_fingerprint = dataset.graph_fingerprint;
  rs.records.reserve(questions.size());
  std::size_t k = 0;
  for (const auto &c : dataset.clusters) {
    for (std::size_t i = 0; i < c.questions.size(); ++i, ++k) {
      const BackendAnswer &a = answers[k];
      rs.records.push_back(AnswerRecord{c.id, i, c.questions[i], a.answer.raw, a.answer.value,
                                        is_correct(a.answer.value, c.expected), a.error});
    }
  }
  rs.verdicts = verdicts_of(rs.records);
  return rs;
}

void Tally::add(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: ++consistent; break;
    case Verdict::kInconsistent: ++inconsistent; break;
    case Verdict::kIncomplete: ++incomplete; break;
  }
}

ReportRow report_from_verdicts(std::string backend_id,
                               std::span<const std::pair<ClusterType, Verdict>> verdicts) {
  ReportRow row;
  row.backend_id = std::move(backend_id);
  for (const auto &[type, v] : verdicts) {
    row.by_type[type_index(type)].add(v);
    if (is_edge_type(type)) row.edges.add(v);
    else if (type == ClusterType::kPath) row.paths.add(v);
    else row.property.add(v);
    row.all.add(v);
  }
  return row;
}

ReportRow compute_report(const ResultSet &results, const ClusterDataset &dataset) {
  if (!results.dataset_fingerprint.empty() &&
      results.dataset_fingerprint != dataset_fingerprint(dataset))
    throw Error(ErrorCode::kMismatchedDataset,
                "results of '" + results.backend_id + "' belong to another dataset");
  if (results.verdicts.size() != dataset.clusters.size())
    throw Error(ErrorCode::kMismatchedDataset,
                "results of '" + results.backend_id + "' cover " +
                    std::to_string(results.verdicts.size()) + " clusters, dataset has " +
                    std::to_string(dataset.clusters.size()));
  std::vector<std::pair<ClusterType, Verdict>> typed;
  typed.reserve(dataset.clusters.size());
  for (std::size_t i = 0; i < dataset.clusters.size(); ++i) {
    if (results.verdicts[i].cluster_id != dataset.clusters[i].id)
      throw Error(ErrorCode::kMismatchedDataset,
                  "cluster " + std::to_string(i) + " is '" + results.verdicts[i].cluster_id +
                      "' in results but '" + dataset.clusters[i].id + "' in the dataset");
    typed.emplace_back(dataset.clusters[i].type, results.verdicts[i].verdict);
  }
  return report_from_verdicts(results.backend_id, typed);
}

Percent improvement(const ReportRow &baseline, const ReportRow &augmented) {
  const Percent b = baseline.pct_all_inconsistent();
  const Percent a = augmented.pct_all_inconsistent();
  if (a.den != b.den)
    throw Error(ErrorCode::kDenominatorMismatch,
                "baseline has " + std::to_string(b.den) + " clusters, augmented run has " +
                    std::to_string(a.den));
  return Percent{b.num - a.num, b.den};
}

std::vector<std::string> ContextBlock::statements() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto &e : entries) out.push_back(e.statement);
  return out;
}

ContextBlock build_context(std::span<const ResultSet> results, const ClusterDataset &dataset,
                           ContextGranularity granularity) {
  const std::string fp = dataset_fingerprint(dataset);
  const std::size_t nq = dataset.question_count();
  for (const auto &rs : results) {
    if ((!rs.dataset_fingerprint.empty() && rs.dataset_fingerprint != fp) ||
        rs.records.size() != nq)
      throw Error(ErrorCode::kMismatchedDataset,
                  "results of '" + rs.backend_id + "' do not match the dataset");
  }

  ContextBlock block;
  block.dataset_fingerprint = fp;
  for (const auto &rs : results) block.backends.push_back(rs.backend_id);
  if (results.empty()) return block;

  std::unordered_map<std::string, std::size_t> seen;
  auto emit = [&](const std::string &statement, QuestionRef ref) {
    auto [it, fresh] = seen.emplace(statement, block.entries.size());
    if (fresh) block.entries.push_back({statement, {}});
    block.entries[it->second].missed.push_back(std::move(ref));
  };

  std::size_t k = 0;
  for (std::size_t ci = 0; ci < dataset.clusters.size(); ++ci) {
    const QuestionCluster &c = dataset.clusters[ci];
    bool cluster_missed = true;
    if (granularity == ContextGranularity::kCluster) {
      for (const auto &rs : results) {
        if (rs.verdicts.size() != dataset.clusters.size())
          throw Error(ErrorCode::kMismatchedDataset,
                      "results of '" + rs.backend_id + "' do not match the dataset");
        if (rs.verdicts[ci].verdict == Verdict::kConsistent) cluster_missed = false;
      }
    }
    for (std::size_t i = 0; i < c.questions.size(); ++i, ++k) {
      bool take = false;
      if (granularity == ContextGranularity::kQuestion) {
        take = std::all_of(results.begin(), results.end(),
                           [&](const ResultSet &rs) { return !rs.records[k].correct; });
      } else {
        take = cluster_missed;
      }
      if (take) emit(c.statements[i], QuestionRef{c.id, i});
    }
  }
  return block;
}

// ---- serialization ----

namespace {

constexpr std::string_view kResultsFormat = "ckg-results/1";

json record_json(const AnswerRecord &r) {
  json j = {{"cluster_id", r.cluster_id}, {"index", r.question_index}, {"question", r.question},
            {"raw", r.raw}, {"normalized", normalized_name(r.normalized)}, {"correct", r.correct}};
  if (r.error) j["error"] = true;
  return j;
}

const json &require_kind(const json &j, std::string_view key, json::value_t type,
                         const std::string &locus, const char *what) {
  const json &v = detail::require(j, key, locus);
  if (v.type() != type && !(type == json::value_t::number_unsigned && v.is_number_unsigned()))
    detail::schema_error(detail::child_path(locus, key), std::string("expected ") + what);
  return v;
}

}  // namespace

std::string write_results(const ResultSet &results) {
  json header = {{"kind", "header"},
                 {"format", kResultsFormat},
                 {"backend", results.backend_id},
                 {"prompt_fingerprint", results.prompt_fingerprint},
                 {"context_fingerprint", results.context_fingerprint},
                 {"dataset_fingerprint", results.dataset_fingerprint},
                 {"graph_fingerprint", results.graph_fingerprint}};
  std::string out = header.dump() + "\n";
  for (const auto &r : results.records) out += record_json(r).dump() + "\n";
  return out;
}

ResultSet read_results(std::string_view text) {
  ResultSet rs;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string locus = "line " + std::to_string(line_no) + " $";
    json j = detail::parse_or_schema_error(line, locus);
    if (!have_header) {
      if (detail::require_string(j, "kind", locus) != "header")
        detail::schema_error(locus, "first record must be the header");
      if (detail::require_string(j, "format", locus) != kResultsFormat)
        detail::schema_error(detail::child_path(locus, "format"), "unsupported results format");
      rs.backend_id = detail::require_string(j, "backend", locus);
      rs.prompt_fingerprint = detail::require_string(j, "prompt_fingerprint", locus);
      rs.context_fingerprint = detail::require_string(j, "context_fingerprint", locus);
      rs.dataset_fingerprint = detail::require_string(j, "dataset_fingerprint", locus);
      rs.graph_fingerprint = detail::require_string(j, "graph_fingerprint", locus);
      have_header = true;
      continue;
    }
    AnswerRecord r;
    r.cluster_id = detail::require_string(j, "cluster_id", locus);
    r.question_index =
        require_kind(j, "index", json::value_t::number_unsigned, locus, "a non-negative integer")
            .get<std::size_t>();
    r.question = detail::require_string(j, "question", locus);
    r.raw = detail::require_string(j, "raw", locus);
    try {
      r.normalized = parse_normalized(detail::require_string(j, "normalized", locus));
    } catch (const Error &) {
      detail::schema_error(detail::child_path(locus, "normalized"), "expected yes, no or other");
    }
    r.correct = require_kind(j, "correct", json::value_t::boolean, locus, "a boolean").get<bool>();
    if (j.contains("error"))
      r.error = require_kind(j, "error", json::value_t::boolean, locus, "a boolean").get<bool>();
    rs.records.push_back(std::move(r));
  }
  if (!have_header) detail::schema_error("$", "missing header record");
  rs.verdicts = verdicts_of(rs.records);
  return rs;
}

ResultSet read_results_file(const std::string &path) { return read_results(detail::read_file(path)); }

void write_results_file(const ResultSet &results, const std::string &path) {
  detail::write_file_atomic(path, write_results(results));
}

std::string write_context(const ContextBlock &context) {
  json entries = json::array();
  for (const auto &e : context.entries) {
    json missed = json::array();
    for (const auto &m : e.missed) missed.push_back({{"cluster_id", m.cluster_id}, {"index", m.question_index}});
    entries.push_back({{"statement", e.statement}, {"missed", std::move(missed)}});
  }
  PromptTemplate p;
  p.context_block = context.statements();
  json j = {{"backends", context.backends},
            {"dataset_fingerprint", context.dataset_fingerprint},
            {"fingerprint", p.context_fingerprint()},
            {"entries", std::move(entries)}};
  return j.dump(2) + "\n";
}

ContextBlock read_context(std::string_view text) {
  const json j = detail::parse_or_schema_error(text, "$");
  ContextBlock b;
  b.backends = detail::string_list(detail::require_array(j, "backends", "$"), "$.backends");
  b.dataset_fingerprint = detail::require_string(j, "dataset_fingerprint", "$");
  const json &entries = detail::require_array(j, "entries", "$");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string locus = detail::child_path("$.entries", i);
    ContextEntry e;
    e.statement = detail::require_string(entries[i], "statement", locus);
    const json &missed = detail::require_array(entries[i], "missed", locus);
    for (std::size_t m = 0; m < missed.size(); ++m) {
      const std::string ml = detail::child_path(detail::child_path(locus, "missed"), m);
      e.missed.push_back(QuestionRef{
          detail::require_string(missed[m], "cluster_id", ml),
          require_kind(missed[m], "index", json::value_t::number_unsigned, ml, "a non-negative integer")
              .get<std::size_t>()});
    }
    b.entries.push_back(std::move(e));
  }
  return b;
}

}  // namespace ckg
