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

#include <atomic>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "conceptkg/closure.hpp"
#include "conceptkg/clusters.hpp"
#include "conceptkg/error.hpp"
#include "conceptkg/evaluation.hpp"
#include "conceptkg/graph_io.hpp"
#include "conceptkg/oracle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ckg;
using ckg_test::FnBackend;

namespace {

struct Fixture {
  DeductiveClosure closure{read_graph_file(ckg_test::data_path("medical.graph.json"))};
  ClusterDataset dataset;
  std::map<std::string, YesNo> truth;

  Fixture() {
    GenerationConfig cfg;
    cfg.path_granularity = PathGranularity::kPath;
    dataset = generate_dataset(closure, cfg).dataset;
    for (const auto &c : dataset.clusters)
      for (const auto &q : c.questions) truth[q] = c.expected;
  }

  std::string right(std::string_view q) const { return truth.at(std::string(q)) == YesNo::kYes ? "Yes" : "No"; }
  std::string wrong(std::string_view q) const { return truth.at(std::string(q)) == YesNo::kYes ? "No" : "Yes"; }

  // Answers wrongly exactly on the given questions.
  FnBackend missing(std::string id, std::set<std::string> miss) const {
    return FnBackend(std::move(id), [this, miss](const PromptTemplate &, std::string_view q) {
      return miss.count(std::string(q)) ? wrong(q) : right(q);
    });
  }
};

// Independent rounding: |x| * 10000 / den rounded half up, sign restored.
std::int64_t oracle_hundredths(std::int64_t num, std::int64_t den) {
  const bool neg = (num < 0) != (den < 0);
  const std::int64_t n = num < 0 ? -num : num, d = den < 0 ? -den : den;
  const std::int64_t h = (2 * n * 10000 + d) / (2 * d);
  return neg ? -h : h;
}

}  // namespace

TEST_CASE("percent rounding is exact") {
  CHECK(Percent{4, 96}.str() == "4.17");
  CHECK(Percent{1, 800}.str() == "0.13");
  CHECK(Percent{-1, 800}.str() == "-0.13");
  CHECK(Percent{11, 119}.str() == "9.24");
  CHECK(Percent{92, 140}.str() == "65.71");
  CHECK(Percent{10, 10}.str() == "100.00");
  CHECK(Percent{0, 12}.str() == "0.00");
  CHECK(Percent{-1, 2}.str() == "-50.00");
  CHECK(Percent{4, 11}.rounded() == doctest::Approx(36.36).epsilon(1e-12));
  for (std::int64_t den = 1; den <= 240; ++den)
    for (std::int64_t num = -3 * den; num <= 3 * den; ++num) {
      REQUIRE(Percent{num, den}.hundredths() == oracle_hundredths(num, den));
    }
}

TEST_CASE("cluster classification") {
  auto recs = [](std::vector<bool> correct) {
    std::vector<AnswerRecord> out;
    for (bool c : correct) out.push_back({"x", out.size(), "q", "", Normalized::kOther, c, false});
    return out;
  };
  CHECK(classify_cluster(recs({true, true, true, true})) == Verdict::kConsistent);
  CHECK(classify_cluster(recs({false, false, false, false})) == Verdict::kIncomplete);
  CHECK(classify_cluster(recs({true, false, true, true})) == Verdict::kInconsistent);
  CHECK(classify_cluster(recs({false, false, false, true})) == Verdict::kInconsistent);
  CHECK_THROWS_AS(classify_cluster(recs({})), Error);
}

TEST_CASE("tallies partition the clusters") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<ClusterType, Verdict>> v;
    const int n = static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) v.push_back({kAllClusterTypes[rng() % 5], static_cast<Verdict>(rng() % 3)});
    const ReportRow row = report_from_verdicts("b", v);
    REQUIRE(row.all.total() == v.size());
    Tally sum, edges;
    for (int t = 0; t < 5; ++t) {
      Tally expect;
      for (const auto &[type, verdict] : v)
        if (type == kAllClusterTypes[t]) expect.add(verdict);
      CHECK(row.by_type[t] == expect);
      sum.consistent += expect.consistent;
      sum.inconsistent += expect.inconsistent;
      sum.incomplete += expect.incomplete;
      if (t < 3) {
        edges.consistent += expect.consistent;
        edges.inconsistent += expect.inconsistent;
        edges.incomplete += expect.incomplete;
      }
    }
    CHECK(row.all == sum);
    CHECK(row.edges == edges);
    CHECK(row.paths == row.by_type[3]);
    CHECK(row.property == row.by_type[4]);
    CHECK(row.pct_all_inconsistent().num == static_cast<std::int64_t>(sum.inconsistent + sum.incomplete));
  }
}

TEST_CASE("perfect oracle scores zero everywhere") {
  Fixture f;
  auto o = perfect_oracle(f.closure, f.dataset);
  const ResultSet rs = evaluate_dataset(f.dataset, *o, default_prompt());
  CHECK(rs.records.size() == f.dataset.question_count());
  CHECK(rs.error_count() == 0);
  const ReportRow row = compute_report(rs, f.dataset);
  CHECK(row.all.consistent == f.dataset.clusters.size());
  CHECK(row.pct_incomplete_edges().str() == "0.00");
  CHECK(row.pct_inconsistent_edges().den == 96);
  CHECK(row.pct_inconsistent_paths().den == 12);
  CHECK(row.pct_inconsistent_property().den == 11);
  CHECK(row.pct_all_inconsistent().den == 119);
  CHECK(row.pct_all_inconsistent().num == 0);
}

TEST_CASE("verdicts follow the records") {
  Fixture f;
  std::set<std::string> miss;
  std::mt19937_64 rng(17);
  for (const auto &[q, _] : f.truth)
    if (rng() % 5 == 0) miss.insert(q);
  auto b = f.missing("m", miss);
  const ResultSet rs = evaluate_dataset(f.dataset, b, default_prompt());
  std::size_t k = 0;
  for (std::size_t ci = 0; ci < f.dataset.clusters.size(); ++ci) {
    const auto &c = f.dataset.clusters[ci];
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < c.questions.size(); ++i, ++k) {
      const auto &r = rs.records[k];
      CHECK(r.cluster_id == c.id);
      CHECK(r.question_index == i);
      CHECK(r.question == c.questions[i]);
      CHECK(r.correct == !miss.count(c.questions[i]));
      wrong += miss.count(c.questions[i]);
    }
    const Verdict expect = wrong == 0 ? Verdict::kConsistent
                           : wrong == c.questions.size() ? Verdict::kIncomplete
                                                         : Verdict::kInconsistent;
    CHECK(rs.verdicts[ci] == ClusterVerdict{c.id, expect});
  }
}

TEST_CASE("Other answers are never correct") {
  Fixture f;
  FnBackend b("shrug", [](const PromptTemplate &, std::string_view) { return std::string("Perhaps."); });
  const ResultSet rs = evaluate_dataset(f.dataset, b, default_prompt());
  for (const auto &r : rs.records) {
    CHECK_FALSE(r.correct);
    CHECK(r.normalized == Normalized::kOther);
  }
  CHECK(compute_report(rs, f.dataset).all.incomplete == f.dataset.clusters.size());
}

TEST_CASE("report refuses results from another dataset") {
  Fixture f;
  auto o = perfect_oracle(f.closure, f.dataset);
  ResultSet rs = evaluate_dataset(f.dataset, *o, default_prompt());
  auto expect_mismatch = [&](const ResultSet &bad) {
    try {
      compute_report(bad, f.dataset);
      FAIL("expected a mismatch");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kMismatchedDataset);
    }
  };
  ResultSet a = rs;
  a.dataset_fingerprint = "ffffffffffffffff";
  expect_mismatch(a);
  ResultSet b = rs;
  b.verdicts.pop_back();
  expect_mismatch(b);
  ResultSet c = rs;
  c.verdicts[3].cluster_id = "pos/nope";
  expect_mismatch(c);
}

TEST_CASE("improvement is an exact difference") {
  std::vector<std::pair<ClusterType, Verdict>> base, aug;
  for (int i = 0; i < 119; ++i) {
    base.push_back({ClusterType::kPositiveEdge, i < 49 ? Verdict::kInconsistent : Verdict::kConsistent});
    aug.push_back({ClusterType::kPositiveEdge, i < 17 ? Verdict::kIncomplete : Verdict::kConsistent});
  }
  const Percent imp = improvement(report_from_verdicts("b", base), report_from_verdicts("a", aug));
  CHECK(imp.num == 32);
  CHECK(imp.den == 119);
  CHECK(imp.str() == "26.89");
  const Percent back = improvement(report_from_verdicts("a", aug), report_from_verdicts("b", base));
  CHECK(back.str() == "-26.89");
  aug.pop_back();
  try {
    improvement(report_from_verdicts("b", base), report_from_verdicts("a", aug));
    FAIL("expected a denominator mismatch");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kDenominatorMismatch);
  }
}

TEST_CASE("question-level context is exactly the jointly missed statements") {
  Fixture f;
  std::mt19937_64 rng(23);
  std::vector<std::string> questions;
  for (const auto &c : f.dataset.clusters)
    for (const auto &q : c.questions) questions.push_back(q);
  for (int trial = 0; trial < 10; ++trial) {
    std::set<std::string> m1, m2;
    for (const auto &q : questions) {
      if (rng() % 3 == 0) m1.insert(q);
      if (rng() % 3 == 0) m2.insert(q);
    }
    auto b1 = f.missing("one", m1);
    auto b2 = f.missing("two", m2);
    const std::vector<ResultSet> rs = {evaluate_dataset(f.dataset, b1, default_prompt()),
                                       evaluate_dataset(f.dataset, b2, default_prompt())};
    const ContextBlock ctx = build_context(rs, f.dataset);
    std::vector<std::string> expect;
    std::set<std::string> seen;
    for (const auto &c : f.dataset.clusters)
      for (std::size_t i = 0; i < c.questions.size(); ++i)
        if (m1.count(c.questions[i]) && m2.count(c.questions[i]) && seen.insert(c.statements[i]).second)
          expect.push_back(c.statements[i]);
    CHECK(ctx.statements() == expect);
    CHECK(ctx.backends == std::vector<std::string>{"one", "two"});
    std::size_t refs = 0;
    for (const auto &e : ctx.entries) refs += e.missed.size();
    std::size_t joint = 0;
    for (const auto &q : questions) joint += m1.count(q) && m2.count(q);
    CHECK(refs == joint);
  }
}

TEST_CASE("cluster-level context takes whole clusters nobody got right") {
  Fixture f;
  const auto &c0 = f.dataset.clusters[0];
  const auto &c5 = f.dataset.clusters[5];
  auto b1 = f.missing("one", {c0.questions[0], c5.questions[1]});
  auto b2 = f.missing("two", {c0.questions[2]});
  const std::vector<ResultSet> rs = {evaluate_dataset(f.dataset, b1, default_prompt()),
                                     evaluate_dataset(f.dataset, b2, default_prompt())};
  CHECK(build_context(rs, f.dataset, ContextGranularity::kQuestion).empty());
  const ContextBlock ctx = build_context(rs, f.dataset, ContextGranularity::kCluster);
  std::vector<std::string> expect;
  std::set<std::string> seen;
  for (const auto &s : c0.statements)
    if (seen.insert(s).second) expect.push_back(s);
  CHECK(ctx.statements() == expect);
}

TEST_CASE("evaluation with context inserts the statements into the prompt") {
  Fixture f;
  const auto &c = f.dataset.clusters[2];
  auto base = f.missing("b", {c.questions[1]});
  const std::vector<ResultSet> rs = {evaluate_dataset(f.dataset, base, default_prompt())};
  const ContextBlock ctx = build_context(rs, f.dataset);
  REQUIRE(ctx.statements() == std::vector<std::string>{c.statements[1]});
  std::atomic<int> saw{0};
  FnBackend probe("p", [&](const PromptTemplate &p, std::string_view q) {
    const std::string r = p.render(q);
    if (r.find("\n" + c.statements[1] + "\nQ: " + std::string(q) + "\nA:") != std::string::npos) ++saw;
    return f.right(q);
  });
  const ResultSet aug = evaluate_dataset(f.dataset, probe, default_prompt(), &ctx);
  CHECK(saw.load() == static_cast<int>(f.dataset.question_count()));
  CHECK_FALSE(aug.context_fingerprint.empty());
  CHECK(aug.prompt_fingerprint == rs[0].prompt_fingerprint);

  ContextBlock other = ctx;
  other.dataset_fingerprint = "0123456789abcdef";
  CHECK_THROWS_AS(evaluate_dataset(f.dataset, probe, default_prompt(), &other), Error);
}

TEST_CASE("concurrent answers keep dataset order") {
  Fixture f;
  std::atomic<int> inflight{0}, peak{0};
  FnBackend slow(
      "slow",
      [&](const PromptTemplate &, std::string_view q) {
        const int now = ++inflight;
        int p = peak.load();
        while (now > p && !peak.compare_exchange_weak(p, now)) {
        }
        std::this_thread::sleep_for(std::chrono::microseconds(200 + (q.size() % 7) * 150));
        --inflight;
        return f.right(q);
      },
      6);
  const ResultSet rs = evaluate_dataset(f.dataset, slow, default_prompt());
  auto o = perfect_oracle(f.closure, f.dataset);
  const ResultSet ref = evaluate_dataset(f.dataset, *o, default_prompt());
  REQUIRE(rs.records.size() == ref.records.size());
  for (std::size_t i = 0; i < rs.records.size(); ++i) {
    CHECK(rs.records[i].question == ref.records[i].question);
    CHECK(rs.records[i].correct);
  }
  CHECK(peak.load() <= 6);
  CHECK(peak.load() >= 2);
}

TEST_CASE("backend exceptions are recorded as errors") {
  Fixture f;
  const std::string bad = f.dataset.clusters[1].questions[0];
  FnBackend flaky("f", [&](const PromptTemplate &, std::string_view q) {
    if (q == bad) throw std::runtime_error("boom");
    return f.right(q);
  });
  const ResultSet rs = evaluate_dataset(f.dataset, flaky, default_prompt());
  CHECK(rs.error_count() == 1);
  CHECK(rs.records[4].error);
  CHECK_FALSE(rs.records[4].correct);
  CHECK(rs.verdicts[1].verdict == Verdict::kInconsistent);
}

TEST_CASE("result and context files round-trip") {
  Fixture f;
  std::set<std::string> miss;
  for (const auto &c : f.dataset.clusters) miss.insert(c.questions[c.questions.size() - 1]);
  auto b = f.missing("rt", miss);
  ResultSet rs = evaluate_dataset(f.dataset, b, default_prompt());
  rs.records[7].error = true;
  rs.records[7].raw = "line\nbreak \"quoted\"";
  const std::string text = write_results(rs);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(rs.records.size() + 1));
  const ResultSet back = read_results(text);
  CHECK(back == rs);
  CHECK(write_results(back) == text);

  CHECK_THROWS_AS(read_results(""), Error);
  CHECK_THROWS_AS(read_results("{\"kind\":\"header\"}\n"), Error);
  std::string truncated = text.substr(0, text.size() / 2);
  truncated = truncated.substr(0, truncated.rfind('\n')) + "\n{\"cluster_id\":";
  CHECK_THROWS_AS(read_results(truncated), Error);

  const std::vector<ResultSet> v = {rs};
  const ContextBlock ctx = build_context(v, f.dataset);
  CHECK(ctx.entries.size() > 0);
  CHECK(read_context(write_context(ctx)) == ctx);
  CHECK_THROWS_AS(read_context("{\"entries\":3}"), Error);
}
