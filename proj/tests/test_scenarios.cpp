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

#include <map>
#include <set>

#include "conceptkg/closure.hpp"
#include "conceptkg/error.hpp"
#include "conceptkg/graph_io.hpp"
#include "conceptkg/scenarios.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ckg;
using ckg_test::FnBackend;

namespace {

std::vector<ConceptId> ids(std::initializer_list<const char *> raw) {
  std::vector<ConceptId> out;
  for (const char *r : raw) out.emplace_back(r);
  return out;
}

const std::vector<ConceptId> kSpecialists =
    ids({"Q3332438", "Q9100001", "Q9100002", "Q9100003", "Q9100004", "Q9100005", "Q9100006"});

DeductiveClosure medical() { return DeductiveClosure(read_graph_file(ckg_test::data_path("medical.graph.json"))); }

std::vector<PolicyScenario> bundled() { return read_scenarios_file(ckg_test::data_path("scenarios.json")); }

}  // namespace

TEST_CASE("bundled scenarios") {
  const auto s = bundled();
  REQUIRE(s.size() == 10);
  CHECK(s[0].anchor.str() == "Q9100003");
  CHECK(s[0].polarity == Polarity::kGrant);
  CHECK(s[0].policy_text == "Only pediatric surgeons can perform surgery on patients younger than 18 years old.");
  CHECK(s[1].anchor.str() == "Q9100001");
  CHECK(s[1].polarity == Polarity::kRestriction);
  CHECK(read_scenarios(write_scenarios(s)) == s);
}

TEST_CASE("scenario files are validated") {
  const std::string ok =
      R"({"id":"a","policy":"P.","anchor":"Q1","polarity":"grant","applicability_question":"Q {specialist}?","policy_question":"R {specialist}?"})";
  CHECK(read_scenarios("[" + ok + "]").size() == 1);
  CHECK_THROWS_AS(read_scenarios("[" + ok + "," + ok + "]"), Error);
  auto with = [&](const std::string &from, const std::string &to) {
    std::string s = ok;
    s.replace(s.find(from), from.size(), to);
    return "[" + s + "]";
  };
  CHECK_THROWS_AS(read_scenarios(with("\"grant\"", "\"maybe\"")), Error);
  CHECK_THROWS_AS(read_scenarios(with("Q {specialist}?", "Q?")), Error);
  CHECK_THROWS_AS(read_scenarios(with("R {specialist}?", "R {specialist} {specialist}?")), Error);
  CHECK_THROWS_AS(read_scenarios(with("\"anchor\":\"Q1\",", "")), Error);
  CHECK_THROWS_AS(read_scenarios("{}"), Error);
}

TEST_CASE("expected answers follow reflexive subsumption under the anchor") {
  const auto cl = medical();
  for (const auto &s : bundled()) {
    for (const auto &sp : kSpecialists) {
      const auto &g = cl.graph();
      const bool in = sp == s.anchor || cl.implies(g.index_of(sp), g.index_of(s.anchor));
      const YesNo app = expected_answer(cl, s, sp, ScenarioQuestionKind::kApplicability);
      const YesNo pol = expected_answer(cl, s, sp);
      CHECK(app == (in ? YesNo::kYes : YesNo::kNo));
      if (s.polarity == Polarity::kGrant)
        CHECK(pol == app);
      else
        CHECK(pol == (in ? YesNo::kNo : YesNo::kYes));
    }
  }
  // Worked cases for the two verbatim policies.
  const auto s = bundled();
  CHECK(expected_answer(cl, s[0], ConceptId("Q9100006")) == YesNo::kYes);
  CHECK(expected_answer(cl, s[0], ConceptId("Q9100001")) == YesNo::kNo);
  CHECK(expected_answer(cl, s[0], ConceptId("Q9100002")) == YesNo::kNo);
  CHECK(expected_answer(cl, s[1], ConceptId("Q9100004")) == YesNo::kNo);
  CHECK(expected_answer(cl, s[1], ConceptId("Q9100002")) == YesNo::kYes);
  CHECK(expected_answer(cl, s[1], ConceptId("Q3332438")) == YesNo::kYes);
  CHECK(expected_answer(cl, s[1], ConceptId("Q9100001"), ScenarioQuestionKind::kApplicability) == YesNo::kYes);
}

TEST_CASE("question generation") {
  const auto cl = medical();
  const auto s = bundled();
  const auto qs = gen_scenario_questions(cl, s[0], kSpecialists);
  REQUIRE(qs.size() == 14);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    CHECK(qs[i].index == i);
    CHECK(qs[i].scenario_id == "s01");
    CHECK(qs[i].kind == (i < 7 ? ScenarioQuestionKind::kApplicability : ScenarioQuestionKind::kPolicy));
    CHECK(qs[i].specialist == kSpecialists[i % 7]);
    CHECK(qs[i].question.rfind(s[0].policy_text + " ", 0) == 0);
  }
  CHECK(qs[3].question == s[0].policy_text + " Does the policy apply to every pediatric surgeon?");
  CHECK(qs[3].expected == YesNo::kYes);
  CHECK(fill_template("a {specialist} b", "x y") == "a x y b");
  CHECK_THROWS_AS(gen_scenario_questions(cl, s[0], ids({"Q404"})), Error);
}

TEST_CASE("perfect oracle gets every scenario right") {
  const auto cl = medical();
  const auto s = bundled();
  PerfectOracle o("perfect", scenario_truth(cl, s, kSpecialists));
  const auto ev = evaluate_scenarios(cl, s, kSpecialists, o, default_prompt());
  CHECK(ev.summary.answers == 140);
  CHECK(ev.summary.incorrect == 0);
  CHECK(ev.summary.scenarios == 10);
  CHECK(ev.summary.pct_incorrect_individual().str() == "0.00");
  CHECK(ev.summary.pct_inconsistent_scenarios().str() == "0.00");
}

TEST_CASE("summary matches a hand count") {
  const auto cl = medical();
  const auto s = bundled();
  std::map<std::string, YesNo> truth;
  std::map<std::string, std::string> owner;
  for (const auto &sc : s)
    for (const auto &q : gen_scenario_questions(cl, sc, kSpecialists)) {
      truth[q.question] = q.expected;
      owner[q.question] = sc.id;
    }
  const std::string s03_first = gen_scenario_questions(cl, s[2], kSpecialists)[0].question;
  // s02 entirely wrong, one wrong answer in s03, the rest right.
  FnBackend b("mixed", [&](const PromptTemplate &, std::string_view q) {
    const std::string k(q);
    bool flip = owner.at(k) == "s02" || k == s03_first;
    const bool yes = (truth.at(k) == YesNo::kYes) != flip;
    return std::string(yes ? "Yes." : "No.");
  });
  const auto ev = evaluate_scenarios(cl, s, kSpecialists, b, default_prompt());
  CHECK(ev.results[1].verdict == Verdict::kIncomplete);
  CHECK(ev.results[2].verdict == Verdict::kInconsistent);
  CHECK(ev.results[0].verdict == Verdict::kConsistent);
  CHECK(ev.summary.answers == 140);
  CHECK(ev.summary.incorrect == 15);
  CHECK(ev.summary.incomplete == 1);
  CHECK(ev.summary.scenarios == 9);
  CHECK(ev.summary.inconsistent == 1);
  CHECK(ev.summary.pct_incorrect_individual().str() == "10.71");
  CHECK(ev.summary.pct_inconsistent_scenarios().str() == "11.11");

  const std::string text = write_scenario_results(ev);
  const auto back = read_scenario_results(text);
  CHECK(back == ev);
  CHECK(back.summary.incorrect == 15);
  CHECK(write_scenario_results(back) == text);
  CHECK_THROWS_AS(read_scenario_results("nonsense"), Error);
}
