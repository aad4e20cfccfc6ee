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

#include "conceptkg/scenarios.hpp"

#include "json_util.hpp"

namespace ckg {

using detail::json;

std::string_view polarity_name(Polarity p) {
  return p == Polarity::kGrant ? "grant" : "restriction";
}

Polarity parse_polarity(std::string_view name) {
  if (name == "grant") return Polarity::kGrant;
  if (name == "restriction") return Polarity::kRestriction;
  throw Error(ErrorCode::kInvalidArgument, "unknown polarity '" + std::string(name) + "'");
}

namespace {

std::size_t slot_count(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t p = s.find(kSpecialistSlot); p != std::string_view::npos;
       p = s.find(kSpecialistSlot, p + kSpecialistSlot.size()))
    ++n;
  return n;
}

std::string require_template(const json &j, std::string_view key, const std::string &locus) {
  std::string t = detail::require_string(j, key, locus);
  if (slot_count(t) != 1)
    detail::schema_error(detail::child_path(locus, key), "template must contain {specialist} exactly once");
  return t;
}

}  // namespace

std::vector<PolicyScenario> read_scenarios(std::string_view text) {
  const json j = detail::parse_or_schema_error(text, "$");
  if (!j.is_array()) detail::schema_error("$", "expected an array of scenarios");
  std::vector<PolicyScenario> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string locus = detail::child_path("$", i);
    PolicyScenario s;
    s.id = detail::require_string(j[i], "id", locus);
    s.policy_text = detail::require_string(j[i], "policy", locus);
    s.anchor = ConceptId(detail::require_string(j[i], "anchor", locus));
    try {
      s.polarity = parse_polarity(detail::require_string(j[i], "polarity", locus));
    } catch (const Error &) {
      detail::schema_error(detail::child_path(locus, "polarity"), "expected grant or restriction");
    }
    s.applicability_template = require_template(j[i], "applicability_question", locus);
    s.policy_question_template = require_template(j[i], "policy_question", locus);
    for (const auto &prev : out)
      if (prev.id == s.id) detail::schema_error(detail::child_path(locus, "id"), "duplicate scenario id");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PolicyScenario> read_scenarios_file(const std::string &path) {
  return read_scenarios(detail::read_file(path));
}

std::string write_scenarios(const std::vector<PolicyScenario> &scenarios) {
  json arr = json::array();
  for (const auto &s : scenarios)
    arr.push_back({{"id", s.id},
                   {"policy", s.policy_text},
                   {"anchor", s.anchor.str()},
                   {"polarity", polarity_name(s.polarity)},
                   {"applicability_question", s.applicability_template},
                   {"policy_question", s.policy_question_template}});
  return arr.dump(2) + "\n";
}

YesNo expected_answer(const DeductiveClosure &closure, const PolicyScenario &scenario,
                      const ConceptId &specialist, ScenarioQuestionKind kind) {
  const bool in_scope = is_subconcept(closure, specialist, scenario.anchor, Subsumption::kReflexive);
  if (kind == ScenarioQuestionKind::kApplicability || scenario.polarity == Polarity::kGrant)
    return in_scope ? YesNo::kYes : YesNo::kNo;
  return in_scope ? YesNo::kNo : YesNo::kYes;
}

std::string fill_template(std::string_view tmpl, std::string_view specialist) {
  std::string out(tmpl);
  const auto p = out.find(kSpecialistSlot);
  if (p == std::string::npos)
    throw Error(ErrorCode::kInvalidArgument, "template has no {specialist} slot");
  out.replace(p, kSpecialistSlot.size(), specialist);
  return out;
}

std::vector<ScenarioQuestion> gen_scenario_questions(const DeductiveClosure &closure,
                                                     const PolicyScenario &scenario,
                                                     const std::vector<ConceptId> &specialists) {
  const ConceptGraph &g = closure.graph();
  g.index_of(scenario.anchor);
  std::vector<ScenarioQuestion> out;
  std::size_t index = 0;
  for (auto kind : {ScenarioQuestionKind::kApplicability, ScenarioQuestionKind::kPolicy}) {
    const std::string &tmpl = kind == ScenarioQuestionKind::kApplicability
                                  ? scenario.applicability_template
                                  : scenario.policy_question_template;
    for (const auto &sp : specialists) {
      const std::string &label = g.label_at(g.index_of(sp));
      out.push_back(ScenarioQuestion{scenario.id, index++, kind, sp,
                                     scenario.policy_text + " " + fill_template(tmpl, label),
                                     expected_answer(closure, scenario, sp, kind)});
    }
  }
  return out;
}

TruthTable scenario_truth(const DeductiveClosure &closure,
                          const std::vector<PolicyScenario> &scenarios,
                          const std::vector<ConceptId> &specialists) {
  TruthTable t;
  for (const auto &s : scenarios)
    for (const auto &q : gen_scenario_questions(closure, s, specialists)) t.add(q.question, q.expected);
  return t;
}

namespace {

Verdict scenario_verdict(const std::vector<ScenarioAnswer> &answers) {
  if (answers.empty()) throw Error(ErrorCode::kInvalidArgument, "scenario without questions");
  std::size_t right = 0;
  for (const auto &a : answers) right += a.correct ? 1 : 0;
  if (right == answers.size()) return Verdict::kConsistent;
  return right == 0 ? Verdict::kIncomplete : Verdict::kInconsistent;
}

bool matches(Normalized n, YesNo expected) {
  return (n == Normalized::kYes && expected == YesNo::kYes) ||
         (n == Normalized::kNo && expected == YesNo::kNo);
}

}  // namespace

ScenarioSummary summarize_scenarios(std::string backend_id,
                                    const std::vector<ScenarioResult> &results) {
  ScenarioSummary s;
  s.backend_id = std::move(backend_id);
  for (const auto &r : results) {
    for (const auto &a : r.answers) {
      ++s.answers;
      if (!a.correct) ++s.incorrect;
    }
    if (r.verdict == Verdict::kIncomplete) {
      ++s.incomplete;
      continue;
    }
    ++s.scenarios;
    if (r.verdict == Verdict::kInconsistent) ++s.inconsistent;
  }
  return s;
}

ScenarioEvaluation evaluate_scenarios(const DeductiveClosure &closure,
                                      const std::vector<PolicyScenario> &scenarios,
                                      const std::vector<ConceptId> &specialists, Backend &backend,
                                      const PromptTemplate &prompt) {
  std::vector<ScenarioQuestion> all;
  std::vector<std::size_t> bounds{0};
  for (const auto &s : scenarios) {
    auto qs = gen_scenario_questions(closure, s, specialists);
    all.insert(all.end(), qs.begin(), qs.end());
    bounds.push_back(all.size());
  }
  std::vector<std::string> texts;
  texts.reserve(all.size());
  for (const auto &q : all) texts.push_back(q.question);
  const auto answers = answer_all(backend, prompt, texts);

  ScenarioEvaluation ev;
  ev.backend_id = backend.id();
  ev.prompt_fingerprint = prompt.fingerprint();
  ev.graph_fingerprint = closure.graph_fingerprint();
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    ScenarioResult r;
    r.scenario_id = scenarios[s].id;
    for (std::size_t k = bounds[s]; k < bounds[s + 1]; ++k) {
      const auto &a = answers[k];
      r.answers.push_back(ScenarioAnswer{all[k], a.answer.raw, a.answer.value,
                                         matches(a.answer.value, all[k].expected), a.error});
    }
    r.verdict = scenario_verdict(r.answers);
    ev.results.push_back(std::move(r));
  }
  ev.summary = summarize_scenarios(ev.backend_id, ev.results);
  return ev;
}

namespace {
constexpr std::string_view kScenarioFormat = "ckg-scenario-results/1";
}

std::string write_scenario_results(const ScenarioEvaluation &evaluation) {
  json header = {{"kind", "header"},
                 {"format", kScenarioFormat},
                 {"backend", evaluation.backend_id},
                 {"prompt_fingerprint", evaluation.prompt_fingerprint},
                 {"graph_fingerprint", evaluation.graph_fingerprint}};
  std::string out = header.dump() + "\n";
  for (const auto &r : evaluation.results) {
    for (const auto &a : r.answers) {
      json j = {{"scenario_id", a.question.scenario_id},
                {"index", a.question.index},
                {"kind", a.question.kind == ScenarioQuestionKind::kApplicability ? "applicability" : "policy"},
                {"specialist", a.question.specialist.str()},
                {"question", a.question.question},
                {"expected", yes_no_name(a.question.expected)},
                {"raw", a.raw},
                {"normalized", normalized_name(a.normalized)},
                {"correct", a.correct}};
      if (a.error) j["error"] = true;
      out += j.dump() + "\n";
    }
  }
  return out;
}

ScenarioEvaluation read_scenario_results(std::string_view text) {
  ScenarioEvaluation ev;
  bool have_header = false;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string locus = "line " + std::to_string(line_no) + " $";
    const json j = detail::parse_or_schema_error(line, locus);
    if (!have_header) {
      if (detail::require_string(j, "kind", locus) != "header" ||
          detail::require_string(j, "format", locus) != kScenarioFormat)
        detail::schema_error(locus, "expected a scenario results header");
      ev.backend_id = detail::require_string(j, "backend", locus);
      ev.prompt_fingerprint = detail::require_string(j, "prompt_fingerprint", locus);
      ev.graph_fingerprint = detail::require_string(j, "graph_fingerprint", locus);
      have_header = true;
      continue;
    }
    ScenarioAnswer a;
    a.question.scenario_id = detail::require_string(j, "scenario_id", locus);
    const json &idx = detail::require(j, "index", locus);
    if (!idx.is_number_unsigned()) detail::schema_error(detail::child_path(locus, "index"), "expected an index");
    a.question.index = idx.get<std::size_t>();
    const std::string kind = detail::require_string(j, "kind", locus);
    if (kind != "applicability" && kind != "policy")
      detail::schema_error(detail::child_path(locus, "kind"), "expected applicability or policy");
    a.question.kind = kind == "policy" ? ScenarioQuestionKind::kPolicy : ScenarioQuestionKind::kApplicability;
    a.question.specialist = ConceptId(detail::require_string(j, "specialist", locus));
    a.question.question = detail::require_string(j, "question", locus);
    const std::string expected = detail::require_string(j, "expected", locus);
    if (expected != "yes" && expected != "no")
      detail::schema_error(detail::child_path(locus, "expected"), "expected yes or no");
    a.question.expected = expected == "yes" ? YesNo::kYes : YesNo::kNo;
    a.raw = detail::require_string(j, "raw", locus);
    try {
      a.normalized = parse_normalized(detail::require_string(j, "normalized", locus));
    } catch (const Error &) {
      detail::schema_error(detail::child_path(locus, "normalized"), "expected yes, no or other");
    }
    const json &correct = detail::require(j, "correct", locus);
    if (!correct.is_boolean()) detail::schema_error(detail::child_path(locus, "correct"), "expected a boolean");
    a.correct = correct.get<bool>();
    a.error = j.value("error", false);
    if (ev.results.empty() || ev.results.back().scenario_id != a.question.scenario_id)
      ev.results.push_back(ScenarioResult{a.question.scenario_id, {}, Verdict::kConsistent});
    ev.results.back().answers.push_back(std::move(a));
  }
  if (!have_header) detail::schema_error("$", "missing header record");
  for (auto &r : ev.results) r.verdict = scenario_verdict(r.answers);
  ev.summary = summarize_scenarios(ev.backend_id, ev.results);
  return ev;
}

}  // namespace ckg
