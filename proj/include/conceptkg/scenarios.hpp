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

#ifndef CONCEPTKG_SCENARIOS_HPP_
#define CONCEPTKG_SCENARIOS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "conceptkg/closure.hpp"
#include "conceptkg/evaluation.hpp"
#include "conceptkg/oracle.hpp"

namespace ckg {

// kGrant: only the anchor and its subconcepts may do the thing.
// kRestriction: the anchor and its subconcepts may not.
enum class Polarity { kGrant, kRestriction };

std::string_view polarity_name(Polarity p);
Polarity parse_polarity(std::string_view name);

inline constexpr std::string_view kSpecialistSlot = "{specialist}";

struct PolicyScenario {
  std::string id;
  std::string policy_text;
  ConceptId anchor;
  Polarity polarity = Polarity::kGrant;
  std::string applicability_template;
  std::string policy_question_template;

  friend bool operator==(const PolicyScenario &, const PolicyScenario &) = default;
};

// JSON array of {id, policy, anchor, polarity, applicability_question,
// policy_question}. Each template must contain {specialist} exactly once.
// Throws kSchemaViolation.
std::vector<PolicyScenario> read_scenarios(std::string_view text);
std::vector<PolicyScenario> read_scenarios_file(const std::string &path);
std::string write_scenarios(const std::vector<PolicyScenario> &scenarios);

enum class ScenarioQuestionKind { kApplicability, kPolicy };

// Applicability questions always use grant semantics.
YesNo expected_answer(const DeductiveClosure &closure, const PolicyScenario &scenario,
                      const ConceptId &specialist,
                      ScenarioQuestionKind kind = ScenarioQuestionKind::kPolicy);

struct ScenarioQuestion {
  std::string scenario_id;
  std::size_t index = 0;
  ScenarioQuestionKind kind = ScenarioQuestionKind::kApplicability;
  ConceptId specialist;
  std::string question;  // policy text followed by the filled template
  YesNo expected = YesNo::kYes;

  friend bool operator==(const ScenarioQuestion &, const ScenarioQuestion &) = default;
};

std::string fill_template(std::string_view tmpl, std::string_view specialist);

// All applicability questions first, then all policy questions, each in the
// order of `specialists`. Throws kUnknownConcept.
std::vector<ScenarioQuestion> gen_scenario_questions(const DeductiveClosure &closure,
                                                     const PolicyScenario &scenario,
                                                     const std::vector<ConceptId> &specialists);

TruthTable scenario_truth(const DeductiveClosure &closure,
                          const std::vector<PolicyScenario> &scenarios,
                          const std::vector<ConceptId> &specialists);

struct ScenarioAnswer {
  ScenarioQuestion question;
  std::string raw;
  Normalized normalized = Normalized::kOther;
  bool correct = false;
  bool error = false;

  friend bool operator==(const ScenarioAnswer &, const ScenarioAnswer &) = default;
};

struct ScenarioResult {
  std::string scenario_id;
  std::vector<ScenarioAnswer> answers;
  Verdict verdict = Verdict::kConsistent;

  friend bool operator==(const ScenarioResult &, const ScenarioResult &) = default;
};

struct ScenarioSummary {
  std::string backend_id;
  std::size_t answers = 0;
  std::size_t incorrect = 0;
  std::size_t scenarios = 0;  // Incomplete scenarios excluded
  std::size_t inconsistent = 0;
  std::size_t incomplete = 0;

  Percent pct_incorrect_individual() const { return {std::int64_t(incorrect), std::int64_t(answers)}; }
  Percent pct_inconsistent_scenarios() const {
    return {std::int64_t(inconsistent), std::int64_t(scenarios)};
  }
};

ScenarioSummary summarize_scenarios(std::string backend_id,
                                    const std::vector<ScenarioResult> &results);

struct ScenarioEvaluation {
  std::string backend_id;
  std::string prompt_fingerprint;
  std::string graph_fingerprint;
  std::vector<ScenarioResult> results;
  ScenarioSummary summary;

  friend bool operator==(const ScenarioEvaluation &a, const ScenarioEvaluation &b) {
    return a.backend_id == b.backend_id && a.prompt_fingerprint == b.prompt_fingerprint &&
           a.graph_fingerprint == b.graph_fingerprint && a.results == b.results;
  }
};

ScenarioEvaluation evaluate_scenarios(const DeductiveClosure &closure,
                                      const std::vector<PolicyScenario> &scenarios,
                                      const std::vector<ConceptId> &specialists, Backend &backend,
                                      const PromptTemplate &prompt);

// Header line then one answer per line. Summary and verdicts are recomputed.
std::string write_scenario_results(const ScenarioEvaluation &evaluation);
ScenarioEvaluation read_scenario_results(std::string_view text);

}  // namespace ckg

#endif  // CONCEPTKG_SCENARIOS_HPP_
