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

#ifndef CONCEPTKG_TEMPLATES_HPP_
#define CONCEPTKG_TEMPLATES_HPP_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ckg {

inline constexpr std::string_view kTemplateVersion = "1";

// kPaper writes "a" before every noun ("a orthopedic pediatric surgeon"),
// which is how the reference dataset reads; kGrammatical picks a/an.
enum class ArticleMode { kPaper, kGrammatical };

std::string_view article_mode_name(ArticleMode mode);
ArticleMode parse_article_mode(std::string_view name);

enum class QuestionForm {
  kIsA,         // is a {A} a {B} ?
  kTypeOf,      // is a {A} a type of {B} ?
  kEvery,       // is every {A} a {B} ?
  kAlso,        // is a {A} also a {B} ?
  kPropertyOf,  // is the {prop} of a {C} {v} ?
  kValueIs,     // is {v} the {prop} of a {C} ?
};

// The four subsumption phrasings, in dataset order.
inline constexpr QuestionForm kSubsumptionForms[] = {QuestionForm::kIsA, QuestionForm::kTypeOf,
                                                     QuestionForm::kEvery, QuestionForm::kAlso};

struct QuestionStatement {
  std::string question;
  std::string statement;
};

// Subsumption forms: `subject` is A, `object` is B.
QuestionStatement render_subsumption(QuestionForm form, std::string_view subject,
                                     std::string_view object, ArticleMode mode);
// Property forms: `subject` is C.
QuestionStatement render_property(QuestionForm form, std::string_view property,
                                  std::string_view subject, std::string_view value,
                                  ArticleMode mode);

// Known vocabulary used to disambiguate slot boundaries. Empty means any
// non-empty text may fill a slot.
struct Lexicon {
  std::set<std::string> terms;
  bool empty() const { return terms.empty(); }
};

// Declarative form of a templated question, by matching it against the
// template set and re-rendering the paired statement pattern:
//   "is every X a Y ?" -> "every X is a Y".
// Throws kUnknownTemplate when nothing matches, or when slot boundaries stay
// ambiguous after lexicon filtering.
std::string question_to_statement(std::string_view question, const Lexicon &lexicon = {});

}  // namespace ckg

#endif  // CONCEPTKG_TEMPLATES_HPP_
