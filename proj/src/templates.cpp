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

#include "conceptkg/templates.hpp"

#include <map>
#include <optional>

#include "conceptkg/error.hpp"
#include "conceptkg/graph.hpp"

namespace ckg {

namespace {

// Slots: {a1} {a2} articles; {A} {B} {C} {prop} {v} terms.
struct Pattern {
  QuestionForm form;
  std::string_view question;
  std::string_view statement;
};

// Match priority: the specific phrasings first so that "type of" and "also"
// are never swallowed by the generic is-a slot.
constexpr Pattern kPatterns[] = {
    {QuestionForm::kTypeOf, "is {a1} {A} a type of {B} ?", "{a1} {A} is a type of {B}"},
    {QuestionForm::kAlso, "is {a1} {A} also {a2} {B} ?", "{a1} {A} is also {a2} {B}"},
    {QuestionForm::kEvery, "is every {A} {a2} {B} ?", "every {A} is {a2} {B}"},
    {QuestionForm::kPropertyOf, "is the {prop} of {a1} {C} {v} ?", "the {prop} of {a1} {C} is {v}"},
    {QuestionForm::kValueIs, "is {v} the {prop} of {a1} {C} ?", "{v} is the {prop} of {a1} {C}"},
    {QuestionForm::kIsA, "is {a1} {A} {a2} {B} ?", "{a1} {A} is {a2} {B}"},
};

const Pattern &pattern_for(QuestionForm form) {
  for (const auto &p : kPatterns) {
    if (p.form == form) return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown question form");
}

using Bindings = std::map<std::string, std::string, std::less<>>;

std::string article(std::string_view noun, ArticleMode mode) {
  if (mode == ArticleMode::kGrammatical && !noun.empty() &&
      std::string_view("aeiou").find(noun.front()) != std::string_view::npos) {
    return "an";
  }
  return "a";
}

std::string fill(std::string_view pattern, const Bindings &b) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern[i] == '{') {
      auto close = pattern.find('}', i);
      out += b.at(std::string(pattern.substr(i + 1, close - i - 1)));
      i = close + 1;
    } else {
      out.push_back(pattern[i++]);
    }
  }
  return out;
}

bool is_article_slot(std::string_view name) { return name == "a1" || name == "a2"; }

// Enumerates every way `text` fills `pattern`.
void match(std::string_view pattern, std::string_view text, Bindings &current,
           std::vector<Bindings> &found) {
  if (pattern.empty()) {
    if (text.empty()) found.push_back(current);
    return;
  }
  if (pattern.front() != '{') {
    auto lit_end = pattern.find('{');
    std::string_view lit = pattern.substr(0, lit_end);
    if (text.substr(0, lit.size()) != lit) return;
    match(pattern.substr(lit.size()), text.substr(lit.size()), current, found);
    return;
  }
  auto close = pattern.find('}');
  std::string name(pattern.substr(1, close - 1));
  std::string_view rest = pattern.substr(close + 1);
  for (std::size_t len = 1; len <= text.size(); ++len) {
    std::string_view value = text.substr(0, len);
    if (value.front() == ' ' || value.back() == ' ') continue;
    if (is_article_slot(name) && value != "a" && value != "an") continue;
    current[name] = std::string(value);
    match(rest, text.substr(len), current, found);
  }
  current.erase(name);
}

bool in_lexicon(const Bindings &b, const Lexicon &lexicon) {
  if (lexicon.empty()) return true;
  for (const auto &[name, value] : b) {
    if (!is_article_slot(name) && !lexicon.terms.contains(value)) return false;
  }
  return true;
}

std::string canonical_question(std::string_view question) {
  std::string q = normalize_label(question);
  if (!q.empty() && q.back() == '?' && (q.size() < 2 || q[q.size() - 2] != ' ')) {
    q.insert(q.size() - 1, " ");
  }
  return q;
}

}  // namespace

std::string_view article_mode_name(ArticleMode mode) {
  return mode == ArticleMode::kPaper ? "paper" : "grammatical";
}

ArticleMode parse_article_mode(std::string_view name) {
  if (name == "paper") return ArticleMode::kPaper;
  if (name == "grammatical") return ArticleMode::kGrammatical;
  throw Error(ErrorCode::kInvalidArgument, "unknown article mode '" + std::string(name) + "'");
}

QuestionStatement render_subsumption(QuestionForm form, std::string_view subject,
                                     std::string_view object, ArticleMode mode) {
  if (form == QuestionForm::kPropertyOf || form == QuestionForm::kValueIs) {
    throw Error(ErrorCode::kInvalidArgument, "not a subsumption form");
  }
  const Pattern &p = pattern_for(form);
  Bindings b{{"A", std::string(subject)},
             {"B", std::string(object)},
             {"a1", article(subject, mode)},
             {"a2", article(object, mode)}};
  return {fill(p.question, b), fill(p.statement, b)};
}

QuestionStatement render_property(QuestionForm form, std::string_view property,
                                  std::string_view subject, std::string_view value,
                                  ArticleMode mode) {
  if (form != QuestionForm::kPropertyOf && form != QuestionForm::kValueIs) {
    throw Error(ErrorCode::kInvalidArgument, "not a property form");
  }
  const Pattern &p = pattern_for(form);
  Bindings b{{"prop", std::string(property)},
             {"C", std::string(subject)},
             {"v", std::string(value)},
             {"a1", article(subject, mode)}};
  return {fill(p.question, b), fill(p.statement, b)};
}

std::string question_to_statement(std::string_view question, const Lexicon &lexicon) {
  const std::string q = canonical_question(question);
  for (const auto &p : kPatterns) {
    std::vector<Bindings> found;
    Bindings scratch;
    match(p.question, q, scratch, found);
    std::optional<std::string> statement;
    bool ambiguous = false;
    for (const auto &b : found) {
      if (!in_lexicon(b, lexicon)) continue;
      std::string s = fill(p.statement, b);
      if (statement && *statement != s) ambiguous = true;
      statement = std::move(s);
    }
    if (ambiguous) {
      throw Error(ErrorCode::kUnknownTemplate,
                  "slot boundaries are ambiguous in '" + q + "'; supply a lexicon");
    }
    if (statement) return *statement;
  }
  throw Error(ErrorCode::kUnknownTemplate, "'" + q + "' does not match any question template");
}

}  // namespace ckg
