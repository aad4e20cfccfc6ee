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

#include "conceptkg/oracle.hpp"

#include <cctype>
#include <random>

#include "conceptkg/error.hpp"
#include "conceptkg/hash.hpp"
#include "conceptkg/random.hpp"
#include "json_util.hpp"

namespace ckg {

using detail::json;

namespace detail {
std::unique_ptr<Backend> make_remote_backend(const BackendConfig &config);
}  // namespace detail

namespace {

std::string canonical(std::string_view question) { return normalize_label(question); }

YesNo parse_yes_no(const std::string &s, const std::string &locus) {
  if (s == "yes") return YesNo::kYes;
  if (s == "no") return YesNo::kNo;
  detail::schema_error(locus, "expected 'yes' or 'no'");
}

NormalizedAnswer from_truth(YesNo truth) {
  return truth == YesNo::kYes ? NormalizedAnswer{Normalized::kYes, "yes"}
                              : NormalizedAnswer{Normalized::kNo, "no"};
}

BackendAnswer unknown_question(std::string_view question) {
  return {{Normalized::kOther, ""}, false,
          "question not in the oracle's truth table: " + std::string(question)};
}

}  // namespace

std::string PromptTemplate::render_prefix() const {
  std::string out = preamble + "\n\n";
  for (const auto &ex : few_shot) {
    out += "Q: " + ex.question + "\nA: " + std::string(yes_no_name(ex.answer)) + "\n\n";
  }
  for (const auto &line : context_block) out += line + "\n";
  return out;
}

std::string PromptTemplate::render(std::string_view question) const {
  return render_prefix() + "Q: " + std::string(question) + "\nA:";
}

std::string PromptTemplate::fingerprint() const {
  PromptTemplate base = *this;
  base.context_block.clear();
  return fnv1a_hex(base.render_prefix());
}

std::string PromptTemplate::context_fingerprint() const {
  if (context_block.empty()) return {};
  Fnv1a h;
  for (const auto &line : context_block) h.update(line).separator();
  return h.hex();
}

PromptTemplate PromptTemplate::with_context(std::vector<std::string> statements) const {
  PromptTemplate out = *this;
  out.context_block = std::move(statements);
  return out;
}

PromptTemplate default_prompt() {
  PromptTemplate p;
  p.preamble =
      "You are an expert on medical occupations. Answer each question with a single word, "
      "yes or no. Answer yes only if the statement holds for every instance of the concept "
      "asked about; otherwise answer no.";
  const std::pair<const char *, YesNo> examples[] = {
      {"is a neurosurgeon a surgeon ?", YesNo::kYes},
      {"is every surgeon a neurosurgeon ?", YesNo::kNo},
      {"is a radiologist a type of physician ?", YesNo::kYes},
      {"is a dentist a cardiac surgeon ?", YesNo::kNo},
      {"is every oncologist a medical specialist ?", YesNo::kYes},
      {"is a nurse anesthetist a type of neurologist ?", YesNo::kNo},
      {"is a pediatric neurologist also a neurologist ?", YesNo::kYes},
      {"is every neurologist a pediatric neurologist ?", YesNo::kNo},
      {"is the field of occupation of a neurologist neurology ?", YesNo::kYes},
      {"is the field of occupation of a pediatric neurologist neurology ?", YesNo::kYes},
      {"is a radiologist a psychiatrist ?", YesNo::kNo},
  };
  for (const auto &[q, a] : examples) p.few_shot.push_back({q, a});
  return p;
}

PromptTemplate read_prompt(std::string_view text) {
  const json doc = detail::parse_or_schema_error(text, "$");
  PromptTemplate p;
  p.preamble = detail::require_string(doc, "preamble", "$");
  const json &shots = detail::require_array(doc, "few_shot", "$");
  for (std::size_t i = 0; i < shots.size(); ++i) {
    const std::string locus = detail::child_path("$.few_shot", i);
    p.few_shot.push_back({detail::require_string(shots[i], "question", locus),
                          parse_yes_no(detail::require_string(shots[i], "answer", locus),
                                       locus + ".answer")});
  }
  if (auto it = doc.find("context_block"); it != doc.end() && !it->is_null()) {
    p.context_block = detail::string_list(*it, "$.context_block");
  }
  return p;
}

PromptTemplate read_prompt_file(const std::string &path) {
  return read_prompt(detail::read_file(path));
}

std::string write_prompt(const PromptTemplate &prompt) {
  json shots = json::array();
  for (const auto &ex : prompt.few_shot) {
    shots.push_back({{"question", ex.question}, {"answer", yes_no_name(ex.answer)}});
  }
  json doc = {{"preamble", prompt.preamble}, {"few_shot", std::move(shots)}};
  if (!prompt.context_block.empty()) doc["context_block"] = prompt.context_block;
  return doc.dump(2) + "\n";
}

std::string_view normalized_name(Normalized n) {
  switch (n) {
    case Normalized::kYes: return "yes";
    case Normalized::kNo: return "no";
    case Normalized::kOther: return "other";
  }
  return "other";
}

Normalized parse_normalized(std::string_view name) {
  if (name == "yes") return Normalized::kYes;
  if (name == "no") return Normalized::kNo;
  if (name == "other") return Normalized::kOther;
  throw Error(ErrorCode::kInvalidArgument, "unknown normalized answer '" + std::string(name) + "'");
}

NormalizedAnswer normalize_answer(std::string_view raw) {
  std::size_t i = 0;
  while (i < raw.size() && !std::isalnum(static_cast<unsigned char>(raw[i]))) ++i;
  std::string word;
  while (i < raw.size() && std::isalpha(static_cast<unsigned char>(raw[i]))) {
    word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i++]))));
  }
  Normalized value = Normalized::kOther;
  if (word == "yes") value = Normalized::kYes;
  if (word == "no") value = Normalized::kNo;
  return {value, std::string(raw)};
}

void TruthTable::add(std::string_view question, YesNo truth) {
  auto [it, inserted] = truth_.emplace(canonical(question), truth);
  if (!inserted && it->second != truth) {
    throw Error(ErrorCode::kInvalidArgument,
                "question '" + std::string(question) + "' has conflicting expected answers");
  }
}

void TruthTable::add_dataset(const ClusterDataset &dataset) {
  for (const auto &c : dataset.clusters) {
    for (const auto &q : c.questions) add(q, c.expected);
  }
}

std::optional<YesNo> TruthTable::find(std::string_view question) const {
  auto it = truth_.find(canonical(question));
  if (it == truth_.end()) return std::nullopt;
  return it->second;
}

BackendAnswer PerfectOracle::ask(const PromptTemplate &, std::string_view question) {
  auto truth = truth_.find(question);
  if (!truth) return unknown_question(question);
  return {from_truth(*truth), false, {}};
}

NoisyOracle::NoisyOracle(std::string id, TruthTable truth, double flip_probability,
                         std::uint64_t seed)
    : id_(std::move(id)), truth_(std::move(truth)), p_(flip_probability), seed_(seed) {
  if (!(p_ >= 0.0 && p_ <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "flip_probability must lie in [0, 1]");
  }
}

bool NoisyOracle::flips(std::uint64_t seed, std::string_view question, double flip_probability) {
  const std::uint64_t key = Fnv1a().update(normalize_label(question)).digest();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  std::mt19937_64 rng(seq);
  return uniform_unit(rng) < flip_probability;
}

BackendAnswer NoisyOracle::ask(const PromptTemplate &, std::string_view question) {
  auto truth = truth_.find(question);
  if (!truth) return unknown_question(question);
  YesNo answer = *truth;
  if (flips(seed_, question, p_)) answer = answer == YesNo::kYes ? YesNo::kNo : YesNo::kYes;
  return {from_truth(answer), false, {}};
}

ScriptedOracle::ScriptedOracle(std::string id, std::unordered_map<std::string, std::string> answers,
                               std::optional<std::string> fallback)
    : id_(std::move(id)), fallback_(std::move(fallback)) {
  for (auto &[q, a] : answers) answers_.emplace(canonical(q), std::move(a));
}

BackendAnswer ScriptedOracle::ask(const PromptTemplate &, std::string_view question) {
  auto it = answers_.find(canonical(question));
  if (it != answers_.end()) return {normalize_answer(it->second), false, {}};
  if (fallback_) return {normalize_answer(*fallback_), false, {}};
  return unknown_question(question);
}

std::unique_ptr<ScriptedOracle> read_scripted_oracle(std::string id, std::string_view text) {
  const json doc = detail::parse_or_schema_error(text, "$");
  if (!doc.is_object()) detail::schema_error("$", "expected an object");
  const bool wrapped = doc.contains("answers");
  const json &answers = wrapped ? doc["answers"] : doc;
  if (!answers.is_object()) detail::schema_error("$.answers", "expected an object");
  std::unordered_map<std::string, std::string> map;
  for (const auto &[q, a] : answers.items()) {
    if (!a.is_string()) detail::schema_error("$[\"" + q + "\"]", "expected a string");
    map.emplace(q, a.get<std::string>());
  }
  std::optional<std::string> fallback;
  if (wrapped && doc.contains("default")) {
    if (!doc["default"].is_string()) detail::schema_error("$.default", "expected a string");
    fallback = doc["default"].get<std::string>();
  }
  return std::make_unique<ScriptedOracle>(std::move(id), std::move(map), std::move(fallback));
}

std::string BackendConfig::resolved_id() const {
  if (!id.empty()) return id;
  switch (kind) {
    case BackendKind::kPerfect: return "perfect";
    case BackendKind::kNoisy: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "noisy-p%g-s%llu", flip_probability,
                    static_cast<unsigned long long>(seed));
      return buf;
    }
    case BackendKind::kScripted: return "scripted";
    case BackendKind::kRemote: return model.empty() ? "remote" : model;
  }
  return "backend";
}

BackendConfig read_backend_config(std::string_view json_text) {
  const json doc = detail::parse_or_schema_error(json_text, "$");
  BackendConfig c;
  const std::string kind = detail::require_string(doc, "kind", "$");
  if (kind == "remote") {
    c.kind = BackendKind::kRemote;
  } else if (kind == "perfect") {
    c.kind = BackendKind::kPerfect;
  } else if (kind == "noisy") {
    c.kind = BackendKind::kNoisy;
  } else if (kind == "scripted") {
    c.kind = BackendKind::kScripted;
  } else {
    detail::schema_error("$.kind", "unknown backend kind '" + kind + "'");
  }
  try {
    c.id = doc.value("id", "");
    c.endpoint = doc.value("endpoint", "");
    c.model = doc.value("model", "");
    c.auth_env = doc.value("auth_env", "");
    c.max_tokens = doc.value("max_tokens", c.max_tokens);
    c.max_attempts = doc.value("max_attempts", c.max_attempts);
    c.initial_backoff_ms = doc.value("initial_backoff_ms", c.initial_backoff_ms);
    c.max_backoff_ms = doc.value("max_backoff_ms", c.max_backoff_ms);
    c.flip_probability = doc.value("flip_probability", 0.0);
    c.seed = doc.value("seed", std::uint64_t{0});
    c.answers_file = doc.value("answers", "");
    c.concurrency = doc.value("concurrency", std::size_t{1});
    c.cache_dir = doc.value("cache_dir", "");
  } catch (const json::exception &e) {
    detail::schema_error("$", std::string("bad backend field: ") + e.what());
  }
  if (!(c.flip_probability >= 0.0 && c.flip_probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "flip_probability must lie in [0, 1]");
  }
  if (c.concurrency == 0) c.concurrency = 1;
  if (c.kind == BackendKind::kRemote && (c.endpoint.empty() || c.model.empty())) {
    detail::schema_error("$", "remote backends need 'endpoint' and 'model'");
  }
  if (c.kind == BackendKind::kScripted && c.answers_file.empty()) {
    detail::schema_error("$.answers", "scripted backends need an answers file");
  }
  return c;
}

std::unique_ptr<Backend> make_backend(const BackendConfig &config, const TruthTable &truth) {
  switch (config.kind) {
    case BackendKind::kPerfect:
      return std::make_unique<PerfectOracle>(config.resolved_id(), truth);
    case BackendKind::kNoisy:
      return std::make_unique<NoisyOracle>(config.resolved_id(), truth, config.flip_probability,
                                           config.seed);
    case BackendKind::kScripted:
      return read_scripted_oracle(config.resolved_id(), detail::read_file(config.answers_file));
    case BackendKind::kRemote:
      return detail::make_remote_backend(config);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown backend kind");
}

namespace {

TruthTable bound_truth(const DeductiveClosure &closure, const ClusterDataset &dataset) {
  if (dataset.graph_fingerprint != closure.graph_fingerprint()) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "dataset was generated from graph " + dataset.graph_fingerprint +
                    ", closure is over " + closure.graph_fingerprint());
  }
  TruthTable truth;
  truth.add_dataset(dataset);
  return truth;
}

}  // namespace

std::unique_ptr<Backend> perfect_oracle(const DeductiveClosure &closure,
                                        const ClusterDataset &dataset) {
  return std::make_unique<PerfectOracle>("perfect", bound_truth(closure, dataset));
}

std::unique_ptr<Backend> noisy_oracle(const DeductiveClosure &closure,
                                      const ClusterDataset &dataset, double flip_probability,
                                      std::uint64_t seed) {
  BackendConfig cfg;
  cfg.kind = BackendKind::kNoisy;
  cfg.flip_probability = flip_probability;
  cfg.seed = seed;
  return std::make_unique<NoisyOracle>(cfg.resolved_id(), bound_truth(closure, dataset),
                                       flip_probability, seed);
}

}  // namespace ckg
