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

#ifndef CONCEPTKG_ORACLE_HPP_
#define CONCEPTKG_ORACLE_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conceptkg/closure.hpp"
#include "conceptkg/clusters.hpp"

namespace ckg {

struct FewShotExample {
  std::string question;
  YesNo answer = YesNo::kYes;

  friend bool operator==(const FewShotExample &, const FewShotExample &) = default;
};

// Rendered as
//   <preamble>\n\n
//   Q: <few-shot question>\nA: <yes|no>\n\n      (per example)
//   <context statement>\n                        (per statement)
//   Q: <question>\nA:
// so a context block only ever inserts whole lines before the final question.
struct PromptTemplate {
  std::string preamble;
  std::vector<FewShotExample> few_shot;
  std::vector<std::string> context_block;

  // Everything up to and including the context lines.
  std::string render_prefix() const;
  std::string render(std::string_view question) const;

  // Hash of the base prompt (preamble + few-shot), context excluded.
  std::string fingerprint() const;
  // Hash of the context lines; empty when there is no context.
  std::string context_fingerprint() const;

  PromptTemplate with_context(std::vector<std::string> statements) const;

  friend bool operator==(const PromptTemplate &, const PromptTemplate &) = default;
};

// Eleven medical-domain examples over concepts outside the bundled fixture.
PromptTemplate default_prompt();

// {"preamble": str, "few_shot": [{"question": str, "answer": "yes"|"no"}],
//  "context_block": [str]?}. Throws kSchemaViolation.
PromptTemplate read_prompt(std::string_view text);
PromptTemplate read_prompt_file(const std::string &path);
std::string write_prompt(const PromptTemplate &prompt);

enum class Normalized { kYes, kNo, kOther };

std::string_view normalized_name(Normalized n);
Normalized parse_normalized(std::string_view name);

struct NormalizedAnswer {
  Normalized value = Normalized::kOther;
  std::string raw;
};

// Leading-token rule: skip leading whitespace and punctuation, read the
// first word case-insensitively; "yes" / "no" map through, anything else is
// Other. "No, but ..." is No; an essay is Other.
NormalizedAnswer normalize_answer(std::string_view raw);

struct BackendAnswer {
  NormalizedAnswer answer;
  bool error = false;  // transport failure; answer is Other
  std::string error_message;
};

// Answers yes/no questions. ask() must be safe to call concurrently.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual const std::string &id() const = 0;
  virtual BackendAnswer ask(const PromptTemplate &prompt, std::string_view question) = 0;
  // Upper bound on in-flight ask() calls the evaluator may issue.
  virtual std::size_t concurrency() const { return 1; }
  virtual std::size_t network_calls() const { return 0; }
};

// Ground truth keyed by canonicalized question text.
class TruthTable {
 public:
  // Throws kInvalidArgument if the question already has the other answer.
  void add(std::string_view question, YesNo truth);
  void add_dataset(const ClusterDataset &dataset);
  std::optional<YesNo> find(std::string_view question) const;
  std::size_t size() const { return truth_.size(); }

 private:
  std::unordered_map<std::string, YesNo> truth_;
};

class PerfectOracle : public Backend {
 public:
  PerfectOracle(std::string id, TruthTable truth) : id_(std::move(id)), truth_(std::move(truth)) {}

  const std::string &id() const override { return id_; }
  BackendAnswer ask(const PromptTemplate &prompt, std::string_view question) override;

 private:
  std::string id_;
  TruthTable truth_;
};

// Flips the true answer with probability p. The draw is a pure function of
// (seed, question), so streams are reproducible and order-independent.
class NoisyOracle : public Backend {
 public:
  NoisyOracle(std::string id, TruthTable truth, double flip_probability, std::uint64_t seed);

  const std::string &id() const override { return id_; }
  BackendAnswer ask(const PromptTemplate &prompt, std::string_view question) override;

  static bool flips(std::uint64_t seed, std::string_view question, double flip_probability);

 private:
  std::string id_;
  TruthTable truth_;
  double p_;
  std::uint64_t seed_;
};

// Replays raw answers from a file: either a plain {"question": "raw"} object
// or {"answers": {...}, "default": "raw"}.
class ScriptedOracle : public Backend {
 public:
  ScriptedOracle(std::string id, std::unordered_map<std::string, std::string> answers,
                 std::optional<std::string> fallback);

  const std::string &id() const override { return id_; }
  BackendAnswer ask(const PromptTemplate &prompt, std::string_view question) override;

 private:
  std::string id_;
  std::unordered_map<std::string, std::string> answers_;
  std::optional<std::string> fallback_;
};

std::unique_ptr<ScriptedOracle> read_scripted_oracle(std::string id, std::string_view text);

enum class BackendKind { kRemote, kPerfect, kNoisy, kScripted };

struct BackendConfig {
  BackendKind kind = BackendKind::kPerfect;
  std::string id;  // derived from the kind when empty
  // remote
  std::string endpoint;
  std::string model;
  std::string auth_env;
  int max_tokens = 8;
  int max_attempts = 4;
  int initial_backoff_ms = 500;
  int max_backoff_ms = 8000;
  // noisy
  double flip_probability = 0.0;
  std::uint64_t seed = 0;
  // scripted
  std::string answers_file;
  // shared
  std::size_t concurrency = 1;
  std::string cache_dir;

  std::string resolved_id() const;
};

// Parses one backend object of a run config. Throws kSchemaViolation or
// kInvalidArgument (flip_probability outside [0, 1]).
BackendConfig read_backend_config(std::string_view json_text);

// Perfect and noisy oracles answer from `truth`; remote and scripted ignore
// it. Throws kAuthMissing, kIo.
std::unique_ptr<Backend> make_backend(const BackendConfig &config, const TruthTable &truth);

// Dataset-bound oracles. Throw kFingerprintMismatch when the dataset was not
// generated from the closure's graph.
std::unique_ptr<Backend> perfect_oracle(const DeductiveClosure &closure,
                                        const ClusterDataset &dataset);
std::unique_ptr<Backend> noisy_oracle(const DeductiveClosure &closure,
                                      const ClusterDataset &dataset, double flip_probability,
                                      std::uint64_t seed);

}  // namespace ckg

#endif  // CONCEPTKG_ORACLE_HPP_
