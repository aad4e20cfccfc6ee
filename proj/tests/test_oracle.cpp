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

#include <cmath>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "conceptkg/closure.hpp"
#include "conceptkg/clusters.hpp"
#include "conceptkg/error.hpp"
#include "conceptkg/graph_io.hpp"
#include "conceptkg/oracle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ckg;

namespace {

DeductiveClosure medical() { return DeductiveClosure(read_graph_file(ckg_test::data_path("medical.graph.json"))); }

}  // namespace

TEST_CASE("answers are normalized by their leading token") {
  CHECK(normalize_answer("Yes").value == Normalized::kYes);
  CHECK(normalize_answer("  yes.").value == Normalized::kYes);
  CHECK(normalize_answer("YES, it is").value == Normalized::kYes);
  CHECK(normalize_answer("\"No\"").value == Normalized::kNo);
  CHECK(normalize_answer("no!").value == Normalized::kNo);
  CHECK(normalize_answer("Nope").value == Normalized::kOther);
  CHECK(normalize_answer("yesterday").value == Normalized::kOther);
  CHECK(normalize_answer("I think yes").value == Normalized::kOther);
  CHECK(normalize_answer("").value == Normalized::kOther);
  CHECK(normalize_answer(" Yes").raw == " Yes");
  for (std::string s : {"Yes", "no.", "maybe", " NO "}) {
    const auto once = normalize_answer(s);
    CHECK(normalize_answer(std::string(normalized_name(once.value))).value == once.value);
  }
}

TEST_CASE("prompt layout") {
  PromptTemplate p;
  p.preamble = "Answer yes or no.";
  p.few_shot = {{"is a x a y ?", YesNo::kYes}, {"is a y a x ?", YesNo::kNo}};
  CHECK(p.render("is a z a y ?") ==
        "Answer yes or no.\n\nQ: is a x a y ?\nA: yes\n\nQ: is a y a x ?\nA: no\n\nQ: is a z a y ?\nA:");
  CHECK(p.context_fingerprint().empty());
  auto c = p.with_context({"a z is a y", "every w is a v"});
  CHECK(c.render("is a z a y ?") ==
        "Answer yes or no.\n\nQ: is a x a y ?\nA: yes\n\nQ: is a y a x ?\nA: no\n\n"
        "a z is a y\nevery w is a v\nQ: is a z a y ?\nA:");
  CHECK(c.fingerprint() == p.fingerprint());
  CHECK_FALSE(c.context_fingerprint().empty());
  CHECK(c.context_fingerprint() != p.with_context({"a z is a y"}).context_fingerprint());
}

TEST_CASE("context goes between the few-shot block and the question") {
  const PromptTemplate base = default_prompt();
  for (int n = 0; n < 5; ++n) {
    std::vector<std::string> ctx;
    for (int i = 0; i < n; ++i) ctx.push_back("statement " + std::to_string(i));
    const auto p = base.with_context(ctx);
    const std::string r = p.render("is a q a r ?");
    CHECK(r.rfind(base.render_prefix(), 0) == 0);
    std::string middle;
    for (const auto &s : ctx) middle += s + "\n";
    CHECK(r == base.render_prefix() + middle + "Q: is a q a r ?\nA:");
  }
}

TEST_CASE("bundled prompt equals the built-in default") {
  CHECK(read_prompt_file(ckg_test::data_path("default_prompt.json")) == default_prompt());
  CHECK(write_prompt(default_prompt()) == ckg_test::slurp(ckg_test::data_path("default_prompt.json")));
  CHECK(default_prompt().few_shot.size() >= 8);
}

TEST_CASE("perfect oracle answers every dataset question correctly") {
  const auto cl = medical();
  const auto d = generate_dataset(cl, GenerationConfig{}).dataset;
  auto o = perfect_oracle(cl, d);
  for (const auto &c : d.clusters)
    for (const auto &q : c.questions) {
      auto a = o->ask(default_prompt(), q);
      CHECK(a.answer.value == (c.expected == YesNo::kYes ? Normalized::kYes : Normalized::kNo));
      // case and spacing do not matter
      CHECK(o->ask(default_prompt(), "  " + q).answer.value == a.answer.value);
    }
  auto unknown = o->ask(default_prompt(), "is a unicorn a horse ?");
  CHECK(unknown.answer.value == Normalized::kOther);
}

TEST_CASE("oracles refuse datasets from another graph") {
  const auto cl = medical();
  auto d = generate_dataset(cl, GenerationConfig{}).dataset;
  d.graph_fingerprint = "0000000000000000";
  try {
    perfect_oracle(cl, d);
    FAIL("expected fingerprint mismatch");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kFingerprintMismatch);
  }
  CHECK_THROWS_AS(noisy_oracle(cl, d, 0.1, 1), Error);
}

TEST_CASE("noisy oracle is a deterministic function of seed and question") {
  const auto cl = medical();
  const auto d = generate_dataset(cl, GenerationConfig{}).dataset;
  auto a = noisy_oracle(cl, d, 0.3, 7);
  auto b = noisy_oracle(cl, d, 0.3, 7);
  auto truth = perfect_oracle(cl, d);
  std::size_t flipped = 0, total = 0;
  for (const auto &c : d.clusters)
    for (const auto &q : c.questions) {
      const auto x = a->ask(default_prompt(), q);
      CHECK(x.answer.value == b->ask(default_prompt(), q).answer.value);
      CHECK(x.answer.value == a->ask(default_prompt().with_context({"s"}), q).answer.value);
      const bool f = x.answer.value != truth->ask(default_prompt(), q).answer.value;
      CHECK(f == NoisyOracle::flips(7, q, 0.3));
      flipped += f;
      ++total;
    }
  const double p = static_cast<double>(flipped) / total;
  CHECK(std::abs(p - 0.3) < 4 * std::sqrt(0.3 * 0.7 / total));
  CHECK_FALSE(NoisyOracle::flips(1, "q", 0.0));
  CHECK(NoisyOracle::flips(1, "q", 1.0));
}

TEST_CASE("scripted oracle") {
  auto s = read_scripted_oracle("s", R"({"answers":{"Is A a B ?":"Yes.","is c a d ?":"no"},"default":"maybe"})");
  CHECK(s->ask(default_prompt(), "is a a b ?").answer.value == Normalized::kYes);
  CHECK(s->ask(default_prompt(), "is c a d ?").answer.value == Normalized::kNo);
  CHECK(s->ask(default_prompt(), "is e a f ?").answer.value == Normalized::kOther);
  auto plain = read_scripted_oracle("p", R"({"is a a b ?":"no"})");
  CHECK(plain->ask(default_prompt(), "is a a b ?").answer.value == Normalized::kNo);
  CHECK(plain->ask(default_prompt(), "other ?").answer.value == Normalized::kOther);
  CHECK_THROWS_AS(read_scripted_oracle("x", R"({"q":1})"), Error);
}

TEST_CASE("backend configuration") {
  auto c = read_backend_config(R"({"kind":"noisy","flip_probability":0.25,"seed":9})");
  CHECK(c.kind == BackendKind::kNoisy);
  CHECK(c.resolved_id() == "noisy-p0.25-s9");
  CHECK(read_backend_config(R"({"kind":"perfect"})").resolved_id() == "perfect");
  CHECK(read_backend_config(R"({"kind":"perfect","id":"ref"})").resolved_id() == "ref");
  auto r = read_backend_config(R"({"kind":"remote","endpoint":"http://h/v1","model":"m","concurrency":3})");
  CHECK(r.resolved_id() == "m");
  CHECK(r.concurrency == 3);
  CHECK_THROWS_AS(read_backend_config(R"({"kind":"remote"})"), Error);
  CHECK_THROWS_AS(read_backend_config(R"({"kind":"psychic"})"), Error);
  CHECK_THROWS_AS(read_backend_config(R"({"kind":"noisy","flip_probability":1.5})"), Error);
  CHECK_THROWS_AS(read_backend_config(R"({"kind":"scripted"})"), Error);
  CHECK_THROWS_AS(read_backend_config("[]"), Error);

  const auto cl = medical();
  const auto d = generate_dataset(cl, GenerationConfig{}).dataset;
  TruthTable t;
  t.add_dataset(d);
  auto b = make_backend(read_backend_config(R"({"kind":"noisy","flip_probability":0.5,"seed":3})"), t);
  CHECK(b->id() == "noisy-p0.5-s3");
  const auto path = std::filesystem::temp_directory_path() / ("ckg-answers-" + std::to_string(::getpid()) + ".json");
  {
    std::ofstream out(path);
    out << R"({"is a surgeon a medical specialist ?":"yes"})";
  }
  auto s = make_backend(read_backend_config(R"({"kind":"scripted","answers":")" + path.string() + R"("})"), t);
  CHECK(s->ask(default_prompt(), "is a surgeon a medical specialist ?").answer.value == Normalized::kYes);
  std::filesystem::remove(path);
}

TEST_CASE("truth table rejects contradictions") {
  TruthTable t;
  t.add("is a x a y ?", YesNo::kYes);
  t.add("IS A X A Y ?", YesNo::kYes);
  CHECK(t.size() == 1);
  CHECK_THROWS_AS(t.add("is a x a y ?", YesNo::kNo), Error);
}
