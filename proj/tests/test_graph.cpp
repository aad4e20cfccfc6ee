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

#include <algorithm>
#include <random>

#include "conceptkg/error.hpp"
#include "conceptkg/graph.hpp"
#include "conceptkg/graph_io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ckg;

namespace {

Concept C(const char *id, const char *label) { return {ConceptId(id), label, {}}; }
SubConceptEdge E(const char *c, const char *p) { return {ConceptId(c), ConceptId(p)}; }

ErrorCode code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("labels are normalized") {
  CHECK(normalize_label("  Pediatric   SURGEON ") == "pediatric surgeon");
  CHECK(normalize_label("a\tb\n c") == "a b c");
  CHECK(normalize_label("") == "");
  for (std::string s : {"X  y", " a ", "AbC  dEf  "})
    CHECK(normalize_label(normalize_label(s)) == normalize_label(s));
}

TEST_CASE("build_graph indexes concepts in id order") {
  auto g = build_graph({C("q3", "Surgeon"), C("q1", "medical specialist"), C("q2", "pediatric surgeon")},
                       {E("q2", "q3"), E("q3", "q1"), E("q2", "q3")});
  REQUIRE(g.size() == 3);
  CHECK(g.id_at(0).str() == "q1");
  CHECK(g.label_at(2) == "surgeon");
  CHECK(g.edges().size() == 2);  // duplicate collapsed
  CHECK(g.has_edge(g.index_of(ConceptId("q2")), g.index_of(ConceptId("q3"))));
  CHECK_FALSE(g.has_edge(g.index_of(ConceptId("q3")), g.index_of(ConceptId("q2"))));
  CHECK(g.find_by_label(" SURGEON ") == g.find(ConceptId("q3")));
  CHECK_FALSE(g.find(ConceptId("zz")).has_value());
  CHECK(code_of([&] { g.index_of(ConceptId("zz")); }) == ErrorCode::kUnknownConcept);
  auto ps = g.parents(g.index_of(ConceptId("q2")));
  REQUIRE(ps.size() == 1);
  CHECK(g.id_at(ps[0]).str() == "q3");
  CHECK(g.children(0).size() == 1);
}

TEST_CASE("build_graph rejects invalid hierarchies") {
  CHECK(code_of([] { build_graph({C("a", "x"), C("b", "X ")}, {}); }) == ErrorCode::kDuplicateLabel);
  CHECK(code_of([] { build_graph({C("a", "x")}, {E("a", "b")}); }) == ErrorCode::kDanglingReference);
  CHECK(code_of([] { build_graph({C("a", "x")}, {E("a", "a")}); }) == ErrorCode::kCycleDetected);
  CHECK(code_of([] { build_graph({C("a", "x"), C("a", "y")}, {}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { build_graph({C("", "x")}, {}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] {
          build_graph({C("a", "x"), C("b", "y")}, {}, {{ConceptId("c"), "p", "v"}});
        }) == ErrorCode::kDanglingReference);
  CHECK(code_of([] { build_graph({C("a", "x")}, {}, {{ConceptId("a"), "", "v"}}); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("cycle errors name the cycle") {
  try {
    build_graph({C("a", "x"), C("b", "y"), C("c", "z"), C("d", "w")},
                {E("a", "b"), E("b", "c"), E("c", "a"), E("d", "a")});
    FAIL("expected a cycle");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kCycleDetected);
    const std::string m = e.what();
    CHECK(m.find("a -> b -> c -> a") != std::string::npos);
  }
}

TEST_CASE("fingerprint depends on the edge set only") {
  auto g1 = build_graph({C("a", "x"), C("b", "y"), C("c", "z")}, {E("a", "b"), E("b", "c")});
  auto g2 = build_graph({C("c", "zz"), C("b", "yy"), C("a", "xx")}, {E("b", "c"), E("a", "b")},
                        {{ConceptId("a"), "p", "v"}});
  auto g3 = build_graph({C("a", "x"), C("b", "y"), C("c", "z")}, {E("a", "c"), E("b", "c")});
  CHECK(g1.fingerprint() == g2.fingerprint());
  CHECK(g1.fingerprint() != g3.fingerprint());
  CHECK(g1.fingerprint().size() == 16);
}

TEST_CASE("same-as pairs are stored ordered") {
  auto g = build_graph({C("a", "x"), C("b", "y")}, {}, {}, {{ConceptId("b"), ConceptId("a")}});
  REQUIRE(g.same_as().size() == 1);
  CHECK(g.same_as()[0].first.str() == "a");
  CHECK(g.is_same_as(0, 1));
  CHECK(g.is_same_as(1, 0));
}

TEST_CASE("graph files round-trip") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    auto dag = ckg_test::random_dag(rng, 12, 0.25, 4, 1);
    auto g = dag.build();
    const std::string text = write_graph(g);
    auto back = read_graph(text);
    CHECK(write_graph(back) == text);
    CHECK(back.fingerprint() == g.fingerprint());
    CHECK(back.concepts() == g.concepts());
    CHECK(back.properties() == g.properties());
  }
}

TEST_CASE("graph reader reports the failing locus") {
  try {
    read_graph(R"({"concepts":[{"id":"a","label":"x"}],"edges":[{"child":"a"}]})");
    FAIL("expected schema violation");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kSchemaViolation);
    CHECK(std::string(e.what()).find("$.edges[0].parent") != std::string::npos);
  }
  CHECK(code_of([] { read_graph("{not json"); }) == ErrorCode::kSchemaViolation);
  CHECK(code_of([] { read_graph(R"({"concepts":[],"edges":[{"child":"a","parent":"b"}]})"); }) ==
        ErrorCode::kDanglingReference);
}

TEST_CASE("bundled medical graph loads") {
  auto g = read_graph_file(ckg_test::data_path("medical.graph.json"));
  CHECK(g.size() == 13);
  CHECK(g.edges().size() == 15);
  CHECK(g.properties().size() == 7);
  auto f = read_graph_file(ckg_test::data_path("finance.graph.json"));
  CHECK(f.size() == 5);
  CHECK(f.edges().size() == 4);
  CHECK(f.properties().empty());
}
