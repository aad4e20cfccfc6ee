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

#include <sstream>

#include "conceptkg/error.hpp"
#include "conceptkg/graph_io.hpp"
#include "conceptkg/ingest.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ckg;

namespace {

std::string rec(const std::string &id, const std::string &label, const std::string &claims = "{}") {
  return R"({"id":")" + id + R"(","labels":{"en":{"language":"en","value":")" + label + R"("}},"claims":)" +
         claims + "}";
}

std::vector<RawEntity> parse(const std::string &text) {
  std::istringstream in(text);
  return parse_entity_dump(in).entities;
}

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

TEST_CASE("dump parser tolerates array framing and reports bad lines") {
  const std::string text = "[\n" + rec("Q1", "a") + ",\n{broken\n" + R"({"labels":{}})" + ",\n" +
                           rec("Q2", "b", R"({"P279":["Q1"]})") + "\n]\n";
  std::istringstream in(text);
  auto dump = parse_entity_dump(in);
  REQUIRE(dump.entities.size() == 2);
  CHECK(dump.entities[1].claims.at("P279")[0].entity_id == "Q1");
  REQUIRE(dump.diagnostics.size() == 2);
  CHECK(dump.diagnostics[0].line == 3);
  CHECK(dump.diagnostics[1].line == 4);
}

TEST_CASE("full statement claims are decoded") {
  // one record per line, so the claims object is assembled on one line
  const std::string claims =
      std::string(R"({"P279":[{"mainsnak":{"snaktype":"value","datavalue":{"value":{"entity-type":"item","numeric-id":42}}}},)") +
      R"({"mainsnak":{"snaktype":"novalue"}}],)" +
      R"("P1":[{"mainsnak":{"snaktype":"value","datavalue":{"value":"plain"}}}],)" +
      R"("P2":[{"mainsnak":{"snaktype":"value","datavalue":{"value":{"text":"mono","language":"en"}}}}]})";
  auto es = parse(rec("Q1", "a", claims));
  REQUIRE(es.size() == 1);
  CHECK(es[0].claims.at("P279").size() == 1);
  CHECK(es[0].claims.at("P279")[0].entity_id == "Q42");
  CHECK(es[0].claims.at("P1")[0].text == "plain");
  CHECK(es[0].claims.at("P2")[0].text == "mono");
}

TEST_CASE("unreadable sources are errors") {
  CHECK(code_of([] { parse_entity_dump_file("/nonexistent/dump.jsonl"); }) == ErrorCode::kUnreadableSource);
}

TEST_CASE("bundled dump extracts to the bundled graph byte for byte") {
  auto dump = parse_entity_dump_file(ckg_test::data_path("medical.dump.jsonl"));
  CHECK(dump.diagnostics.empty());
  ExtractionSpec spec;
  spec.seed_concept = "Q3332438";
  spec.seed_property = "P425";
  auto ex = extract_fragment(spec, dump.entities);
  CHECK(write_graph(ex.graph) == ckg_test::slurp(ckg_test::data_path("medical.graph.json")));
  CHECK(ex.graph.size() == 13);
  CHECK(ex.graph.edges().size() == 15);
  // surgeon carries both P31 and P279 to the seed: one edge
  const auto s = ex.graph.index_of(ConceptId("Q9100001"));
  CHECK(ex.graph.parents(s).size() == 1);
  const auto &props = ex.graph.properties();
  CHECK(props.size() == 7);
  CHECK(props[0].property_label == "field of this occupation");
}

TEST_CASE("extraction errors") {
  auto es = parse(rec("Q1", "a") + "\n" + rec("Q2", "b", R"({"P31":["Q9"]})"));
  ExtractionSpec spec;
  spec.seed_concept = "Q404";
  CHECK(code_of([&] { extract_fragment(spec, es); }) == ErrorCode::kSeedNotFound);
  spec.seed_concept = "Q1";
  CHECK(code_of([&] { extract_fragment(spec, es); }) == ErrorCode::kEmptyFragment);
  spec.max_depth = 0;
  CHECK(code_of([&] { extract_fragment(spec, es); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("depth bound and direction") {
  // Q4 -> Q3 -> Q2 -> Q1 chain, Q5 -> Q4
  std::string text = rec("Q1", "one");
  text += "\n" + rec("Q2", "two", R"({"P279":["Q1"]})");
  text += "\n" + rec("Q3", "three", R"({"P279":["Q2"]})");
  text += "\n" + rec("Q4", "four", R"({"P31":["Q3"]})");
  text += "\n" + rec("Q5", "five", R"({"P279":["Q4"]})");
  auto es = parse(text);
  ExtractionSpec spec;
  spec.seed_concept = "Q1";
  spec.max_depth = 2;
  CHECK(extract_fragment(spec, es).graph.size() == 3);
  spec.max_depth = 8;
  CHECK(extract_fragment(spec, es).graph.size() == 5);
  spec.seed_concept = "Q3";
  spec.direction = Direction::kAncestors;
  auto up = extract_fragment(spec, es).graph;
  CHECK(up.size() == 3);
  CHECK(up.find(ConceptId("Q4")) == std::nullopt);
  spec.direction = Direction::kBoth;
  CHECK(extract_fragment(spec, es).graph.size() == 5);
  CHECK(parse_direction("both") == Direction::kBoth);
  CHECK(direction_name(Direction::kAncestors) == "ancestors");
}

TEST_CASE("cycles in the source are broken with a diagnostic") {
  std::string text = rec("Q1", "one", R"({"P279":["Q3"]})");
  text += "\n" + rec("Q2", "two", R"({"P279":["Q1"]})");
  text += "\n" + rec("Q3", "three", R"({"P279":["Q2"]})");
  ExtractionSpec spec;
  spec.seed_concept = "Q1";
  auto ex = extract_fragment(spec, parse(text));
  CHECK(ex.graph.edges().size() == 2);
  bool noted = false;
  for (const auto &d : ex.diagnostics) noted = noted || d.find("back-edge") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("labels, duplicates, same-as and properties") {
  std::string text = rec("Q1", "root");
  text += "\n" + rec("Q2", "twin", R"({"P279":["Q1"],"P460":["Q3"],"P9":["Q7"]})");
  text += "\n" + rec("Q3", "Twin", R"({"P279":["Q1"],"P9":[{"mainsnak":{"datavalue":{"value":"literal"}}}]})");
  text += std::string("\n") + R"({"id":"Q4","labels":{"de":{"value":"vier"}},"claims":{"P279":["Q1"]}})";
  text += "\n" + rec("Q7", "seven");
  text += "\n" + rec("P9", "has value");
  ExtractionSpec spec;
  spec.seed_concept = "Q1";
  spec.seed_property = "P9";
  auto ex = extract_fragment(spec, parse(text));
  const auto &g = ex.graph;
  CHECK(g.label_at(g.index_of(ConceptId("Q3"))) == "twin (q3)");
  CHECK(g.label_at(g.index_of(ConceptId("Q4"))) == "q4");
  REQUIRE(g.same_as().size() == 1);
  CHECK(g.same_as()[0] == SameAsPair{ConceptId("Q2"), ConceptId("Q3")});
  REQUIRE(g.properties().size() == 2);
  CHECK(g.properties()[0] == PropertyAssertion{ConceptId("Q2"), "has value", "seven"});
  CHECK(g.properties()[1] == PropertyAssertion{ConceptId("Q3"), "has value", "literal"});
  CHECK(ex.diagnostics.size() >= 2);
}
