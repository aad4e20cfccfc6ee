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

#ifndef CONCEPTKG_GRAPH_IO_HPP_
#define CONCEPTKG_GRAPH_IO_HPP_

#include <string>
#include <string_view>

#include "conceptkg/graph.hpp"

namespace ckg {

// Native graph file:
//   {"concepts":[{"aliases":[],"id":..,"label":..}],
//    "edges":[{"child":..,"parent":..}],
//    "properties":[{"property":..,"subject":..,"value":..}],
//    "same_as":[[id,id]]}
// Keys sorted, arrays in graph order, two-space indent, trailing newline.
std::string write_graph(const ConceptGraph &graph);

// Throws kSchemaViolation (with a JSON-path locus) or any build_graph error.
ConceptGraph read_graph(std::string_view text);

ConceptGraph read_graph_file(const std::string &path);
void write_graph_file(const ConceptGraph &graph, const std::string &path);

}  // namespace ckg

#endif  // CONCEPTKG_GRAPH_IO_HPP_
