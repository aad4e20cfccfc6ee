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

#ifndef CONCEPTKG_INGEST_HPP_
#define CONCEPTKG_INGEST_HPP_

#include <chrono>
#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "conceptkg/graph.hpp"

namespace ckg {

// Wikidata property ids the extractor understands.
inline constexpr std::string_view kInstanceOf = "P31";
inline constexpr std::string_view kSubclassOf = "P279";
inline constexpr std::string_view kSameAs = "P460";

struct ClaimValue {
  std::string entity_id;  // set for item/property values
  std::string text;       // set for string and monolingual-text values

  friend bool operator==(const ClaimValue &, const ClaimValue &) = default;
};

struct RawEntity {
  std::string id;
  std::map<std::string, std::string> labels;  // language -> label
  std::map<std::string, std::vector<std::string>> aliases;
  std::map<std::string, std::vector<ClaimValue>> claims;  // property id -> values

  friend bool operator==(const RawEntity &, const RawEntity &) = default;
};

struct Diagnostic {
  std::size_t line = 0;  // 1-based source line, 0 when not line-bound
  std::string message;
};

struct ParsedDump {
  std::vector<RawEntity> entities;
  std::vector<Diagnostic> diagnostics;
};

// Line-delimited entity records in Wikidata JSON layout. The enclosing "["
// / "]" lines and trailing commas of a full dump are tolerated, so both a
// JSON-lines extract and a raw dump slice parse. Malformed lines become
// diagnostics. Throws kUnreadableSource when the stream itself fails.
ParsedDump parse_entity_dump(std::istream &source);
ParsedDump parse_entity_dump_file(const std::string &path);

enum class Direction { kAncestors, kDescendants, kBoth };

struct ExtractionSpec {
  std::string seed_concept;   // e.g. Q3332438
  std::string seed_property;  // e.g. P425; may be empty
  int max_depth = 8;
  Direction direction = Direction::kDescendants;
  std::string language = "en";
};

struct Extraction {
  ConceptGraph graph;
  std::vector<std::string> diagnostics;  // dropped back-edges, renamed labels, ...
};

// BFS from the seed along instance-of and subclass-of (both become
// subConceptOf), attaching seed-property claims as assertions and P460 as
// same-as. Back-edges that would close a cycle are dropped and reported.
// Throws kSeedNotFound, kEmptyFragment, kInvalidArgument (bad spec).
Extraction extract_fragment(const ExtractionSpec &spec, const std::vector<RawEntity> &entities);

struct LiveFetchOptions {
  std::string endpoint;   // http(s)://host[:port]/path
  std::string cache_dir;  // empty disables caching
  std::string auth_env;   // environment variable holding a bearer token; may be empty
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::milliseconds max_backoff{5000};
  std::chrono::milliseconds min_interval{0};  // spacing between network requests
  std::size_t max_pages = 10000;
};

struct LiveFetchResult {
  std::vector<RawEntity> entities;  // page order
  std::vector<Diagnostic> diagnostics;
  std::size_t network_calls = 0;
  std::size_t cache_hits = 0;
};

// Pages through the entity endpoint:
//   GET <endpoint>?seed=..&direction=..&depth=..&language=..&page=N
//   -> {"entities":[<dump record>...], "next_page": N+1 | null}
// Each page body is cached under <cache_dir>/<fnv1a(request url)>.json.
// Throws kNetworkError (after capped exponential backoff), kMalformedResponse,
// kAuthMissing.
LiveFetchResult fetch_live(const ExtractionSpec &spec, const LiveFetchOptions &options);

std::string_view direction_name(Direction d);
// Throws kInvalidArgument.
Direction parse_direction(std::string_view name);

}  // namespace ckg

#endif  // CONCEPTKG_INGEST_HPP_
