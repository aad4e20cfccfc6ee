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

#ifndef CONCEPTKG_SRC_JSON_UTIL_HPP_
#define CONCEPTKG_SRC_JSON_UTIL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "conceptkg/error.hpp"
#include "json.hpp"

namespace ckg::detail {

using nlohmann::json;

[[noreturn]] inline void schema_error(const std::string &locus, const std::string &what) {
  throw Error(ErrorCode::kSchemaViolation, locus + ": " + what);
}

inline std::string child_path(const std::string &parent, std::string_view key) {
  return parent + "." + std::string(key);
}

inline std::string child_path(const std::string &parent, std::size_t index) {
  return parent + "[" + std::to_string(index) + "]";
}

inline const json &require(const json &obj, std::string_view key, const std::string &locus) {
  if (!obj.is_object()) schema_error(locus, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(child_path(locus, key), "missing required field");
  return *it;
}

inline std::string require_string(const json &obj, std::string_view key,
                                  const std::string &locus) {
  const json &v = require(obj, key, locus);
  if (!v.is_string()) schema_error(child_path(locus, key), "expected a string");
  return v.get<std::string>();
}

inline const json &require_array(const json &obj, std::string_view key,
                                 const std::string &locus) {
  const json &v = require(obj, key, locus);
  if (!v.is_array()) schema_error(child_path(locus, key), "expected an array");
  return v;
}

inline std::vector<std::string> string_list(const json &arr, const std::string &locus) {
  if (!arr.is_array()) schema_error(locus, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) schema_error(child_path(locus, i), "expected a string");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

inline json parse_or_schema_error(std::string_view text, const std::string &locus) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    schema_error(locus, std::string("invalid JSON: ") + e.what());
  }
}

// Reads a whole file; throws kIo.
std::string read_file(const std::string &path);
// Write-temp-then-rename; throws kIo.
void write_file_atomic(const std::string &path, std::string_view contents);

}  // namespace ckg::detail

#endif  // CONCEPTKG_SRC_JSON_UTIL_HPP_
