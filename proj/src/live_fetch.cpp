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

#include <filesystem>
#include <optional>
#include <thread>

#include "conceptkg/error.hpp"
#include "conceptkg/hash.hpp"
#include "conceptkg/ingest.hpp"
#include "http_util.hpp"
#include "json_util.hpp"

namespace ckg {

using detail::json;

namespace detail {
bool parse_entity_record(const json &rec, RawEntity &out, std::string &why);
}  // namespace detail

namespace {

// Cached page: {"request": <url>, "body": <response text>}.
class PageCache {
 public:
  explicit PageCache(std::string dir) : dir_(std::move(dir)) {}

  std::optional<std::string> get(const std::string &request) const {
    if (dir_.empty()) return std::nullopt;
    std::error_code ec;
    if (!std::filesystem::exists(path_for(request), ec)) return std::nullopt;
    try {
      json entry = json::parse(detail::read_file(path_for(request)));
      if (entry.value("request", "") != request) return std::nullopt;
      return entry.at("body").get<std::string>();
    } catch (const std::exception &) {
      return std::nullopt;
    }
  }

  void put(const std::string &request, const std::string &body) const {
    if (dir_.empty()) return;
    json entry = {{"request", request}, {"body", body}};
    detail::write_file_atomic(path_for(request), entry.dump(2) + "\n");
  }

 private:
  std::string path_for(const std::string &request) const {
    return (std::filesystem::path(dir_) / (fnv1a_hex(request) + ".json")).string();
  }

  std::string dir_;
};

}  // namespace

LiveFetchResult fetch_live(const ExtractionSpec &spec, const LiveFetchOptions &options) {
  const detail::Url url = detail::split_url(options.endpoint);
  const PageCache cache(options.cache_dir);
  std::optional<detail::HeaderList> headers;  // resolved on first network call

  LiveFetchResult out;
  std::optional<std::chrono::steady_clock::time_point> last_call;
  long long page = 0;
  for (std::size_t fetched = 0;; ++fetched) {
    if (fetched >= options.max_pages) {
      throw Error(ErrorCode::kMalformedResponse, "endpoint exceeded the page limit");
    }
    const std::string query = url.path + "?seed=" + detail::url_encode(spec.seed_concept) +
                              "&direction=" + std::string(direction_name(spec.direction)) +
                              "&depth=" + std::to_string(spec.max_depth) +
                              "&language=" + detail::url_encode(spec.language) +
                              "&page=" + std::to_string(page);
    const std::string request = url.origin + query;

    std::string body;
    bool from_network = false;
    if (auto hit = cache.get(request)) {
      body = std::move(*hit);
      ++out.cache_hits;
    } else {
      if (!headers) headers = detail::auth_headers(options.auth_env);
      if (last_call && options.min_interval.count() > 0) {
        std::this_thread::sleep_until(*last_call + options.min_interval);
      }
      body = detail::with_backoff(options.max_attempts, options.initial_backoff,
                                  options.max_backoff, [&] {
                                    ++out.network_calls;
                                    return detail::http_get(url, query, *headers);
                                  });
      last_call = std::chrono::steady_clock::now();
      from_network = true;
    }

    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::parse_error &e) {
      throw Error(ErrorCode::kMalformedResponse, "page " + std::to_string(page) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("entities") || !doc["entities"].is_array()) {
      throw Error(ErrorCode::kMalformedResponse,
                  "page " + std::to_string(page) + " has no entities array");
    }
    // Only well-formed pages are cached.
    if (from_network) cache.put(request, body);

    for (const auto &rec : doc["entities"]) {
      RawEntity e;
      std::string why;
      if (detail::parse_entity_record(rec, e, why)) {
        out.entities.push_back(std::move(e));
      } else {
        out.diagnostics.push_back({0, "page " + std::to_string(page) + ": " + why});
      }
    }

    auto next = doc.find("next_page");
    if (next == doc.end() || next->is_null()) break;
    if (!next->is_number_integer() || next->get<long long>() <= page) {
      throw Error(ErrorCode::kMalformedResponse, "next_page must increase");
    }
    page = next->get<long long>();
  }
  return out;
}

}  // namespace ckg
