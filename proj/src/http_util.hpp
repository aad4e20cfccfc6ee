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

#ifndef CONCEPTKG_SRC_HTTP_UTIL_HPP_
#define CONCEPTKG_SRC_HTTP_UTIL_HPP_

#include <algorithm>
#include <chrono>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "conceptkg/error.hpp"

namespace ckg::detail {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;    // starts with '/'
};

// Throws kInvalidArgument.
Url split_url(const std::string &url);

std::string url_encode(std::string_view text);

using HeaderList = std::vector<std::pair<std::string, std::string>>;

// Returns the body of a 2xx response. Transport failures and non-2xx
// statuses throw kNetworkError.
std::string http_get(const Url &url, const std::string &path_and_query, const HeaderList &headers);
std::string http_post(const Url &url, const std::string &body, const std::string &content_type,
                      const HeaderList &headers);

// Bearer header from the named environment variable. Empty name -> no
// header; named but unset -> kAuthMissing.
HeaderList auth_headers(const std::string &env_var);

// Retries kNetworkError with doubling delays capped at max_delay.
template <class F>
auto with_backoff(int attempts, std::chrono::milliseconds delay, std::chrono::milliseconds max_delay,
                  F &&call) -> decltype(call()) {
  for (int attempt = 1;; ++attempt) {
    try {
      return call();
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kNetworkError || attempt >= attempts) throw;
    }
    std::this_thread::sleep_for(delay);
    delay = std::min(delay * 2, max_delay);
  }
}

}  // namespace ckg::detail

#endif  // CONCEPTKG_SRC_HTTP_UTIL_HPP_
