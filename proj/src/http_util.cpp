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

#include "http_util.hpp"

#include <cstdlib>

#include "httplib.h"

namespace ckg::detail {

namespace {

constexpr auto kConnectTimeout = std::chrono::seconds(10);
constexpr auto kReadTimeout = std::chrono::seconds(120);

httplib::Headers to_headers(const HeaderList &list) {
  httplib::Headers headers;
  for (const auto &[k, v] : list) headers.emplace(k, v);
  return headers;
}

std::string check(const httplib::Result &res, const std::string &what) {
  if (!res) {
    throw Error(ErrorCode::kNetworkError, what + ": " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::kNetworkError, what + ": HTTP " + std::to_string(res->status));
  }
  return res->body;
}

httplib::Client make_client(const Url &url) {
  httplib::Client client(url.origin);
  client.set_connection_timeout(kConnectTimeout);
  client.set_read_timeout(kReadTimeout);
  client.set_follow_location(true);
  return client;
}

}  // namespace

Url split_url(const std::string &url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint '" + url + "' has no scheme");
  }
  std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::kInvalidArgument, "unsupported scheme in '" + url + "'");
  }
  auto path_start = url.find('/', scheme_end + 3);
  Url out;
  out.origin = url.substr(0, path_start);
  out.path = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (out.origin.size() <= scheme_end + 3) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint '" + url + "' has no host");
  }
  return out;
}

std::string url_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

std::string http_get(const Url &url, const std::string &path_and_query, const HeaderList &headers) {
  auto client = make_client(url);
  return check(client.Get(path_and_query, to_headers(headers)), "GET " + url.origin + path_and_query);
}

std::string http_post(const Url &url, const std::string &body, const std::string &content_type,
                      const HeaderList &headers) {
  auto client = make_client(url);
  return check(client.Post(url.path, to_headers(headers), body, content_type),
               "POST " + url.origin + url.path);
}

HeaderList auth_headers(const std::string &env_var) {
  if (env_var.empty()) return {};
  const char *token = std::getenv(env_var.c_str());
  if (token == nullptr || *token == '\0') {
    throw Error(ErrorCode::kAuthMissing, "environment variable " + env_var + " is not set");
  }
  return {{"Authorization", std::string("Bearer ") + token}};
}

}  // namespace ckg::detail
