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

// In-process HTTP server for network tests.

#ifndef CONCEPTKG_TESTS_STUB_SERVER_HPP_
#define CONCEPTKG_TESTS_STUB_SERVER_HPP_

#include <atomic>
#include <chrono>
#include <string>
#include <thread>

#include "httplib.h"

namespace ckg_test {

class StubServer {
 public:
  StubServer() = default;
  StubServer(const StubServer &) = delete;
  StubServer &operator=(const StubServer &) = delete;
  ~StubServer() { stop(); }

  httplib::Server &server() { return server_; }

  void start() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    while (!server_.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }

  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

  int port() const { return port_; }
  std::string url(const std::string &path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

  std::atomic<int> hits{0};

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace ckg_test

#endif  // CONCEPTKG_TESTS_STUB_SERVER_HPP_
