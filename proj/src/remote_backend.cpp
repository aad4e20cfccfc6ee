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

#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <future>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "conceptkg/error.hpp"
#include "conceptkg/hash.hpp"
#include "conceptkg/oracle.hpp"
#include "http_util.hpp"
#include "json_util.hpp"

namespace ckg::detail {

namespace {

// One file per request: <dir>/<fnv1a(model, prompt hash, question)>.json
// holding {"model","prompt_hash","question","raw","normalized","timestamp"}.
// The full key is stored so a hash collision reads as a miss.
class ResponseCache {
 public:
  explicit ResponseCache(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }

  std::optional<std::string> get(const std::string &model, const std::string &prompt_hash,
                                 std::string_view question) const {
    if (!enabled()) return std::nullopt;
    const std::string path = path_for(model, prompt_hash, question);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
      json entry = json::parse(read_file(path));
      if (entry.at("model") != model || entry.at("prompt_hash") != prompt_hash ||
          entry.at("question") != question) {
        return std::nullopt;
      }
      return entry.at("raw").get<std::string>();
    } catch (const std::exception &) {
      return std::nullopt;
    }
  }

  void put(const std::string &model, const std::string &prompt_hash, std::string_view question,
           const NormalizedAnswer &answer) const {
    if (!enabled()) return;
    json entry = {{"model", model},
                  {"prompt_hash", prompt_hash},
                  {"question", question},
                  {"raw", answer.raw},
                  {"normalized", normalized_name(answer.value)},
                  {"timestamp", static_cast<long long>(std::time(nullptr))}};
    write_file_atomic(path_for(model, prompt_hash, question), entry.dump(2) + "\n");
  }

 private:
  std::string path_for(const std::string &model, const std::string &prompt_hash,
                       std::string_view question) const {
    Fnv1a h;
    h.update(model).separator().update(prompt_hash).separator().update(question);
    return (std::filesystem::path(dir_) / (h.hex() + ".json")).string();
  }

  std::string dir_;
};

// Accepts {"text": ...} and the two common completion shapes.
std::string response_text(const std::string &body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kMalformedResponse, e.what());
  }
  if (doc.is_object()) {
    if (auto it = doc.find("text"); it != doc.end() && it->is_string()) return *it;
    if (auto choices = doc.find("choices"); choices != doc.end() && choices->is_array() &&
                                            !choices->empty()) {
      const json &first = (*choices)[0];
      if (auto t = first.find("text"); t != first.end() && t->is_string()) return *t;
      if (auto m = first.find("message"); m != first.end() && m->is_object()) {
        if (auto c = m->find("content"); c != m->end() && c->is_string()) return *c;
      }
    }
  }
  throw Error(ErrorCode::kMalformedResponse, "response has no text field");
}

class RemoteBackend : public Backend {
 public:
  explicit RemoteBackend(const BackendConfig &config)
      : id_(config.resolved_id()),
        url_(split_url(config.endpoint)),
        model_(config.model),
        max_tokens_(config.max_tokens),
        max_attempts_(std::max(1, config.max_attempts)),
        initial_backoff_(config.initial_backoff_ms),
        max_backoff_(config.max_backoff_ms),
        concurrency_(std::max<std::size_t>(1, config.concurrency)),
        headers_(auth_headers(config.auth_env)),
        cache_(config.cache_dir) {}

  const std::string &id() const override { return id_; }
  std::size_t concurrency() const override { return concurrency_; }
  std::size_t network_calls() const override { return calls_.load(); }

  // Identical (prompt, question) requests are answered once per backend:
  // concurrent duplicates wait for the first, later ones reuse its answer.
  BackendAnswer ask(const PromptTemplate &prompt, std::string_view question) override {
    const std::string prompt_hash = fnv1a_hex(prompt.render_prefix());
    const std::string key = prompt_hash + '\x1f' + std::string(question);
    std::promise<BackendAnswer> mine;
    {
      std::unique_lock lock(mu_);
      if (auto it = answered_.find(key); it != answered_.end()) return {it->second, false, {}};
      if (auto it = inflight_.find(key); it != inflight_.end()) {
        auto pending = it->second;
        lock.unlock();
        return pending.get();
      }
      inflight_.emplace(key, mine.get_future().share());
    }
    try {
      BackendAnswer result = fetch(prompt, prompt_hash, question);
      std::lock_guard lock(mu_);
      if (!result.error) answered_.emplace(key, result.answer);
      inflight_.erase(key);
      mine.set_value(result);
      return result;
    } catch (...) {
      std::lock_guard lock(mu_);
      inflight_.erase(key);
      mine.set_exception(std::current_exception());
      throw;
    }
  }

 private:
  BackendAnswer fetch(const PromptTemplate &prompt, const std::string &prompt_hash, std::string_view question) {
    if (auto raw = cache_.get(model_, prompt_hash, question)) {
      return {normalize_answer(*raw), false, {}};
    }
    const json request = {{"model", model_},
                          {"prompt", prompt.render(question)},
                          {"max_tokens", max_tokens_},
                          {"temperature", 0}};
    try {
      std::string body = with_backoff(max_attempts_, initial_backoff_, max_backoff_, [&] {
        ++calls_;
        return http_post(url_, request.dump(), "application/json", headers_);
      });
      NormalizedAnswer answer = normalize_answer(response_text(body));
      cache_.put(model_, prompt_hash, question, answer);
      return {std::move(answer), false, {}};
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kNetworkError && e.code() != ErrorCode::kMalformedResponse) throw;
      return {{Normalized::kOther, ""}, true, e.what()};
    }
  }

  std::string id_;
  Url url_;
  std::string model_;
  int max_tokens_;
  int max_attempts_;
  std::chrono::milliseconds initial_backoff_;
  std::chrono::milliseconds max_backoff_;
  std::size_t concurrency_;
  HeaderList headers_;
  ResponseCache cache_;
  std::atomic<std::size_t> calls_{0};
  std::mutex mu_;
  std::unordered_map<std::string, NormalizedAnswer> answered_;
  std::unordered_map<std::string, std::shared_future<BackendAnswer>> inflight_;
};

}  // namespace

std::unique_ptr<Backend> make_remote_backend(const BackendConfig &config) {
  return std::make_unique<RemoteBackend>(config);
}

}  // namespace ckg::detail
