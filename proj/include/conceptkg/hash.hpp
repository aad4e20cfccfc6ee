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

#ifndef CONCEPTKG_HASH_HPP_
#define CONCEPTKG_HASH_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace ckg {

// 64-bit FNV-1a. Used for fingerprints and cache keys, so it must never
// change between releases.
class Fnv1a {
 public:
  Fnv1a &update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }

  // Field separator that cannot occur in UTF-8 text.
  Fnv1a &separator() { return update(std::string_view("\xff", 1)); }

  std::uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::string fnv1a_hex(std::string_view bytes) {
  return Fnv1a().update(bytes).hex();
}

}  // namespace ckg

#endif  // CONCEPTKG_HASH_HPP_
