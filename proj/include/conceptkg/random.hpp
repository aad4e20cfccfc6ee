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

#ifndef CONCEPTKG_RANDOM_HPP_
#define CONCEPTKG_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace ckg {

// The std distributions are implementation-defined; these are not, so
// seeded outputs are identical across standard libraries.

// Uniform integer in [0, bound).
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Uniform double in [0, 1) with 53 bits of precision.
inline double uniform_unit(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace ckg

#endif  // CONCEPTKG_RANDOM_HPP_
