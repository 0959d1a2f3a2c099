// Copyright 2026 The qromlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

// Seed discipline: every randomized component derives its own sub-seed from
// the single top-level seed as
//
//   sub_seed = splitmix64(top_seed ^ fnv1a64(component_tag))
//
// and per-item streams (trial i, adversary i, ...) further derive
// splitmix64(sub_seed + i).  Engines are always mt19937_64 seeded with the
// derived value, so identical (seed, tag, index) triples reproduce the same
// stream regardless of call order elsewhere in the program.

namespace qromlift {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t top_seed, std::string_view tag) {
  return splitmix64(top_seed ^ fnv1a64(tag));
}

inline std::uint64_t derive_seed(std::uint64_t top_seed, std::string_view tag,
                                 std::uint64_t index) {
  return splitmix64(derive_seed(top_seed, tag) + index);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

// Unbiased draw from [0, n) by rejection.  Behaviour depends only on the
// engine stream, unlike std::uniform_int_distribution which is
// implementation-defined.
inline int uniform_below(std::mt19937_64& rng, int n) {
  const std::uint64_t bound = ~0ULL - ~0ULL % static_cast<std::uint64_t>(n);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= bound);
  return static_cast<int>(draw % static_cast<std::uint64_t>(n));
}

// 53-bit uniform draw from [0, 1), again a pure function of the stream.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qromlift
