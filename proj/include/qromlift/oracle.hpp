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
#include <span>
#include <vector>

#include "qromlift/tolerances.hpp"

namespace qromlift {

// Truth table of a function [M] -> [N].  values[x] is the image of x.
struct OracleTable {
  int M = 0;
  int N = 0;
  std::vector<int> values;

  bool operator==(const OracleTable& other) const = default;
};

using InputTuple = std::vector<int>;   // entries in [M]
using OutputTuple = std::vector<int>;  // entries in [N]

// Throws std::invalid_argument unless 0 <= values[x] < N for all x and
// values.size() == M.
void validate_oracle(const OracleTable& h);

// Bounds-checked lookup; throws std::out_of_range on a bad point.
int eval(const OracleTable& h, int x);

OutputTuple images(const OracleTable& h, const InputTuple& xs);

// Copy of h with h(x) := y.
OracleTable reprogram(const OracleTable& h, int x, int y);

// Copy of h with h(x_i) := y_i for all i.  The points must be pairwise
// distinct; a duplicate throws std::invalid_argument before any write.
OracleTable reprogram_multi(const OracleTable& h, const InputTuple& xs,
                            const OutputTuple& ys);

// All N^M tables in lexicographic order of their value arrays, materialized
// lazily by index.  Construction throws CapacityError when N^M exceeds the
// budget.
class OracleEnumeration {
 public:
  OracleEnumeration(int domain, int range,
                    long long budget = kDefaultOracleBudget);

  long long size() const { return size_; }
  OracleTable at(long long index) const;

 private:
  int domain_;
  int range_;
  long long size_;
};

// Uniform table from the given engine stream.
OracleTable sample_oracle(int domain, int range, std::mt19937_64& rng);
OracleTable sample_oracle(int domain, int range, std::uint64_t seed);

// Multiset equality of two tuples (order-insensitive, multiplicities count).
bool tuple_equiv(std::span<const int> a, std::span<const int> b);

// True when all entries are pairwise distinct.
bool all_distinct(std::span<const int> xs);

// Ordered k-tuples of pairwise distinct points in [domain].  Throws
// std::invalid_argument when k > domain.
std::vector<InputTuple> distinct_tuples(int domain, int k);

}  // namespace qromlift
