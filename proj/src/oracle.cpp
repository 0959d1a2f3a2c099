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

#include "qromlift/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qromlift/errors.hpp"
#include "qromlift/rng.hpp"

namespace qromlift {

void validate_oracle(const OracleTable& h) {
  if (h.M < 1 || h.N < 1) {
    throw std::invalid_argument("oracle table needs M >= 1 and N >= 1");
  }
  if (static_cast<int>(h.values.size()) != h.M) {
    throw std::invalid_argument("oracle table has " +
                                std::to_string(h.values.size()) +
                                " entries, expected " + std::to_string(h.M));
  }
  for (int v : h.values) {
    if (v < 0 || v >= h.N) {
      throw std::invalid_argument("oracle value " + std::to_string(v) +
                                  " outside [0, " + std::to_string(h.N) + ")");
    }
  }
}

int eval(const OracleTable& h, int x) {
  if (x < 0 || x >= h.M) {
    throw std::out_of_range("oracle point " + std::to_string(x) +
                            " outside [0, " + std::to_string(h.M) + ")");
  }
  return h.values[static_cast<std::size_t>(x)];
}

OutputTuple images(const OracleTable& h, const InputTuple& xs) {
  OutputTuple out;
  out.reserve(xs.size());
  for (int x : xs) out.push_back(eval(h, x));
  return out;
}

OracleTable reprogram(const OracleTable& h, int x, int y) {
  if (x < 0 || x >= h.M) {
    throw std::out_of_range("reprogram point outside domain");
  }
  if (y < 0 || y >= h.N) {
    throw std::out_of_range("reprogram value outside range");
  }
  OracleTable out = h;
  out.values[static_cast<std::size_t>(x)] = y;
  return out;
}

OracleTable reprogram_multi(const OracleTable& h, const InputTuple& xs,
                            const OutputTuple& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("reprogram_multi: tuple lengths differ");
  }
  if (!all_distinct(xs)) {
    throw std::invalid_argument("reprogram_multi: points must be distinct");
  }
  OracleTable out = h;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0 || xs[i] >= h.M) {
      throw std::out_of_range("reprogram point outside domain");
    }
    if (ys[i] < 0 || ys[i] >= h.N) {
      throw std::out_of_range("reprogram value outside range");
    }
    out.values[static_cast<std::size_t>(xs[i])] = ys[i];
  }
  return out;
}

OracleEnumeration::OracleEnumeration(int domain, int range, long long budget)
    : domain_(domain), range_(range) {
  if (domain < 1 || range < 1) {
    throw std::invalid_argument("enumeration needs M >= 1 and N >= 1");
  }
  long long size = 1;
  for (int i = 0; i < domain; ++i) {
    if (size > budget / range) {
      throw CapacityError("oracle enumeration N^M exceeds budget " +
                          std::to_string(budget));
    }
    size *= range;
  }
  size_ = size;
}

OracleTable OracleEnumeration::at(long long index) const {
  if (index < 0 || index >= size_) {
    throw std::out_of_range("oracle enumeration index out of range");
  }
  OracleTable h;
  h.M = domain_;
  h.N = range_;
  h.values.assign(static_cast<std::size_t>(domain_), 0);
  // values[0] is the most significant digit, so ascending index is
  // lexicographic order of the value arrays.
  long long rest = index;
  for (int x = domain_ - 1; x >= 0; --x) {
    h.values[static_cast<std::size_t>(x)] = static_cast<int>(rest % range_);
    rest /= range_;
  }
  return h;
}

OracleTable sample_oracle(int domain, int range, std::mt19937_64& rng) {
  if (domain < 1 || range < 1) {
    throw std::invalid_argument("sample_oracle needs M >= 1 and N >= 1");
  }
  OracleTable h;
  h.M = domain;
  h.N = range;
  h.values.reserve(static_cast<std::size_t>(domain));
  for (int x = 0; x < domain; ++x) {
    h.values.push_back(uniform_below(rng, range));
  }
  return h;
}

OracleTable sample_oracle(int domain, int range, std::uint64_t seed) {
  auto rng = make_engine(seed);
  return sample_oracle(domain, range, rng);
}

bool tuple_equiv(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) return false;
  std::vector<int> sa(a.begin(), a.end());
  std::vector<int> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

bool all_distinct(std::span<const int> xs) {
  std::vector<int> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

std::vector<InputTuple> distinct_tuples(int domain, int k) {
  if (k < 0 || k > domain) {
    throw std::invalid_argument("distinct k-tuples need 0 <= k <= domain");
  }
  std::vector<InputTuple> out;
  InputTuple cur;
  std::vector<bool> used(static_cast<std::size_t>(domain), false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = 0; x < domain; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      used[static_cast<std::size_t>(x)] = true;
      cur.push_back(x);
      self(self);
      cur.pop_back();
      used[static_cast<std::size_t>(x)] = false;
    }
  };
  rec(rec);
  return out;
}

}  // namespace qromlift
