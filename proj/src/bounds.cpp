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

#include "qromlift/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "qromlift/errors.hpp"
#include "qromlift/rng.hpp"

namespace qromlift {

namespace {

using u128 = unsigned __int128;

std::optional<u128> checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

// Exact C(n, r); the running value is always an integer because each prefix
// is itself a binomial coefficient.
std::optional<u128> binom_u128(long long n, long long r) {
  if (r < 0 || r > n) return u128{0};
  r = std::min(r, n - r);
  u128 acc = 1;
  for (long long i = 1; i <= r; ++i) {
    auto m = checked_mul(acc, static_cast<u128>(n - r + i));
    if (!m) return std::nullopt;
    acc = *m / static_cast<u128>(i);
  }
  return acc;
}

std::optional<u128> pow_u128(u128 base, int exp) {
  u128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    auto m = checked_mul(acc, base);
    if (!m) return std::nullopt;
    acc = *m;
  }
  return acc;
}

double factorial_value(int k) {
  double acc = 1.0;
  for (int i = 2; i <= k; ++i) acc *= i;
  return acc;
}

void require_qk(int q, int k) {
  if (q < 0 || k < 1) {
    throw std::invalid_argument("need q >= 0 and k >= 1");
  }
}

}  // namespace

double binomial_log(long long n, long long r) {
  if (r < 0 || r > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(r) + 1.0) -
         std::lgamma(static_cast<double>(n - r) + 1.0);
}

double binomial_value(long long n, long long r) {
  if (const auto exact = binom_u128(n, r)) {
    return static_cast<double>(*exact);
  }
  return std::exp(binomial_log(n, r));
}

double loss_factor(int q, int k) {
  require_qk(q, k);
  if (const auto c = binom_u128(q + k, k)) {
    if (const auto sq = checked_mul(*c, *c)) {
      if (const auto all = checked_mul(*sq, *pow_u128(4, k))) {
        return static_cast<double>(*all);
      }
    }
  }
  return std::exp(2.0 * k * std::log(2.0) + 2.0 * binomial_log(q + k, k));
}

double yz_loss(int q, int k) {
  require_qk(q, k);
  if (const auto v = pow_u128(static_cast<u128>(2 * q + 1), 2 * k)) {
    return static_cast<double>(*v);
  }
  return std::exp(2.0 * k * std::log(2.0 * q + 1.0));
}

LossComparison compare_losses(int q, int k) {
  require_qk(q, k);
  LossComparison cmp;
  cmp.q = q;
  cmp.k = k;
  cmp.coherent = loss_factor(q, k);
  cmp.classical = yz_loss(q, k);
  cmp.ratio = cmp.classical / cmp.coherent;
  cmp.factorial_sq = factorial_value(k) * factorial_value(k);
  cmp.trend = cmp.factorial_sq *
              std::pow((2.0 * q + 1.0) / (2.0 * (q + k)), 2 * k);
  return cmp;
}

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

RelationSpec inversion_relation(int N, const OutputTuple& targets) {
  if (targets.empty()) {
    throw std::invalid_argument("inversion needs at least one target");
  }
  for (int t : targets) {
    if (t < 0 || t >= N) {
      throw std::invalid_argument("inversion target outside the range");
    }
  }
  if (!all_distinct(targets)) {
    throw std::invalid_argument(
        "inversion targets must be distinct (k <= N is necessary)");
  }
  RelationSpec rel;
  rel.k = static_cast<int>(targets.size());
  rel.N = N;
  rel.name = "inversion";
  rel.member = [targets](std::span<const int> ys) {
    return std::equal(ys.begin(), ys.end(), targets.begin(), targets.end());
  };
  return rel;
}

RelationSpec collision_relation(int N, int k) {
  if (k < 1 || N < 1) throw std::invalid_argument("need k >= 1 and N >= 1");
  RelationSpec rel;
  rel.k = k;
  rel.N = N;
  rel.name = "k-collision";
  rel.member = [](std::span<const int> ys) {
    for (int y : ys) {
      if (y != ys[0]) return false;
    }
    return true;
  };
  return rel;
}

RelationSpec search_zero_relation(int N, int k) {
  if (k < 1 || N < 1) throw std::invalid_argument("need k >= 1 and N >= 1");
  RelationSpec rel;
  rel.k = k;
  rel.N = N;
  rel.name = "k-search-zero";
  rel.member = [](std::span<const int> ys) {
    for (int y : ys) {
      if (y != 0) return false;
    }
    return true;
  };
  return rel;
}

namespace {

bool member_up_to_permutation(const RelationSpec& rel, OutputTuple ys) {
  std::sort(ys.begin(), ys.end());
  do {
    if (rel.member(ys)) return true;
  } while (std::next_permutation(ys.begin(), ys.end()));
  return false;
}

}  // namespace

Rational p_of_r_exact(const RelationSpec& rel, long long budget) {
  double work = factorial_value(rel.k);
  long long tuples = 1;
  for (int i = 0; i < rel.k; ++i) {
    tuples *= rel.N;
    work *= rel.N;
    if (work > static_cast<double>(budget)) {
      throw CapacityError("relation enumeration exceeds the tuple budget");
    }
  }
  long long hits = 0;
  OutputTuple ys(static_cast<std::size_t>(rel.k), 0);
  for (long long t = 0; t < tuples; ++t) {
    long long rest = t;
    for (int i = 0; i < rel.k; ++i) {
      ys[static_cast<std::size_t>(i)] = static_cast<int>(rest % rel.N);
      rest /= rel.N;
    }
    if (member_up_to_permutation(rel, ys)) ++hits;
  }
  return make_rational(hits, tuples);
}

SampleEstimate p_of_r_mc(const RelationSpec& rel, long long trials,
                         std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need trials >= 1");
  auto rng = make_engine(derive_seed(seed, "p-of-r"));
  long long hits = 0;
  OutputTuple ys(static_cast<std::size_t>(rel.k), 0);
  for (long long t = 0; t < trials; ++t) {
    for (int i = 0; i < rel.k; ++i) {
      ys[static_cast<std::size_t>(i)] =
          static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(rel.N)));
    }
    if (member_up_to_permutation(rel, ys)) ++hits;
  }
  SampleEstimate est;
  est.trials = trials;
  est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(
      std::max(0.0, est.estimate * (1.0 - est.estimate)) /
      static_cast<double>(trials));
  return est;
}

double lifted_bound(int q, int k, double p_r) {
  if (p_r < 0.0 || p_r > 1.0) {
    throw std::invalid_argument("p_r must be a probability");
  }
  return loss_factor(q, k) * p_r;
}

double bound_inversion(int q, int k, int N) {
  require_qk(q, k);
  const double e = std::exp(1.0);
  const double base = 4.0 * e * (q + k) * (q + k) /
                      (static_cast<double>(N) * k);
  return std::pow(base, k);
}

double bound_collision(int q, int k, int N) {
  require_qk(q, k);
  const double e = std::exp(1.0);
  const double base = 2.0 * e * (q + k) / k;
  return std::pow(base, 2 * k) / std::pow(static_cast<double>(N), k - 1);
}

double bound_search(int q, int k, int N) {
  require_qk(q, k);
  const double e = std::exp(1.0);
  const double base = 4.0 * e * e * (q + k) * (q + k) /
                      (static_cast<double>(N) * k * static_cast<double>(k));
  return std::pow(base, k);
}

bool stirling_chain_check(int q, int k, int N) {
  const double loss = loss_factor(q, k);
  const double n_pow_k = std::pow(static_cast<double>(N), k);
  const double kfact = factorial_value(k);
  const double slack = 1.0 + 1e-12;

  const bool inv = loss * kfact / n_pow_k <= bound_inversion(q, k, N) * slack;
  const bool col =
      loss / std::pow(static_cast<double>(N), k - 1) <=
      bound_collision(q, k, N) * slack;
  const bool sea = loss / n_pow_k <= bound_search(q, k, N) * slack;
  return inv && col && sea;
}

double bound_salted(int q, int k, int N, long long S, long long K,
                    double p_r) {
  (void)N;
  if (S < 1 || K < 1) throw std::invalid_argument("need S >= 1 and K >= 1");
  return 4.0 * static_cast<double>(S) / static_cast<double>(K) +
         4.0 * loss_factor(q, k) * p_r;
}

double bound_nonuniform(int q, int k, long long S, double p_mis,
                        bool literal_form) {
  require_qk(q, k);
  if (S < 1) throw std::invalid_argument("need S >= 1");
  if (p_mis < 0.0 || p_mis > 1.0) {
    throw std::invalid_argument("p_mis must be a probability");
  }
  const double log_binom = binomial_log(S * (q + k), S * k);
  const double binom_part = std::exp(2.0 / static_cast<double>(S) * log_binom);
  const double p_part =
      literal_form ? p_mis : std::pow(p_mis, 1.0 / static_cast<double>(S));
  return 4.0 * std::pow(2.0, 2 * k) * binom_part * p_part;
}

BoundReport make_bound_report(
    std::string name, std::vector<std::pair<std::string, double>> params,
    double value, std::string formula) {
  BoundReport report;
  report.name = std::move(name);
  report.params = std::move(params);
  report.value = value;
  report.vacuous = value > 1.0;
  report.formula = std::move(formula);
  return report;
}

}  // namespace qromlift
