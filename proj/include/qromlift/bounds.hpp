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

#ifndef QROMLIFT_BOUNDS_HPP_
#define QROMLIFT_BOUNDS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qromlift/oracle.hpp"
#include "qromlift/tolerances.hpp"

namespace qromlift {

// Closed-form side of the toolkit: loss factors of the two simulation
// strategies, the probability p(R) that uniform images can be permuted into
// a relation, and the application bounds built from them.  Combinatorics run
// in exact 128-bit integers and fall back to log-space (lgamma) only when
// the exact path would overflow.

// log C(n, r), valid for huge parameters.
double binomial_log(long long n, long long r);

// C(n, r) as a double: exact-integer path when it fits, else exp of the log.
double binomial_value(long long n, long long r);

// 2^{2k} * C(q+k, k)^2, the simulation overhead of the coherent strategy.
double loss_factor(int q, int k);

// (2q+1)^{2k}, the overhead of the classical measure-then-reprogram strategy.
double yz_loss(int q, int k);

struct LossComparison {
  int q = 0;
  int k = 1;
  double coherent = 0.0;    // loss_factor(q, k)
  double classical = 0.0;   // yz_loss(q, k)
  double ratio = 0.0;       // classical / coherent
  double factorial_sq = 0;  // (k!)^2, the asymptotic value of the ratio
  double trend = 0.0;       // (k!)^2 * ((2q+1) / (2(q+k)))^{2k}
};

// Nothing is asserted here; the ratio approaches (k!)^2 only for q >> k.
LossComparison compare_losses(int q, int k);

// Reduced fraction with positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / den; }
  bool operator==(const Rational&) const = default;
};

Rational make_rational(long long num, long long den);

// A relation over image tuples y in [N]^k, the classical object whose
// density p(R) drives every lifted bound.
struct RelationSpec {
  int k = 1;
  int N = 2;
  std::string name;
  std::function<bool(std::span<const int> ys)> member;
};

// y equals the target tuple entrywise.  Targets must be distinct; with
// repeated targets the permutation count collapses and the k!/N^k closed
// form no longer describes this relation.
RelationSpec inversion_relation(int N, const OutputTuple& targets);

// All k images equal.
RelationSpec collision_relation(int N, int k);

// All k images zero.
RelationSpec search_zero_relation(int N, int k);

// p(R) = #{y : some permutation of y lies in R} / N^k, exact.
// Budget bounds N^k * k!, the enumeration work.
Rational p_of_r_exact(const RelationSpec& rel,
                      long long budget = kDefaultTupleBudget);

struct SampleEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

SampleEstimate p_of_r_mc(const RelationSpec& rel, long long trials,
                         std::uint64_t seed);

// loss_factor(q, k) * p_r: the generic lifted bound on game values.
double lifted_bound(int q, int k, double p_r);

// Closed forms for the three shipped relations.  They can exceed 1 at desk
// scale; callers decide how to report vacuous values.
double bound_inversion(int q, int k, int N);  // (4e(q+k)^2 / (Nk))^k
double bound_collision(int q, int k, int N);  // (2e(q+k)/k)^{2k} / N^{k-1}
double bound_search(int q, int k, int N);     // (4e^2(q+k)^2 / (Nk^2))^k

// The derivation chain behind those closed forms: the exact lifted bound of
// each relation is dominated by its closed form.  Checked with 1e-12
// relative slack; returns false instead of throwing so grids can report.
bool stirling_chain_check(int q, int k, int N);

// 4S/K + 4 * loss_factor(q, k) * p_r: salted games against S bits of
// classical advice over K salts.  N is carried for reporting only.
double bound_salted(int q, int k, int N, long long S, long long K, double p_r);

// 4 * 2^{2k} * C(S(q+k), Sk)^{2/S} * p^{1/S}: games against quantum
// adversaries with S-bit advice, where p is the multi-instance relation
// density.  literal_form drops the 1/S exponent on p (the two published
// phrasings differ; the default is the self-consistent one, which reduces
// to 4 * lifted_bound at S = 1 either way).
double bound_nonuniform(int q, int k, long long S, double p_mis,
                        bool literal_form = false);

// One row of a bounds table.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  double value = 0.0;
  bool vacuous = false;  // value > 1; the raw value is always retained
  std::string formula;
};

BoundReport make_bound_report(std::string name,
                              std::vector<std::pair<std::string, double>> params,
                              double value, std::string formula);

}  // namespace qromlift

#endif  // QROMLIFT_BOUNDS_HPP_
