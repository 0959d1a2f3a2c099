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

#ifndef QROMLIFT_REPROGRAM_HPP_
#define QROMLIFT_REPROGRAM_HPP_

#include <cstdint>
#include <vector>

#include "qromlift/adversary.hpp"
#include "qromlift/bounds.hpp"
#include "qromlift/oracle.hpp"
#include "qromlift/statevec.hpp"
#include "qromlift/tolerances.hpp"

namespace qromlift {

// Two ways to trade one oracle for another mid-run.
//
// The coherent experiment runs a wrapped adversary with a control register:
// at k chosen queries the current query point is recorded into the control
// set (a projection, so collisions abort), and every query answers with G on
// recorded points and H elsewhere.  Averaged over the choice of positions
// and orderings, the probability of recording exactly the target points and
// passing the output predicate is at most a loss factor below the success of
// a plain run against the reprogrammed oracle.
//
// The classical experiment instead measures the query input register
// outright at sampled positions and overwrites the table at the measured
// points.  It is the baseline the coherent version improves on.

// One choice of instrumented positions: positions are 1-based query indices
// into the wrapped run (strictly increasing), bits choose record-then-query
// (0) or query-then-record (1) at each.
struct BranchChoice {
  std::vector<int> positions;
  std::vector<int> bits;
};

// All C(total_queries, k) * 2^k choices, positions over 1..total_queries.
std::vector<BranchChoice> enumerate_branches(
    int total_queries, int k, long long budget = kDefaultBranchBudget);

BranchChoice sample_branch(int total_queries, int k, std::mt19937_64& rng);

// Final state of the coherent run for one branch choice, before any
// projection: gates and record operations per the choice, every query
// answered by G on recorded points and H elsewhere.
StateVector coherent_branch_state(const WrappedAdversary& adv,
                                  const OracleTable& h, const OracleTable& g,
                                  const BranchChoice& choice);

// Probability that the coherent run with this branch choice ends with the
// control set equal to set(x_o), the decoded output a permutation of x_o,
// and the predicate (checked against H reprogrammed to G on x_o) accepting.
double run_branch(const WrappedAdversary& adv, const OracleTable& h,
                  const OracleTable& g, const InputTuple& x_o,
                  const BranchChoice& choice, const Predicate& v);

struct BranchOutcome {
  BranchChoice choice;
  double p = 0.0;
};

struct ExperimentResult {
  double lhs = 0.0;   // branch-averaged coherent success
  double rhs = 0.0;   // plain run against the reprogrammed oracle
  double loss = 1.0;  // loss_factor(q, k)
  bool holds = false; // lhs * loss >= rhs - slack
  int q = 0;          // base queries (wrapped run makes q + k)
  int k = 0;
  std::string adversary_label;
  InputTuple x_o;
  std::vector<BranchOutcome> per_branch;  // filled on request
};

ExperimentResult coherent_sim_exact(
    const WrappedAdversary& adv, const OracleTable& h, const OracleTable& g,
    const InputTuple& x_o, const Predicate& v, bool record_branches = false,
    long long branch_budget = kDefaultBranchBudget);

// Unbiased estimate of the exact lhs: branches are sampled uniformly and
// each sampled branch is still evaluated exactly.
SampleEstimate coherent_sim_sample(const WrappedAdversary& adv,
                                   const OracleTable& h, const OracleTable& g,
                                   const InputTuple& x_o, const Predicate& v,
                                   long long trials, std::uint64_t seed);

// Classical baseline on the unwrapped circuit: per trial, sample for each of
// the k slots either a query index with a before/after bit or a skip, with
// distinct indices; projectively measure the input register there, overwrite
// the table at the measured point with y_target, and continue.  Skipped
// slots take the adversary's own j-th output as the measured value.  Returns
// the mean probability that the measured tuple is a permutation of x_o and
// the predicate accepts on it.
SampleEstimate classical_mr_sample(const AdversaryCircuit& adv,
                                   const OracleTable& h, const InputTuple& x_o,
                                   const OutputTuple& y_target,
                                   const Predicate& v, long long trials,
                                   std::uint64_t seed);

// Comparison point for the baseline: probability that a plain run against
// H reprogrammed to y_target on x_o outputs a permutation of x_o and passes
// the predicate.
double classical_direct_value(const AdversaryCircuit& adv,
                              const OracleTable& h, const InputTuple& x_o,
                              const OutputTuple& y_target, const Predicate& v);

struct UniformImagesReport {
  // max_t | P(images = t | no abort) - N^{-k} |, G averaged uniformly
  double averaged_deviation = 0.0;
  // the same maximum for the worst single G, reported only (it is not small)
  double worst_single_g = 0.0;
  // 1 - P(no abort), G averaged
  double abort_mass = 0.0;
};

// Distribution of the recorded points' G-images at the end of the coherent
// run (no final projections), averaged over every G table.  The averaged
// distribution is uniform over [N]^k; per-G it generally is not.
UniformImagesReport uniform_images_check(
    const WrappedAdversary& adv, const OracleTable& h,
    const BranchChoice& choice, long long oracle_budget = kDefaultOracleBudget);

}  // namespace qromlift

#endif  // QROMLIFT_REPROGRAM_HPP_
