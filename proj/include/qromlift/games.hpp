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

#ifndef QROMLIFT_GAMES_HPP_
#define QROMLIFT_GAMES_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qromlift/adversary.hpp"
#include "qromlift/bounds.hpp"
#include "qromlift/oracle.hpp"
#include "qromlift/tolerances.hpp"

namespace qromlift {

// Multi-output search games: the challenger samples an oracle (and a
// challenge), the adversary outputs k points and side output z, and wins if
// the points' images satisfy the game relation.  Values are computed exactly
// by enumerating every oracle, or by Monte Carlo.

using Challenge = std::vector<int>;

struct GameSpec {
  int M = 2;
  int N = 2;
  int k = 1;
  std::string name;

  // The relation reads only the images (given distinct points); required by
  // the lifted bounds, and implies the challenger enforces distinctness.
  bool image_only = false;

  // Scope of the distinctness requirement when image_only: 0 means the whole
  // output tuple, a positive value means each consecutive group of that size
  // (multi-instance play allows repeats across instances).  Must divide k.
  int distinct_group = 0;

  // Uniformly sampled, independent of the oracle.  Use {{}} for games
  // without a challenge.
  std::vector<Challenge> challenges;

  std::function<bool(std::span<const int> xs, std::span<const int> ys, int z,
                     const Challenge& ch, const OracleTable& h)>
      relation;

  // Optional promise: restricts the oracle distribution to tables accepted
  // by the filter (uniform on the accepted set).  Null means no promise.
  std::function<bool(const OracleTable&)> oracle_filter;
};

void validate_game(const GameSpec& game);

// Built-in games by name: "inversion" (challenge is a distinct target
// tuple, win iff ys equals it entrywise), "k-collision" (all images equal),
// "k-search-zero" (all images zero).  All are image-only.
GameSpec make_game(const std::string& name, int M, int N, int k);

// A strategy: one circuit per challenge.  oracle_aware builders may inspect
// the sampled table (useful for calibration fixtures only); they are
// rejected wherever the oracle must stay hidden.
struct GameAdversary {
  std::string label;
  int q = 0;  // queries of every built circuit
  bool oracle_aware = false;
  std::function<AdversaryCircuit(const Challenge& ch, const OracleTable& h)>
      build;
};

GameAdversary fixed_adversary(AdversaryCircuit circ);

// Winning probability, averaged exactly over all (filtered) oracles and all
// challenges.
double game_value_exact(const GameSpec& game, const GameAdversary& adv,
                        long long oracle_budget = kDefaultOracleBudget);

SampleEstimate game_value_mc(const GameSpec& game, const GameAdversary& adv,
                             long long trials, std::uint64_t seed);

// Density of the game relation over uniform images, averaged over
// challenges: the probability that a uniform y-tuple can be permuted into
// the relation.  Requires an image-only game.
double game_p_of_r(const GameSpec& game,
                   long long budget = kDefaultTupleBudget);

struct DerivedGame {
  GameSpec composite;  // the playable game
  GameSpec base;
  std::string kind;
  int copies = 1;
};

// g independent copies, each on its own oracle slice over [g] x [M]; the
// adversary outputs slice-major groups of k points and must win every slice.
DerivedGame direct_product(const GameSpec& game, int g);

// Oracle family indexed by a uniform salt in [K] (domain [K] x [M]); the
// challenge carries the salt index first, then the base challenge.
DerivedGame salt(const GameSpec& game, int K);

// One shared oracle, g simultaneous challenges (concatenated); the adversary
// must win every instance.
DerivedGame multi_instance(const GameSpec& game, int g);

// Embeds one copy of a per-slice strategy into each window of a composite
// game built by direct_product (offsets i*M) or multi_instance (offsets 0).
GameAdversary slicewise_adversary(const GameSpec& base_game,
                                  const GameAdversary& per_slice, int g,
                                  bool shared_window);

// Strategy for a salted game: plays the per-slice strategy inside the
// window named by the challenge's salt index.
GameAdversary salted_adversary(const GameSpec& base_game,
                               const GameAdversary& per_slice, int K);

struct LiftedCheckReport {
  double lifted_value = 0.0;  // the k-query simulator-player's exact value
  double base_value = 0.0;    // the original adversary's exact value
  double loss = 1.0;          // loss_factor(q, k)
  bool holds = false;         // lifted_value >= base_value / loss - slack
  int q = 0;
  int k = 1;
};

// Builds the k-query player that runs the adversary against a fresh
// simulated oracle, records k query points, answers recorded points with
// the real oracle, and outputs the recorded points in the adversary's
// claimed order.  Its exact value is compared against base_value / loss.
LiftedCheckReport lifted_adversary_check(
    const GameSpec& game, const GameAdversary& adv,
    long long oracle_budget = kDefaultOracleBudget,
    long long branch_budget = kDefaultBranchBudget);

}  // namespace qromlift

#endif  // QROMLIFT_GAMES_HPP_
