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

#include "qromlift/games.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "qromlift/errors.hpp"
#include "qromlift/reprogram.hpp"
#include "qromlift/tolerances.hpp"

using namespace qromlift;

namespace {

// Query point 0, output the answer: finds a zero of h with probability 3/4
// on M = N = 2 (misses only the all-ones table).
GameAdversary zero_hunter() {
  DecisionTree tree;
  tree.nodes.push_back({0, {~0, ~1}});
  tree.leaves.push_back({{0}});
  tree.leaves.push_back({{1}});
  tree.root = 0;
  return fixed_adversary(classical_strategy(2, 2, tree, 1));
}

GameAdversary guesser(int M, int N, int k) {
  InputTuple outputs(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) outputs[static_cast<std::size_t>(i)] = i;
  return fixed_adversary(constant_adversary(M, N, outputs));
}

}  // namespace

TEST_CASE("game construction validates its parameters") {
  CHECK_THROWS_AS(make_game("inversion", 4, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_game("no-such-game", 2, 2, 1), std::invalid_argument);

  GameSpec game = make_game("k-collision", 3, 2, 2);
  game.challenges.clear();
  CHECK_THROWS_AS(validate_game(game), std::invalid_argument);

  GameSpec grouped = make_game("k-search-zero", 3, 2, 2);
  grouped.distinct_group = 2;
  CHECK_NOTHROW(validate_game(grouped));
  grouped.distinct_group = 3;  // does not divide k
  CHECK_THROWS_AS(validate_game(grouped), std::invalid_argument);
}

TEST_CASE("fixed guessing strategies have closed-form values") {
  // Uniform target, uniform table: any fixed point inverts with 1/N per
  // coordinate; distinct points make the events independent.
  CHECK(game_value_exact(make_game("inversion", 3, 2, 1), guesser(3, 2, 1)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(game_value_exact(make_game("inversion", 3, 2, 2), guesser(3, 2, 2)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(game_value_exact(make_game("k-search-zero", 3, 2, 2),
                         guesser(3, 2, 2)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(game_value_exact(make_game("k-collision", 3, 2, 2),
                         guesser(3, 2, 2)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("an adaptive probe finds a zero with probability 3/4") {
  const GameSpec game = make_game("k-search-zero", 2, 2, 1);
  CHECK(game_value_exact(game, zero_hunter()) ==
        doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("challenger rejects out-of-range and duplicate outputs") {
  // image_only games demand distinct points; a duplicated guess always loses.
  const GameSpec game = make_game("k-collision", 3, 2, 2);
  const GameAdversary doubled =
      fixed_adversary(constant_adversary(3, 2, {1, 1}));
  CHECK(game_value_exact(game, doubled) == 0.0);
}

TEST_CASE("promise games condition the table distribution") {
  // Exactly one zero in the table; the aware strategy amplifies that point
  // and lands on it with certainty after one iteration at M = 4.
  GameSpec game = make_game("k-search-zero", 4, 2, 1);
  game.oracle_filter = [](const OracleTable& h) {
    int zeros = 0;
    for (int v : h.values) zeros += v == 0;
    return zeros == 1;
  };

  GameAdversary aware;
  aware.label = "amplify-known-zero";
  aware.q = 1;
  aware.oracle_aware = true;
  aware.build = [](const Challenge&, const OracleTable& h) {
    std::vector<bool> marked(h.values.size());
    for (std::size_t x = 0; x < h.values.size(); ++x) {
      marked[x] = h.values[x] == 0;
    }
    return grover_adversary(4, 2, marked, 1);
  };
  CHECK(game_value_exact(game, aware) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a promise nobody satisfies is reported as a config error") {
  GameSpec game = make_game("k-search-zero", 2, 2, 1);
  game.oracle_filter = [](const OracleTable&) { return false; };
  CHECK_THROWS_AS(game_value_exact(game, guesser(2, 2, 1)), ConfigError);
}

TEST_CASE("monte carlo values agree with exact enumeration") {
  const GameSpec game = make_game("k-search-zero", 2, 2, 1);
  const GameAdversary adv = zero_hunter();
  const double exact = game_value_exact(game, adv);
  const SampleEstimate est = game_value_mc(game, adv, 4000, 19);
  CHECK(std::abs(est.estimate - exact) <= 3 * est.std_error);
  const SampleEstimate replay = game_value_mc(game, adv, 4000, 19);
  CHECK(est.estimate == replay.estimate);
}

TEST_CASE("relation density closed forms") {
  CHECK(game_p_of_r(make_game("inversion", 4, 4, 2)) ==
        doctest::Approx(2.0 / 16.0).epsilon(1e-12));
  CHECK(game_p_of_r(make_game("k-collision", 4, 4, 2)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(game_p_of_r(make_game("k-search-zero", 4, 4, 2)) ==
        doctest::Approx(1.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("independent copies multiply the value") {
  const GameSpec base = make_game("k-search-zero", 2, 2, 1);
  const DerivedGame product = direct_product(base, 2);
  CHECK(product.composite.M == 4);
  CHECK(product.composite.k == 2);

  const GameAdversary both =
      slicewise_adversary(base, zero_hunter(), 2, /*shared_window=*/false);
  CHECK(both.q == 2);
  CHECK(game_value_exact(product.composite, both) ==
        doctest::Approx(0.75 * 0.75).epsilon(1e-12));
}

TEST_CASE("independent inversion copies multiply too") {
  const GameSpec base = make_game("inversion", 2, 2, 1);
  const DerivedGame product = direct_product(base, 2);
  CHECK(product.composite.challenges.size() == 4);
  const GameAdversary both =
      slicewise_adversary(base, guesser(2, 2, 1), 2, /*shared_window=*/false);
  CHECK(game_value_exact(product.composite, both) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("salting preserves the per-salt value") {
  const GameSpec base = make_game("k-search-zero", 2, 2, 1);
  for (int K : {1, 2}) {
    const DerivedGame salted = salt(base, K);
    CHECK(salted.composite.M == 2 * K);
    CHECK(salted.composite.challenges.size() == static_cast<std::size_t>(K));
    const GameAdversary adv = salted_adversary(base, zero_hunter(), K);
    CHECK(game_value_exact(salted.composite, adv) ==
          doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("shared-oracle copies correlate instead of multiplying") {
  const GameSpec base = make_game("k-search-zero", 2, 2, 1);
  const DerivedGame mis = multi_instance(base, 2);
  CHECK(mis.composite.M == 2);
  CHECK(mis.composite.k == 2);
  CHECK(mis.composite.distinct_group == 1);

  // Both instances play the same probe on the same table, so they win or
  // lose together: the value stays 3/4, strictly above the independent 9/16.
  const GameAdversary both =
      slicewise_adversary(base, zero_hunter(), 2, /*shared_window=*/true);
  const double value = game_value_exact(mis.composite, both);
  CHECK(value == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(value > 0.75 * 0.75);
}

TEST_CASE("one shared copy is the base game") {
  const GameSpec base = make_game("inversion", 2, 2, 1);
  const DerivedGame mis = multi_instance(base, 1);
  const GameAdversary adv =
      slicewise_adversary(base, guesser(2, 2, 1), 1, /*shared_window=*/true);
  CHECK(game_value_exact(mis.composite, adv) ==
        doctest::Approx(game_value_exact(base, guesser(2, 2, 1)))
            .epsilon(1e-12));
}

TEST_CASE("the recording player clears the discounted bar") {
  SUBCASE("query-free guess on inversion") {
    const GameSpec game = make_game("inversion", 3, 2, 1);
    const LiftedCheckReport rep =
        lifted_adversary_check(game, guesser(3, 2, 1));
    CHECK(rep.loss == doctest::Approx(4.0));
    CHECK(rep.holds);
    CHECK(rep.lifted_value >= rep.base_value / rep.loss - kInequalitySlack);
  }
  SUBCASE("adaptive probe on zero search") {
    const GameSpec game = make_game("k-search-zero", 2, 2, 1);
    const LiftedCheckReport rep = lifted_adversary_check(game, zero_hunter());
    CHECK(rep.q == 1);
    CHECK(rep.holds);
  }
  SUBCASE("scrambled circuit on inversion") {
    const GameSpec game = make_game("inversion", 3, 2, 1);
    const GameAdversary adv =
        fixed_adversary(random_adversary(3, 2, 1, 1, 23));
    const LiftedCheckReport rep = lifted_adversary_check(game, adv);
    CHECK(rep.holds);
  }
  SUBCASE("two recorded points") {
    const GameSpec game = make_game("inversion", 3, 2, 2);
    const GameAdversary adv =
        fixed_adversary(random_adversary(3, 2, 2, 1, 29));
    const LiftedCheckReport rep = lifted_adversary_check(game, adv);
    CHECK(rep.k == 2);
    CHECK(rep.holds);
  }
}

TEST_CASE("the recording player rejects oracle-aware strategies") {
  GameAdversary aware = guesser(2, 2, 1);
  aware.oracle_aware = true;
  CHECK_THROWS_AS(
      lifted_adversary_check(make_game("inversion", 2, 2, 1), aware),
      std::invalid_argument);
}

TEST_CASE("declared and built query counts must agree") {
  GameAdversary lying = guesser(2, 2, 1);
  lying.q = 3;
  CHECK_THROWS_AS(
      game_value_exact(make_game("inversion", 2, 2, 1), lying),
      std::invalid_argument);
}
