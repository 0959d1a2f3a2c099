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

#include "qromlift/adversary.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <doctest.h>

#include "qromlift/oracle.hpp"
#include "qromlift/rng.hpp"
#include "qromlift/tolerances.hpp"

using namespace qromlift;

namespace {

// Probability that the run's decoded output equals this exact tuple.
double output_mass(const StateVector& state, const OutputMap& map,
                   const InputTuple& expect) {
  double mass = 0.0;
  for (long long a = 0; a < state.layout.adv_dim; ++a) {
    if (decode_xs(state.layout, map, a) == expect) {
      mass += std::norm(state.amps[a]);
    }
  }
  return mass;
}

// Independent reference for classical_strategy: walk the tree against a
// fixed table and report the leaf outputs.
InputTuple walk_tree(const DecisionTree& tree, const OracleTable& h) {
  int node = tree.root;
  while (node >= 0) {
    const auto& n = tree.nodes[static_cast<std::size_t>(node)];
    node = n.child[static_cast<std::size_t>(eval(h, n.query))];
  }
  return tree.leaves[static_cast<std::size_t>(~node)].outputs;
}

// Adaptive two-query probe on M = 3: the second query depends on the first
// answer, and one path stops at depth 1.
DecisionTree two_level_tree() {
  DecisionTree tree;
  tree.nodes.push_back({0, {1, ~0}});   // h(0)=0 -> probe 1; h(0)=1 -> leaf 0
  tree.nodes.push_back({1, {~1, ~2}});
  tree.leaves.push_back({{0, 2}});
  tree.leaves.push_back({{1, 0}});
  tree.leaves.push_back({{2, 1}});
  tree.root = 0;
  return tree;
}

}  // namespace

TEST_CASE("circuit validation rejects malformed shapes") {
  AdversaryCircuit circ = constant_adversary(3, 2, {1});
  CHECK_NOTHROW(validate_circuit(circ));

  SUBCASE("slot count must equal the query count") {
    circ.q = 1;
    CHECK_THROWS_AS(validate_circuit(circ), std::invalid_argument);
  }
  SUBCASE("outputs are declared before wrapping, answers never") {
    circ.out.ys.push_back(FieldRef::output(2));
    CHECK_THROWS_AS(validate_circuit(circ), std::invalid_argument);
  }
  SUBCASE("at least one output") {
    circ.out.xs.clear();
    CHECK_THROWS_AS(validate_circuit(circ), std::invalid_argument);
  }
}

TEST_CASE("constant adversary outputs its tuple with certainty") {
  const AdversaryCircuit circ = constant_adversary(3, 2, {2, 0});
  CHECK(circ.q == 0);
  const OracleTable h{3, 2, {1, 1, 0}};
  const StateVector state = run(circ, h);
  CHECK(output_mass(state, circ.out, {2, 0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("base_program counts queries") {
  const AdversaryCircuit circ =
      classical_strategy(3, 2, two_level_tree(), 2);
  CHECK(circ.q == 2);
  const Program prog = base_program(circ);
  CHECK(prog.query_count == 2);
}

TEST_CASE("tree validation and depth") {
  DecisionTree tree = two_level_tree();
  CHECK(tree_depth(tree) == 2);
  CHECK_NOTHROW(validate_tree(tree, 3, 2, 2));

  SUBCASE("query out of domain") {
    tree.nodes[0].query = 3;
    CHECK_THROWS_AS(validate_tree(tree, 3, 2, 2), std::invalid_argument);
  }
  SUBCASE("child fan-out must match the range") {
    tree.nodes[0].child.push_back(~0);
    CHECK_THROWS_AS(validate_tree(tree, 3, 2, 2), std::invalid_argument);
  }
  SUBCASE("cycles are rejected") {
    tree.nodes[1].child[0] = 0;
    CHECK_THROWS_AS(validate_tree(tree, 3, 2, 2), std::invalid_argument);
  }
}

TEST_CASE("classical strategy reproduces the tree walk on every table") {
  const DecisionTree tree = two_level_tree();
  const AdversaryCircuit circ = classical_strategy(3, 2, tree, 2);
  OracleEnumeration tables(3, 2);
  for (long long i = 0; i < tables.size(); ++i) {
    const OracleTable h = tables.at(i);
    const StateVector state = run(circ, h);
    CHECK(output_mass(state, circ.out, walk_tree(tree, h)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("amplitude amplification hits the closed form") {
  for (int M : {2, 4, 8}) {
    std::vector<bool> marked(static_cast<std::size_t>(M), false);
    marked[0] = true;
    const OracleTable h{M, 2, std::vector<int>(static_cast<std::size_t>(M), 0)};
    for (int t = 0; t <= 3; ++t) {
      const AdversaryCircuit circ = grover_adversary(M, 2, marked, t);
      CHECK(circ.q == t);
      const StateVector state = run(circ, h);
      const double hit =
          register_marginal(state, FieldRef::input(M))[0];
      const double angle = std::asin(1.0 / std::sqrt(M));
      const double expect = std::pow(std::sin((2 * t + 1) * angle), 2);
      CHECK(hit == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("random circuits are seeded and norm-preserving") {
  const OracleTable h{3, 2, {0, 1, 1}};
  const AdversaryCircuit a = random_adversary(3, 2, 2, 2, 77);
  const AdversaryCircuit b = random_adversary(3, 2, 2, 2, 77);
  const AdversaryCircuit c = random_adversary(3, 2, 2, 2, 78);
  const StateVector sa = run(a, h);
  const StateVector sb = run(b, h);
  const StateVector sc = run(c, h);
  CHECK((sa.amps - sb.amps).norm() == 0.0);
  CHECK((sa.amps - sc.amps).norm() > 1e-3);
  CHECK(std::abs(norm_sq(sa) - 1.0) < kUnitarityTol);
}

TEST_CASE("read-out wrapping fills the answer slots from the oracle") {
  const AdversaryCircuit circ = constant_adversary(3, 2, {2, 0});
  const WrappedAdversary wrapped = wrap_with_readout(circ, 2);
  CHECK(wrapped.program.query_count == 2);
  REQUIRE(wrapped.program.out.ys.size() == 2);

  OracleEnumeration tables(3, 2);
  for (long long i = 0; i < tables.size(); ++i) {
    const OracleTable h = tables.at(i);
    const StateVector state = run(wrapped.program, h);
    double mass = 0.0;
    for (long long a = 0; a < state.layout.adv_dim; ++a) {
      if (decode_xs(state.layout, wrapped.program.out, a) ==
              InputTuple{2, 0} &&
          decode_ys(state.layout, wrapped.program.out, a) ==
              OutputTuple{eval(h, 2), eval(h, 0)}) {
        mass += std::norm(state.amps[a]);
      }
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("wrapped runs are consistent with the queried table by "
          "construction") {
  const AdversaryCircuit circ = random_adversary(3, 2, 1, 2, 5);
  const WrappedAdversary wrapped = wrap_with_readout(circ, 1);
  const OracleTable h{3, 2, {1, 0, 1}};
  const StateVector state = run(wrapped.program, h);
  const StateVector kept =
      project_predicate(state, trivial_predicate(1), h, wrapped.program.out);
  CHECK(std::abs(norm_sq(kept) - norm_sq(state)) < kEqualityTol);
}

TEST_CASE("wrapping validates the arity") {
  const AdversaryCircuit circ = constant_adversary(3, 2, {1});
  CHECK_THROWS_AS(wrap_with_readout(circ, 2), std::invalid_argument);
}

TEST_CASE("slice embedding keeps per-window behaviour") {
  const AdversaryCircuit left = constant_adversary(2, 2, {1});
  const AdversaryCircuit right = constant_adversary(3, 2, {0});
  const AdversaryCircuit composite = embed_slices({left, right}, {0, 2}, 5, 2);
  CHECK(composite.M == 5);
  const OracleTable h{5, 2, {0, 1, 1, 0, 1}};
  const StateVector state = run(composite, h);
  CHECK(output_mass(state, composite.out, {1, 2}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("slice embedding with a shared window overlays the same domain") {
  const AdversaryCircuit one = constant_adversary(3, 2, {2});
  const AdversaryCircuit two = constant_adversary(3, 2, {1});
  const AdversaryCircuit composite = embed_slices({one, two}, {0, 0}, 3, 2);
  CHECK(composite.M == 3);
  const OracleTable h{3, 2, {0, 0, 1}};
  const StateVector state = run(composite, h);
  CHECK(output_mass(state, composite.out, {2, 1}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("slice embedding of query circuits answers from the right window") {
  // An adaptive probe in a shifted window must see the window's slice of the
  // composite table.
  DecisionTree tree;
  tree.nodes.push_back({1, {~0, ~1}});
  tree.leaves.push_back({{0}});
  tree.leaves.push_back({{1}});
  tree.root = 0;
  const AdversaryCircuit probe = classical_strategy(2, 2, tree, 1);
  const AdversaryCircuit composite = embed_slices({probe}, {3}, 5, 2);

  OracleEnumeration tables(5, 2, 1 << 6);
  for (long long i = 0; i < tables.size(); ++i) {
    const OracleTable h = tables.at(i);
    // Window point 1 sits at composite point 4.
    const int expect = 3 + eval(h, 4);
    const StateVector state = run(composite, h);
    CHECK(output_mass(state, composite.out, {expect}) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}
