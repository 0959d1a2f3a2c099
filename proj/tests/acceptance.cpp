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

// Shipping gate: every numerical claim the library makes, checked end to end
// at its stated tolerance.  One PASS/FAIL line per claim; exit status is
// nonzero if any claim fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qromlift/adversary.hpp"
#include "qromlift/bounds.hpp"
#include "qromlift/cli.hpp"
#include "qromlift/games.hpp"
#include "qromlift/oracle.hpp"
#include "qromlift/report.hpp"
#include "qromlift/reprogram.hpp"
#include "qromlift/rng.hpp"
#include "qromlift/statevec.hpp"
#include "qromlift/tolerances.hpp"

using namespace qromlift;
using nlohmann::json;

namespace {

struct Tally {
  long long checked = 0;
  long long failed = 0;
  std::string detail;

  void expect(bool ok) {
    ++checked;
    if (!ok) ++failed;
  }
  bool pass() const { return failed == 0 && checked > 0; }
};

int g_criteria_failed = 0;

void run_criterion(int index, const std::string& title,
                   const std::function<void(Tally&)>& body) {
  Tally tally;
  std::string error;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(tally);
  } catch (const std::exception& e) {
    error = e.what();
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();

  const bool pass = error.empty() && tally.pass();
  if (!pass) ++g_criteria_failed;
  std::cout << (pass ? "PASS" : "FAIL") << "  " << index << ". " << title
            << ": ";
  if (!error.empty()) {
    std::cout << "exception: " << error;
  } else {
    std::cout << (tally.checked - tally.failed) << "/" << tally.checked
              << " checks";
    if (!tally.detail.empty()) std::cout << "; " << tally.detail;
  }
  std::cout << " [" << ms << " ms]" << std::endl;
}

// --- 1. pointwise lifting inequality -----------------------------------------

void criterion_lifting_inequality(Tally& tally) {
  // Full enumeration at one recorded point.
  {
    const int M = 3, N = 2, k = 1, q = 2;
    std::vector<AdversaryCircuit> advs;
    for (std::uint64_t s : {101, 102, 103, 104, 105}) {
      advs.push_back(random_adversary(M, N, k, q, s));
    }
    advs.push_back(constant_adversary(M, N, {0}));  // deterministic, q = 0

    const Predicate v = trivial_predicate(k);
    OracleEnumeration tables(M, N);
    const std::vector<InputTuple> points = distinct_tuples(M, k);
    for (const AdversaryCircuit& circ : advs) {
      const WrappedAdversary wrapped = wrap_with_readout(circ, k);
      for (long long hi = 0; hi < tables.size(); ++hi) {
        const OracleTable h = tables.at(hi);
        for (long long gi = 0; gi < tables.size(); ++gi) {
          const OracleTable g = tables.at(gi);
          for (const InputTuple& x_o : points) {
            tally.expect(coherent_sim_exact(wrapped, h, g, x_o, v).holds);
          }
        }
      }
    }
  }

  // Seeded sample of triples at two recorded points.
  {
    const int M = 4, N = 2, k = 2, q = 2;
    std::vector<AdversaryCircuit> advs;
    for (std::uint64_t s : {201, 202, 203, 204, 205}) {
      advs.push_back(random_adversary(M, N, k, q, s));
    }
    advs.push_back(constant_adversary(M, N, {0, 1}));  // deterministic, q = 0

    const Predicate v = trivial_predicate(k);
    OracleEnumeration tables(M, N);
    const std::vector<InputTuple> points = distinct_tuples(M, k);
    auto rng = make_engine(derive_seed(2026, "acceptance-triples"));
    long long sampled = 0;
    for (const AdversaryCircuit& circ : advs) {
      const WrappedAdversary wrapped = wrap_with_readout(circ, k);
      for (int rep = 0; rep < 4; ++rep) {
        const OracleTable h = tables.at(static_cast<long long>(
            uniform_below(rng, static_cast<std::uint64_t>(tables.size()))));
        const OracleTable g = tables.at(static_cast<long long>(
            uniform_below(rng, static_cast<std::uint64_t>(tables.size()))));
        const InputTuple x_o = points.at(static_cast<std::size_t>(
            uniform_below(rng, static_cast<std::uint64_t>(points.size()))));
        tally.expect(coherent_sim_exact(wrapped, h, g, x_o, v).holds);
        ++sampled;
      }
    }
    std::ostringstream d;
    d << "full (3,2,1,2) enumeration plus " << sampled
      << " sampled (4,2,2,2) triples, 6 adversaries each";
    tally.detail = d.str();
  }
}

// --- 2. hand-computed two-branch fixture --------------------------------------

void criterion_hand_fixture(Tally& tally) {
  const OracleTable h{2, 2, {0, 0}};
  const OracleTable g{2, 2, {1, 0}};
  const WrappedAdversary wrapped =
      wrap_with_readout(constant_adversary(2, 2, {0}), 1);
  const ExperimentResult r =
      coherent_sim_exact(wrapped, h, g, {0}, trivial_predicate(1), true);
  tally.expect(std::abs(r.lhs - 0.5) <= kEqualityTol);
  tally.expect(std::abs(r.rhs - 1.0) <= kEqualityTol);
  tally.expect(r.loss == 4.0);
  tally.expect(r.holds);
  std::ostringstream d;
  d << "lhs=" << r.lhs << " rhs=" << r.rhs << " loss=" << r.loss;
  tally.detail = d.str();
}

// --- 3. recorded images are uniform when averaged over G ----------------------

void criterion_uniform_images(Tally& tally) {
  struct Config {
    int M, q;
    std::uint64_t seed;
  };
  double worst = 0.0;
  for (const Config& c : {Config{2, 1, 11}, Config{2, 2, 12}, Config{3, 1, 13}}) {
    const int N = 2, k = 1;
    const AdversaryCircuit circ = random_adversary(c.M, N, k, c.q, c.seed);
    const WrappedAdversary wrapped = wrap_with_readout(circ, k);
    OracleEnumeration hs(c.M, N);
    const std::vector<BranchChoice> branches = enumerate_branches(c.q + k, k);
    for (long long hi = 0; hi < hs.size(); ++hi) {
      const OracleTable h = hs.at(hi);
      for (const BranchChoice& choice : branches) {
        const UniformImagesReport rep = uniform_images_check(wrapped, h, choice);
        worst = std::max(worst, rep.averaged_deviation);
        tally.expect(rep.averaged_deviation <= kInequalitySlack);
      }
    }
  }
  std::ostringstream d;
  d << "every oracle and branch choice; worst averaged deviation " << worst;
  tally.detail = d.str();
}

// --- 4. relation densities as exact rationals ---------------------------------

void criterion_density_closed_forms(Tally& tally) {
  std::string note;
  for (int N : {2, 4, 8}) {
    for (int k : {1, 2, 3}) {
      long long nk = 1, kfact = 1;
      for (int i = 0; i < k; ++i) nk *= N;
      for (int i = 2; i <= k; ++i) kfact *= i;

      if (k <= N) {
        OutputTuple targets(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) targets[static_cast<std::size_t>(i)] = i;
        tally.expect(p_of_r_exact(inversion_relation(N, targets)) ==
                     make_rational(kfact, nk));
      } else {
        // k distinct targets cannot exist in a range of size N < k; the
        // constructor must refuse rather than silently test a different
        // relation.
        bool rejected = false;
        try {
          (void)inversion_relation(N, OutputTuple{0, 1, 0});
        } catch (const std::invalid_argument&) {
          rejected = true;
        }
        tally.expect(rejected);
        std::ostringstream n;
        n << "inversion at N=" << N << ", k=" << k
          << " rejected (distinct targets need k <= N)";
        note = n.str();
      }
      tally.expect(p_of_r_exact(collision_relation(N, k)) ==
                   make_rational(1, nk / N));
      tally.expect(p_of_r_exact(search_zero_relation(N, k)) ==
                   make_rational(1, nk));
    }
  }
  tally.detail = "N in {2,4,8}, k in {1,2,3}; " + note;
}

// --- 5. game values never beat loss times density -----------------------------

void criterion_game_bounds(Tally& tally) {
  const int N = 2;
  long long cases = 0;
  for (int M : {2, 3, 4}) {
    for (int k : {1, 2}) {
      if (k > M) continue;
      std::vector<GameAdversary> advs;

      InputTuple guess_out(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) guess_out[static_cast<std::size_t>(i)] = i;
      advs.push_back(fixed_adversary(constant_adversary(M, N, guess_out)));

      if (k == 1) {
        // Depth-2 probe: output the first point seen to map to zero.
        DecisionTree tree;
        tree.nodes.push_back({0, {~0, 1}});
        tree.nodes.push_back({1, {~1, ~2}});
        tree.leaves.push_back({{0}});
        tree.leaves.push_back({{1}});
        tree.leaves.push_back({{0}});
        tree.root = 0;
        advs.push_back(fixed_adversary(classical_strategy(M, N, tree, 1)));

        std::vector<bool> marked(static_cast<std::size_t>(M), false);
        marked[0] = true;
        for (int t = 1; t <= 2; ++t) {
          advs.push_back(fixed_adversary(grover_adversary(M, N, marked, t)));
        }
      }
      for (std::uint64_t s : {31, 32, 33}) {
        advs.push_back(fixed_adversary(random_adversary(M, N, k, 2, s)));
      }

      for (const char* name : {"inversion", "k-collision", "k-search-zero"}) {
        const GameSpec game = make_game(name, M, N, k);
        const double p_r = game_p_of_r(game);
        for (const GameAdversary& adv : advs) {
          const double value = game_value_exact(game, adv);
          const double bound = lifted_bound(adv.q, k, p_r);
          tally.expect(value <= bound + kInequalitySlack);
          ++cases;
        }
      }
    }
  }
  std::ostringstream d;
  d << cases << " (game, adversary) pairs at M <= 4, N = 2, k <= 2";
  tally.detail = d.str();
}

// --- 6. amplitude amplification calibration -----------------------------------

void criterion_grover_calibration(Tally& tally) {
  for (int M : {2, 4, 8}) {
    std::vector<bool> marked(static_cast<std::size_t>(M), false);
    marked[0] = true;
    const OracleTable h{M, 2, std::vector<int>(static_cast<std::size_t>(M), 0)};
    for (int t = 0; t <= 3; ++t) {
      const AdversaryCircuit circ = grover_adversary(M, 2, marked, t);
      const StateVector state = run(circ, h);
      const double hit = register_marginal(state, FieldRef::input(M))[0];
      const double angle = std::asin(1.0 / std::sqrt(M));
      const double expect = std::pow(std::sin((2 * t + 1) * angle), 2);
      tally.expect(std::abs(hit - expect) <= kInequalitySlack);
      if (M == 4 && t == 1) {
        tally.expect(std::abs(hit - 1.0) <= kInequalitySlack);
      }
    }
  }

  // Search with range equal to domain: any t-query strategy stays below
  // 4(t+1)^2 / N.
  for (int M : {2, 4}) {
    const GameSpec game = make_game("k-search-zero", M, M, 1);
    std::vector<bool> marked(static_cast<std::size_t>(M), false);
    marked[0] = true;
    for (int t = 0; t <= 2; ++t) {
      const GameAdversary adv =
          fixed_adversary(grover_adversary(M, M, marked, t));
      const double value = game_value_exact(game, adv);
      const double bound = 4.0 * (t + 1) * (t + 1) / M;
      tally.expect(value <= bound + kInequalitySlack);
    }
  }
  tally.detail = "closed form on M in {2,4,8}, t <= 3; (M=4,t=1) saturates";
}

// --- 7. Stirling domination grid ----------------------------------------------

void criterion_stirling_grid(Tally& tally) {
  for (int q = 0; q <= 10; ++q) {
    for (int k = 1; k <= 4; ++k) {
      for (int N : {2, 4, 16, 256}) {
        tally.expect(stirling_chain_check(q, k, N));
      }
    }
  }
  tally.detail = "q in 0..10, k in 1..4, N in {2,4,16,256}";
}

// --- 8. loss comparison against the prior strategy ----------------------------

void criterion_loss_comparison(Tally& tally) {
  const LossComparison at = compare_losses(100, 4);
  tally.expect(at.ratio >= 0.5 * 576.0);
  tally.expect(at.ratio <= 2.0 * 576.0);

  double prev = compare_losses(10, 4).ratio;
  for (int q = 11; q <= 200; ++q) {
    const double cur = compare_losses(q, 4).ratio;
    tally.expect(cur >= prev);
    prev = cur;
  }
  std::ostringstream d;
  d << "ratio(100,4)=" << at.ratio << " vs (k!)^2=576; nondecreasing on 10..200";
  tally.detail = d.str();
}

// --- 9. classical baseline sanity ----------------------------------------------

void criterion_classical_baseline(Tally& tally) {
  const long long trials = 100000;

  // Query-free fixture: the experiment is deterministic, so the sampled
  // value must match exactly.
  {
    const AdversaryCircuit circ = constant_adversary(2, 2, {0});
    const OracleTable h{2, 2, {0, 0}};
    const Predicate v = trivial_predicate(1);
    const SampleEstimate est =
        classical_mr_sample(circ, h, {0}, {1}, v, trials, 71);
    const double direct = classical_direct_value(circ, h, {0}, {1}, v);
    tally.expect(std::abs(est.estimate - direct) <= 3 * est.std_error);
    tally.expect(std::abs(est.estimate - 1.0) <= kEqualityTol);
  }

  // Desk fixtures: scaled success dominates the direct run within noise.
  struct Fixture {
    AdversaryCircuit circ;
    OracleTable h;
    InputTuple x_o;
    OutputTuple y;
    std::uint64_t seed;
  };
  DecisionTree tree;
  tree.nodes.push_back({0, {~0, ~1}});
  tree.leaves.push_back({{0}});
  tree.leaves.push_back({{1}});
  tree.root = 0;

  std::vector<Fixture> fixtures;
  fixtures.push_back({constant_adversary(2, 2, {0}),
                      {2, 2, {0, 0}}, {0}, {1}, 72});
  fixtures.push_back({classical_strategy(2, 2, tree, 1),
                      {2, 2, {1, 0}}, {0}, {0}, 73});
  fixtures.push_back({classical_strategy(2, 2, tree, 1),
                      {2, 2, {1, 0}}, {1}, {1}, 74});
  fixtures.push_back({random_adversary(3, 2, 1, 1, 41),
                      {3, 2, {0, 1, 1}}, {2}, {0}, 75});
  fixtures.push_back({random_adversary(3, 2, 1, 2, 42),
                      {3, 2, {1, 0, 1}}, {0}, {1}, 76});
  fixtures.push_back({random_adversary(3, 2, 2, 1, 43),
                      {3, 2, {0, 0, 1}}, {0, 2}, {1, 0}, 77});

  for (const Fixture& f : fixtures) {
    const int k = static_cast<int>(f.x_o.size());
    const Predicate v = trivial_predicate(k);
    const SampleEstimate est =
        classical_mr_sample(f.circ, f.h, f.x_o, f.y, v, trials, f.seed);
    const double direct = classical_direct_value(f.circ, f.h, f.x_o, f.y, v);
    const double scale = yz_loss(f.circ.q, k);
    tally.expect(est.estimate * scale >=
                 direct - 3 * est.std_error * scale - kInequalitySlack);
  }
  std::ostringstream d;
  d << fixtures.size() + 1 << " fixtures, " << trials << " trials each";
  tally.detail = d.str();
}

// --- 10. byte-identical reruns --------------------------------------------------

void criterion_determinism(Tally& tally) {
  const std::vector<json> configs = {
      {{"suite", "verify-lift"}, {"M", 2}, {"N", 2}, {"k", 1}, {"q", 1},
       {"adversary", "random"}, {"seed", 3}},
      {{"suite", "uniform-images"}, {"M", 2}, {"N", 2}, {"k", 1}, {"q", 2},
       {"seed", 4}},
      {{"suite", "game-value"}, {"M", 3}, {"N", 2}, {"k", 1}, {"q", 1},
       {"adversary", "classical"}, {"relation", "k-search-zero"}, {"seed", 5}},
      {{"suite", "bounds-table"}, {"N", 4}, {"q", 2}, {"k", 2}},
      {{"suite", "p-of-r"}, {"relation", "k-collision"}, {"N", 4}, {"k", 2},
       {"trials", 2000}, {"seed", 6}},
      {{"suite", "compare-losses"}, {"q", 5}, {"k", 2}},
      {{"suite", "classical-mr"}, {"M", 2}, {"N", 2}, {"k", 1}, {"q", 1},
       {"trials", 400}, {"seed", 7}},
  };
  for (const json& raw : configs) {
    const ConfigOutcome outcome = validate_config(raw);
    tally.expect(outcome.config.has_value());
    if (!outcome.config) continue;
    const SuiteOutput a = run_suite(*outcome.config);
    const SuiteOutput b = run_suite(*outcome.config);
    tally.expect(a.report.contains("timing"));
    tally.expect(strip_timing(a.report).dump() == strip_timing(b.report).dump());
    tally.expect(a.csv == b.csv);
    tally.expect(a.exit_status == 0);
  }
  tally.detail = "all seven suites rerun byte-identically modulo timing";
}

}  // namespace

int main() {
  std::cout << "qromlift acceptance gate (tolerances: equality "
            << kEqualityTol << ", inequality slack " << kInequalitySlack
            << ")" << std::endl;

  run_criterion(1, "coherent lifting inequality, pointwise over (H, G, x_o)",
                criterion_lifting_inequality);
  run_criterion(2, "hand-computed two-branch fixture (lhs 0.5, rhs 1.0)",
                criterion_hand_fixture);
  run_criterion(3, "recorded images uniform when averaged over G",
                criterion_uniform_images);
  run_criterion(4, "relation densities equal their closed-form rationals",
                criterion_density_closed_forms);
  run_criterion(5, "game values bounded by loss times density",
                criterion_game_bounds);
  run_criterion(6, "amplitude amplification calibration and search bound",
                criterion_grover_calibration);
  run_criterion(7, "closed-form bounds dominate exact lifted bounds",
                criterion_stirling_grid);
  run_criterion(8, "loss ratio near the squared-factorial saving",
                criterion_loss_comparison);
  run_criterion(9, "classical baseline matches and scales",
                criterion_classical_baseline);
  run_criterion(10, "seeded reruns are byte-identical modulo timing",
                criterion_determinism);

  if (g_criteria_failed == 0) {
    std::cout << "acceptance: all 10 criteria passed" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << g_criteria_failed << " criteria FAILED"
            << std::endl;
  return 1;
}
