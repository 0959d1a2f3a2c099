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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qromlift/errors.hpp"
#include "qromlift/reprogram.hpp"
#include "qromlift/rng.hpp"
#include "qromlift/statevec.hpp"

namespace qromlift {

namespace {

std::size_t challenge_length(const GameSpec& game) {
  return game.challenges.empty() ? 0 : game.challenges.front().size();
}

// Challenger-side output admissibility: in-domain, and distinct where the
// game demands it (whole tuple, or per instance group for shared-oracle
// composites, steered by distinct_group).
bool admissible_output(const GameSpec& game, std::span<const int> xs) {
  for (int x : xs) {
    if (x < 0 || x >= game.M) return false;
  }
  if (!game.image_only) return true;
  const int group = game.distinct_group > 0 ? game.distinct_group : game.k;
  for (std::size_t start = 0; start < xs.size();
       start += static_cast<std::size_t>(group)) {
    if (!all_distinct(xs.subspan(start, static_cast<std::size_t>(group)))) {
      return false;
    }
  }
  return true;
}

// Exact winning probability of one built circuit against one (H, ch).
double win_probability(const GameSpec& game, const AdversaryCircuit& circ,
                       const OracleTable& h, const Challenge& ch) {
  const Program prog = base_program(circ);
  StateVector state = run(prog, h);
  const RegisterLayout& layout = state.layout;

  double value = 0.0;
  OutputTuple ys(static_cast<std::size_t>(game.k), 0);
  for (long long a = 0; a < layout.adv_dim; ++a) {
    const double w = std::norm(state.amps[a]);
    if (w == 0.0) continue;
    const InputTuple xs = decode_xs(layout, prog.out, a);
    if (!admissible_output(game, xs)) continue;
    for (int i = 0; i < game.k; ++i) {
      ys[static_cast<std::size_t>(i)] =
          eval(h, xs[static_cast<std::size_t>(i)]);
    }
    const int z = decode_z(layout, prog.out, a);
    if (game.relation(xs, ys, z, ch, h)) value += w;
  }
  return value;
}

std::vector<long long> filtered_oracle_indices(const OracleEnumeration& tables,
                                               const GameSpec& game) {
  std::vector<long long> keep;
  for (long long i = 0; i < tables.size(); ++i) {
    if (!game.oracle_filter || game.oracle_filter(tables.at(i))) {
      keep.push_back(i);
    }
  }
  if (keep.empty()) {
    throw ConfigError("the oracle promise rejects every table");
  }
  return keep;
}

AdversaryCircuit build_checked(const GameSpec& game, const GameAdversary& adv,
                               const Challenge& ch, const OracleTable& h) {
  AdversaryCircuit circ = adv.build(ch, h);
  if (circ.M != game.M || circ.N != game.N) {
    throw std::invalid_argument("adversary registers do not match the game");
  }
  if (static_cast<int>(circ.out.xs.size()) != game.k) {
    throw std::invalid_argument("adversary output arity must equal k");
  }
  if (circ.q != adv.q) {
    throw std::invalid_argument(
        "built circuit contradicts the declared query count");
  }
  return circ;
}

std::vector<Challenge> challenge_power(const std::vector<Challenge>& base,
                                       int g) {
  double count = 1.0;
  for (int i = 0; i < g; ++i) count *= static_cast<double>(base.size());
  if (count > 1e6) {
    throw CapacityError("composite challenge set too large to enumerate");
  }
  std::vector<Challenge> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> pick(static_cast<std::size_t>(g), 0);
  while (true) {
    Challenge ch;
    for (int i = 0; i < g; ++i) {
      const Challenge& part = base[pick[static_cast<std::size_t>(i)]];
      ch.insert(ch.end(), part.begin(), part.end());
    }
    out.push_back(std::move(ch));
    int i = g - 1;
    while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == base.size()) {
      pick[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

OracleTable slice_table(const OracleTable& h, int slice, int M) {
  OracleTable out;
  out.M = M;
  out.N = h.N;
  out.values.assign(h.values.begin() + static_cast<std::ptrdiff_t>(slice) * M,
                    h.values.begin() + static_cast<std::ptrdiff_t>(slice + 1) * M);
  return out;
}

}  // namespace

void validate_game(const GameSpec& game) {
  if (game.M < 1 || game.N < 1 || game.k < 1) {
    throw std::invalid_argument("game needs M, N, k >= 1");
  }
  if (game.challenges.empty()) {
    throw std::invalid_argument(
        "game needs at least one challenge; use {{}} for challenge-free");
  }
  const std::size_t len = game.challenges.front().size();
  for (const auto& ch : game.challenges) {
    if (ch.size() != len) {
      throw std::invalid_argument("challenges must share one length");
    }
  }
  if (!game.relation) {
    throw std::invalid_argument("game needs a relation");
  }
  if (game.distinct_group > 0 && game.k % game.distinct_group != 0) {
    throw std::invalid_argument("distinct_group must divide k");
  }
}

GameSpec make_game(const std::string& name, int M, int N, int k) {
  if (M < 1 || N < 1 || k < 1) {
    throw std::invalid_argument("game needs M, N, k >= 1");
  }
  GameSpec game;
  game.M = M;
  game.N = N;
  game.k = k;
  game.name = name;
  game.image_only = true;

  if (name == "inversion") {
    if (k > N) {
      throw std::invalid_argument(
          "inversion needs k <= N: distinct targets cannot exceed the range");
    }
    game.challenges = distinct_tuples(N, k);
    game.relation = [](std::span<const int> /*xs*/, std::span<const int> ys,
                       int /*z*/, const Challenge& ch,
                       const OracleTable& /*h*/) {
      return std::equal(ys.begin(), ys.end(), ch.begin(), ch.end());
    };
  } else if (name == "k-collision") {
    game.challenges = {{}};
    game.relation = [](std::span<const int> /*xs*/, std::span<const int> ys,
                       int /*z*/, const Challenge& /*ch*/,
                       const OracleTable& /*h*/) {
      for (int y : ys) {
        if (y != ys[0]) return false;
      }
      return true;
    };
  } else if (name == "k-search-zero") {
    game.challenges = {{}};
    game.relation = [](std::span<const int> /*xs*/, std::span<const int> ys,
                       int /*z*/, const Challenge& /*ch*/,
                       const OracleTable& /*h*/) {
      for (int y : ys) {
        if (y != 0) return false;
      }
      return true;
    };
  } else {
    throw std::invalid_argument("unknown game: " + name);
  }
  validate_game(game);
  return game;
}

GameAdversary fixed_adversary(AdversaryCircuit circ) {
  validate_circuit(circ);
  GameAdversary adv;
  adv.label = circ.label;
  adv.q = circ.q;
  adv.oracle_aware = false;
  adv.build = [circ](const Challenge&, const OracleTable&) { return circ; };
  return adv;
}

double game_value_exact(const GameSpec& game, const GameAdversary& adv,
                        long long oracle_budget) {
  validate_game(game);
  OracleEnumeration tables(game.M, game.N, oracle_budget);
  const std::vector<long long> keep = filtered_oracle_indices(tables, game);

  double total = 0.0;
  for (const auto& ch : game.challenges) {
    AdversaryCircuit cached;
    bool have_cached = false;
    double per_ch = 0.0;
    for (long long hi : keep) {
      const OracleTable h = tables.at(hi);
      if (adv.oracle_aware) {
        per_ch += win_probability(game, build_checked(game, adv, ch, h), h, ch);
      } else {
        if (!have_cached) {
          cached = build_checked(game, adv, ch, h);
          have_cached = true;
        }
        per_ch += win_probability(game, cached, h, ch);
      }
    }
    total += per_ch / static_cast<double>(keep.size());
  }
  return total / static_cast<double>(game.challenges.size());
}

SampleEstimate game_value_mc(const GameSpec& game, const GameAdversary& adv,
                             long long trials, std::uint64_t seed) {
  validate_game(game);
  if (trials < 1) throw std::invalid_argument("need trials >= 1");
  auto rng = make_engine(derive_seed(seed, "game-mc"));

  const auto sample_filtered = [&]() {
    for (int attempt = 0; attempt < 1000000; ++attempt) {
      OracleTable h = sample_oracle(game.M, game.N, rng);
      if (!game.oracle_filter || game.oracle_filter(h)) return h;
    }
    throw ConfigError("the oracle promise is too restrictive to sample");
  };

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (long long t = 0; t < trials; ++t) {
    const Challenge& ch = game.challenges[static_cast<std::size_t>(
        uniform_below(rng, static_cast<int>(game.challenges.size())))];
    const OracleTable h = sample_filtered();
    samples.push_back(
        win_probability(game, build_checked(game, adv, ch, h), h, ch));
  }

  SampleEstimate est;
  est.trials = trials;
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  if (trials > 1) var /= static_cast<double>(trials - 1);
  est.estimate = mean;
  est.std_error = std::sqrt(var / static_cast<double>(trials));
  return est;
}

double game_p_of_r(const GameSpec& game, long long budget) {
  validate_game(game);
  if (!game.image_only) {
    throw std::invalid_argument("relation density needs an image-only game");
  }
  if (game.k > game.M) {
    throw std::invalid_argument("image-only density needs k <= M");
  }
  InputTuple dummy_xs(static_cast<std::size_t>(game.k));
  for (int i = 0; i < game.k; ++i) dummy_xs[static_cast<std::size_t>(i)] = i;
  OracleTable dummy_h;
  dummy_h.M = game.M;
  dummy_h.N = game.N;
  dummy_h.values.assign(static_cast<std::size_t>(game.M), 0);

  double total = 0.0;
  for (const auto& ch : game.challenges) {
    RelationSpec rel;
    rel.k = game.k;
    rel.N = game.N;
    rel.name = game.name;
    rel.member = [&](std::span<const int> ys) {
      return game.relation(dummy_xs, ys, 0, ch, dummy_h);
    };
    total += p_of_r_exact(rel, budget).value();
  }
  return total / static_cast<double>(game.challenges.size());
}

DerivedGame direct_product(const GameSpec& game, int g) {
  validate_game(game);
  if (g < 1) throw std::invalid_argument("need g >= 1");
  const int M = game.M;
  const int k = game.k;
  const std::size_t len = challenge_length(game);

  DerivedGame derived;
  derived.base = game;
  derived.kind = "direct-product";
  derived.copies = g;

  GameSpec& comp = derived.composite;
  comp.M = g * M;
  comp.N = game.N;
  comp.k = g * k;
  comp.name = game.name + "-product";
  comp.image_only = game.image_only;
  comp.challenges = challenge_power(game.challenges, g);
  comp.relation = [game, g, M, k, len](std::span<const int> xs,
                                       std::span<const int> ys, int z,
                                       const Challenge& ch,
                                       const OracleTable& h) {
    InputTuple local_xs(static_cast<std::size_t>(k));
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < k; ++j) {
        const int x = xs[static_cast<std::size_t>(i * k + j)] - i * M;
        if (x < 0 || x >= M) return false;
        local_xs[static_cast<std::size_t>(j)] = x;
      }
      const Challenge local_ch(ch.begin() + static_cast<std::ptrdiff_t>(i) *
                                               static_cast<std::ptrdiff_t>(len),
                               ch.begin() + static_cast<std::ptrdiff_t>(i + 1) *
                                               static_cast<std::ptrdiff_t>(len));
      if (!game.relation(local_xs,
                         ys.subspan(static_cast<std::size_t>(i * k),
                                    static_cast<std::size_t>(k)),
                         z, local_ch, slice_table(h, i, M))) {
        return false;
      }
    }
    return true;
  };
  if (game.oracle_filter) {
    comp.oracle_filter = [game, g, M](const OracleTable& h) {
      for (int i = 0; i < g; ++i) {
        if (!game.oracle_filter(slice_table(h, i, M))) return false;
      }
      return true;
    };
  }
  return derived;
}

DerivedGame salt(const GameSpec& game, int K) {
  validate_game(game);
  if (K < 1) throw std::invalid_argument("need K >= 1");
  const int M = game.M;
  const std::size_t len = challenge_length(game);

  DerivedGame derived;
  derived.base = game;
  derived.kind = "salted";
  derived.copies = K;

  GameSpec& comp = derived.composite;
  comp.M = K * M;
  comp.N = game.N;
  comp.k = game.k;
  comp.name = game.name + "-salted";
  comp.image_only = game.image_only;
  for (int i = 0; i < K; ++i) {
    for (const auto& ch : game.challenges) {
      Challenge salted;
      salted.push_back(i);
      salted.insert(salted.end(), ch.begin(), ch.end());
      comp.challenges.push_back(std::move(salted));
    }
  }
  comp.relation = [game, M, len](std::span<const int> xs,
                                 std::span<const int> ys, int z,
                                 const Challenge& ch, const OracleTable& h) {
    const int salt_index = ch[0];
    InputTuple local_xs(static_cast<std::size_t>(game.k));
    for (int j = 0; j < game.k; ++j) {
      const int x = xs[static_cast<std::size_t>(j)] - salt_index * M;
      if (x < 0 || x >= M) return false;
      local_xs[static_cast<std::size_t>(j)] = x;
    }
    const Challenge local_ch(ch.begin() + 1,
                             ch.begin() + 1 + static_cast<std::ptrdiff_t>(len));
    return game.relation(local_xs, ys, z, local_ch,
                         slice_table(h, salt_index, M));
  };
  if (game.oracle_filter) {
    comp.oracle_filter = [game, K, M](const OracleTable& h) {
      for (int i = 0; i < K; ++i) {
        if (!game.oracle_filter(slice_table(h, i, M))) return false;
      }
      return true;
    };
  }
  return derived;
}

DerivedGame multi_instance(const GameSpec& game, int g) {
  validate_game(game);
  if (g < 1) throw std::invalid_argument("need g >= 1");
  const int k = game.k;
  const std::size_t len = challenge_length(game);

  DerivedGame derived;
  derived.base = game;
  derived.kind = "multi-instance";
  derived.copies = g;

  GameSpec& comp = derived.composite;
  comp.M = game.M;
  comp.N = game.N;
  comp.k = g * k;
  comp.name = game.name + "-multi";
  comp.image_only = game.image_only;
  comp.distinct_group = k;  // instances may repeat each other's points
  comp.challenges = challenge_power(game.challenges, g);
  comp.relation = [game, g, k, len](std::span<const int> xs,
                                    std::span<const int> ys, int z,
                                    const Challenge& ch, const OracleTable& h) {
    for (int i = 0; i < g; ++i) {
      const Challenge local_ch(ch.begin() + static_cast<std::ptrdiff_t>(i) *
                                               static_cast<std::ptrdiff_t>(len),
                               ch.begin() + static_cast<std::ptrdiff_t>(i + 1) *
                                               static_cast<std::ptrdiff_t>(len));
      if (!game.relation(xs.subspan(static_cast<std::size_t>(i * k),
                                    static_cast<std::size_t>(k)),
                         ys.subspan(static_cast<std::size_t>(i * k),
                                    static_cast<std::size_t>(k)),
                         z, local_ch, h)) {
        return false;
      }
    }
    return true;
  };
  comp.oracle_filter = game.oracle_filter;
  return derived;
}

GameAdversary slicewise_adversary(const GameSpec& base_game,
                                  const GameAdversary& per_slice, int g,
                                  bool shared_window) {
  validate_game(base_game);
  if (per_slice.oracle_aware) {
    throw std::invalid_argument(
        "slice embedding needs oracle-independent strategies");
  }
  const std::size_t len = challenge_length(base_game);
  const int M = base_game.M;
  const int N = base_game.N;

  GameAdversary adv;
  adv.label = per_slice.label + "-x" + std::to_string(g);
  adv.q = g * per_slice.q;
  adv.oracle_aware = false;
  adv.build = [per_slice, g, len, M, N, shared_window](const Challenge& ch,
                                                       const OracleTable& h) {
    std::vector<AdversaryCircuit> slices;
    std::vector<int> offsets;
    slices.reserve(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
      const Challenge local_ch(ch.begin() + static_cast<std::ptrdiff_t>(i) *
                                               static_cast<std::ptrdiff_t>(len),
                               ch.begin() + static_cast<std::ptrdiff_t>(i + 1) *
                                               static_cast<std::ptrdiff_t>(len));
      slices.push_back(per_slice.build(local_ch, h));
      offsets.push_back(shared_window ? 0 : i * M);
    }
    return embed_slices(slices, offsets, shared_window ? M : g * M, N);
  };
  return adv;
}

GameAdversary salted_adversary(const GameSpec& base_game,
                               const GameAdversary& per_slice, int K) {
  validate_game(base_game);
  if (per_slice.oracle_aware) {
    throw std::invalid_argument(
        "salt embedding needs oracle-independent strategies");
  }
  const int M = base_game.M;
  const int N = base_game.N;

  GameAdversary adv;
  adv.label = per_slice.label + "-salted";
  adv.q = per_slice.q;
  adv.oracle_aware = false;
  adv.build = [per_slice, K, M, N](const Challenge& ch, const OracleTable& h) {
    const int salt_index = ch[0];
    const Challenge local_ch(ch.begin() + 1, ch.end());
    std::vector<AdversaryCircuit> slices = {per_slice.build(local_ch, h)};
    return embed_slices(slices, {salt_index * M}, K * M, N);
  };
  return adv;
}

LiftedCheckReport lifted_adversary_check(const GameSpec& game,
                                         const GameAdversary& adv,
                                         long long oracle_budget,
                                         long long branch_budget) {
  validate_game(game);
  if (!game.image_only) {
    throw std::invalid_argument("the lifted player needs an image-only game");
  }
  if (adv.oracle_aware) {
    throw std::invalid_argument(
        "the lifted player simulates the oracle; the adversary cannot peek");
  }

  LiftedCheckReport report;
  report.q = adv.q;
  report.k = game.k;
  report.loss = loss_factor(adv.q, game.k);
  report.base_value = game_value_exact(game, adv, oracle_budget);

  OracleEnumeration tables(game.M, game.N, oracle_budget);
  const std::vector<long long> real_indices =
      filtered_oracle_indices(tables, game);
  const std::vector<BranchChoice> branches =
      enumerate_branches(adv.q + game.k, game.k, branch_budget);

  OutputTuple real_ys(static_cast<std::size_t>(game.k), 0);
  double total = 0.0;
  for (const auto& ch : game.challenges) {
    const AdversaryCircuit circ =
        build_checked(game, adv, ch, tables.at(real_indices.front()));
    const WrappedAdversary wrapped = wrap_with_readout(circ, game.k);

    double per_ch = 0.0;
    for (long long gi : real_indices) {
      const OracleTable real = tables.at(gi);
      for (long long hi = 0; hi < tables.size(); ++hi) {
        const OracleTable sim = tables.at(hi);
        for (const auto& choice : branches) {
          StateVector state =
              coherent_branch_state(wrapped, sim, real, choice);
          state = project_basis(
              state, wrapped.program.out,
              [&](std::span<const int> xs, std::span<const int>, int z,
                  std::uint32_t mask) {
                if (!admissible_output(game, xs)) return false;
                std::uint32_t out_mask = 0;
                for (int x : xs) out_mask |= 1u << x;
                if (out_mask != mask) return false;
                for (int i = 0; i < game.k; ++i) {
                  real_ys[static_cast<std::size_t>(i)] =
                      eval(real, xs[static_cast<std::size_t>(i)]);
                }
                return game.relation(xs, real_ys, z, ch, real);
              });
          per_ch += norm_sq(state);
        }
      }
    }
    total += per_ch / (static_cast<double>(real_indices.size()) *
                       static_cast<double>(tables.size()) *
                       static_cast<double>(branches.size()));
  }
  report.lifted_value = total / static_cast<double>(game.challenges.size());
  report.holds = report.lifted_value >=
                 report.base_value / report.loss - kInequalitySlack;
  return report;
}

}  // namespace qromlift
