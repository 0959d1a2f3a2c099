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

#include "qromlift/reprogram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qromlift/errors.hpp"
#include "qromlift/rng.hpp"

namespace qromlift {

namespace {

void validate_choice(const BranchChoice& choice, int total_queries, int k) {
  if (static_cast<int>(choice.positions.size()) != k ||
      choice.positions.size() != choice.bits.size()) {
    throw std::invalid_argument("branch choice needs k positions and k bits");
  }
  int prev = 0;
  for (std::size_t j = 0; j < choice.positions.size(); ++j) {
    const int pos = choice.positions[j];
    if (pos <= prev || pos > total_queries) {
      throw std::invalid_argument(
          "branch positions must be strictly increasing query indices");
    }
    prev = pos;
    if (choice.bits[j] != 0 && choice.bits[j] != 1) {
      throw std::invalid_argument("branch bits must be 0 or 1");
    }
  }
}

std::uint32_t target_mask(const InputTuple& x_o, int M) {
  if (!all_distinct(x_o)) {
    throw std::invalid_argument("target points must be distinct");
  }
  std::uint32_t mask = 0;
  for (int x : x_o) {
    if (x < 0 || x >= M) {
      throw std::invalid_argument("target point outside the domain");
    }
    mask |= 1u << x;
  }
  return mask;
}

OracleTable reprogram_at_targets(const OracleTable& h, const OracleTable& g,
                                 const InputTuple& x_o) {
  OutputTuple images;
  images.reserve(x_o.size());
  for (int x : x_o) images.push_back(eval(g, x));
  return reprogram_multi(h, x_o, images);
}

double accumulate_estimate(std::vector<double>& samples, SampleEstimate& est) {
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  if (samples.size() > 1) {
    var /= static_cast<double>(samples.size() - 1);
  }
  est.trials = static_cast<long long>(samples.size());
  est.estimate = mean;
  est.std_error = std::sqrt(var / static_cast<double>(samples.size()));
  return mean;
}

}  // namespace

StateVector coherent_branch_state(const WrappedAdversary& adv,
                                  const OracleTable& h, const OracleTable& g,
                                  const BranchChoice& choice) {
  const Program& prog = adv.program;
  StateVector state =
      init_state(make_layout(prog.M, prog.N, prog.W, adv.arity));
  int query = 0;
  std::size_t next = 0;
  for (const auto& step : prog.steps) {
    if (std::holds_alternative<QueryTag>(step)) {
      ++query;
      const bool marked = next < choice.positions.size() &&
                          choice.positions[next] == query;
      if (marked && choice.bits[next] == 0) {
        state = apply_control_update(state);
        state = apply_controlled_query(state, h, g);
      } else if (marked) {
        state = apply_controlled_query(state, h, g);
        state = apply_control_update(state);
      } else {
        state = apply_controlled_query(state, h, g);
      }
      if (marked) ++next;
    } else {
      state = apply_gate(state, std::get<GateOp>(step));
    }
  }
  return state;
}

std::vector<BranchChoice> enumerate_branches(int total_queries, int k,
                                             long long budget) {
  if (k < 1 || total_queries < k) {
    throw std::invalid_argument("need 1 <= k <= total_queries");
  }
  const double count =
      binomial_value(total_queries, k) * std::pow(2.0, k);
  if (count > static_cast<double>(budget)) {
    throw CapacityError("branch enumeration exceeds the branch budget");
  }

  std::vector<BranchChoice> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> pos(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) pos[static_cast<std::size_t>(j)] = j + 1;
  while (true) {
    for (int bits = 0; bits < (1 << k); ++bits) {
      BranchChoice choice;
      choice.positions = pos;
      choice.bits.resize(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) {
        choice.bits[static_cast<std::size_t>(j)] = (bits >> j) & 1;
      }
      out.push_back(std::move(choice));
    }
    // next combination in lexicographic order
    int j = k - 1;
    while (j >= 0 &&
           pos[static_cast<std::size_t>(j)] == total_queries - (k - 1 - j)) {
      --j;
    }
    if (j < 0) break;
    ++pos[static_cast<std::size_t>(j)];
    for (int l = j + 1; l < k; ++l) {
      pos[static_cast<std::size_t>(l)] = pos[static_cast<std::size_t>(l - 1)] + 1;
    }
  }
  return out;
}

BranchChoice sample_branch(int total_queries, int k, std::mt19937_64& rng) {
  if (k < 1 || total_queries < k) {
    throw std::invalid_argument("need 1 <= k <= total_queries");
  }
  BranchChoice choice;
  choice.positions.resize(static_cast<std::size_t>(k));
  while (true) {
    for (int j = 0; j < k; ++j) {
      choice.positions[static_cast<std::size_t>(j)] =
          1 + uniform_below(rng, total_queries);
    }
    std::sort(choice.positions.begin(), choice.positions.end());
    if (std::adjacent_find(choice.positions.begin(), choice.positions.end()) ==
        choice.positions.end()) {
      break;
    }
  }
  choice.bits.resize(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    choice.bits[static_cast<std::size_t>(j)] = uniform_below(rng, 2);
  }
  return choice;
}

double run_branch(const WrappedAdversary& adv, const OracleTable& h,
                  const OracleTable& g, const InputTuple& x_o,
                  const BranchChoice& choice, const Predicate& v) {
  const int k = adv.arity;
  if (static_cast<int>(x_o.size()) != k || v.arity != k) {
    throw std::invalid_argument(
        "target tuple and predicate arity must match the read-out arity");
  }
  validate_choice(choice, adv.program.query_count, k);
  const std::uint32_t mask = target_mask(x_o, adv.program.M);
  const OracleTable reprogrammed = reprogram_at_targets(h, g, x_o);

  StateVector state = coherent_branch_state(adv, h, g, choice);
  state = project_predicate(state, v, reprogrammed, adv.program.out);
  state = project_output_equiv(state, x_o, adv.program.out);
  state = project_control_sector(state, mask);
  return norm_sq(state);
}

ExperimentResult coherent_sim_exact(const WrappedAdversary& adv,
                                    const OracleTable& h, const OracleTable& g,
                                    const InputTuple& x_o, const Predicate& v,
                                    bool record_branches,
                                    long long branch_budget) {
  const int k = adv.arity;
  const int total = adv.program.query_count;
  ExperimentResult result;
  result.q = total - k;
  result.k = k;
  result.adversary_label = adv.base.label;
  result.x_o = x_o;
  result.loss = loss_factor(result.q, k);

  const std::vector<BranchChoice> branches =
      enumerate_branches(total, k, branch_budget);
  double sum = 0.0;
  for (const auto& choice : branches) {
    const double p = run_branch(adv, h, g, x_o, choice, v);
    sum += p;
    if (record_branches) result.per_branch.push_back({choice, p});
  }
  result.lhs = sum / static_cast<double>(branches.size());

  const OracleTable reprogrammed = reprogram_at_targets(h, g, x_o);
  StateVector direct = run(adv.program, reprogrammed);
  direct = project_predicate(direct, v, reprogrammed, adv.program.out);
  direct = project_output_equiv(direct, x_o, adv.program.out);
  result.rhs = norm_sq(direct);

  result.holds = result.lhs * result.loss >= result.rhs - kInequalitySlack;
  return result;
}

SampleEstimate coherent_sim_sample(const WrappedAdversary& adv,
                                   const OracleTable& h, const OracleTable& g,
                                   const InputTuple& x_o, const Predicate& v,
                                   long long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need trials >= 1");
  auto rng = make_engine(derive_seed(seed, "coherent-sim"));
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (long long t = 0; t < trials; ++t) {
    const BranchChoice choice =
        sample_branch(adv.program.query_count, adv.arity, rng);
    samples.push_back(run_branch(adv, h, g, x_o, choice, v));
  }
  SampleEstimate est;
  accumulate_estimate(samples, est);
  return est;
}

SampleEstimate classical_mr_sample(const AdversaryCircuit& adv,
                                   const OracleTable& h, const InputTuple& x_o,
                                   const OutputTuple& y_target,
                                   const Predicate& v, long long trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need trials >= 1");
  const int k = static_cast<int>(y_target.size());
  if (static_cast<int>(x_o.size()) != k || v.arity != k) {
    throw std::invalid_argument(
        "x_o, y_target and the predicate must share one arity");
  }
  if (!all_distinct(x_o)) {
    throw std::invalid_argument("target points must be distinct");
  }
  for (int y : y_target) {
    if (y < 0 || y >= adv.N) {
      throw std::invalid_argument("reprogram value outside the range");
    }
  }
  const Program prog = base_program(adv);
  const RegisterLayout layout = make_layout(prog.M, prog.N, prog.W, 0);
  const FieldRef input_field = FieldRef::input(prog.M);
  const int q = adv.q;
  auto rng = make_engine(derive_seed(seed, "classical-mr"));

  // slot j: query index in 1..q with a before/after bit, or 0 for skip
  struct Slot {
    int query = 0;
    int bit = 0;
  };
  const auto sample_slots = [&]() {
    std::vector<Slot> slots(static_cast<std::size_t>(k));
    while (true) {
      bool distinct = true;
      for (int j = 0; j < k; ++j) {
        const int r = uniform_below(rng, 2 * q + 1);
        Slot& slot = slots[static_cast<std::size_t>(j)];
        if (r == 2 * q) {
          slot = {0, 0};
        } else {
          slot = {r / 2 + 1, r % 2};
        }
      }
      for (int a = 0; a < k && distinct; ++a) {
        for (int b = a + 1; b < k; ++b) {
          if (slots[static_cast<std::size_t>(a)].query != 0 &&
              slots[static_cast<std::size_t>(a)].query ==
                  slots[static_cast<std::size_t>(b)].query) {
            distinct = false;
            break;
          }
        }
      }
      if (distinct) return slots;
    }
  };

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (long long t = 0; t < trials; ++t) {
    const std::vector<Slot> slots = sample_slots();
    OracleTable table = h;
    std::vector<int> measured(static_cast<std::size_t>(k), -1);

    const auto measure_and_reprogram = [&](StateVector& state, int j) {
      const std::vector<double> marginal = register_marginal(state, input_field);
      double total = 0.0;
      for (double p : marginal) total += p;
      const double u = uniform_unit(rng) * total;
      int x = static_cast<int>(marginal.size()) - 1;
      double cum = 0.0;
      for (std::size_t i = 0; i < marginal.size(); ++i) {
        cum += marginal[i];
        if (u < cum) {
          x = static_cast<int>(i);
          break;
        }
      }
      const double px = marginal[static_cast<std::size_t>(x)];
      for (long long a = 0; a < layout.adv_dim; ++a) {
        if (field_digit(layout, input_field, a) != x) {
          state.amps[a] = 0.0;
        }
      }
      state.amps /= std::sqrt(px);
      table.values[static_cast<std::size_t>(x)] =
          y_target[static_cast<std::size_t>(j)];
      measured[static_cast<std::size_t>(j)] = x;
    };

    StateVector state = init_state(layout);
    int query = 0;
    for (const auto& step : prog.steps) {
      if (std::holds_alternative<QueryTag>(step)) {
        ++query;
        for (int j = 0; j < k; ++j) {
          if (slots[static_cast<std::size_t>(j)].query == query &&
              slots[static_cast<std::size_t>(j)].bit == 0) {
            measure_and_reprogram(state, j);
          }
        }
        state = apply_oracle_query(state, table);
        for (int j = 0; j < k; ++j) {
          if (slots[static_cast<std::size_t>(j)].query == query &&
              slots[static_cast<std::size_t>(j)].bit == 1) {
            measure_and_reprogram(state, j);
          }
        }
      } else {
        state = apply_gate(state, std::get<GateOp>(step));
      }
    }

    double success = 0.0;
    InputTuple xprime(static_cast<std::size_t>(k), 0);
    for (long long a = 0; a < layout.adv_dim; ++a) {
      const double w = std::norm(state.amps[a]);
      if (w == 0.0) continue;
      const InputTuple xs = decode_xs(layout, prog.out, a);
      for (int j = 0; j < k; ++j) {
        xprime[static_cast<std::size_t>(j)] =
            slots[static_cast<std::size_t>(j)].query == 0
                ? xs[static_cast<std::size_t>(j)]
                : measured[static_cast<std::size_t>(j)];
      }
      if (!tuple_equiv(xprime, x_o)) continue;
      const int z = decode_z(layout, prog.out, a);
      if (v.relation(xprime, y_target, z, table)) success += w;
    }
    samples.push_back(success);
  }

  SampleEstimate est;
  accumulate_estimate(samples, est);
  return est;
}

double classical_direct_value(const AdversaryCircuit& adv,
                              const OracleTable& h, const InputTuple& x_o,
                              const OutputTuple& y_target, const Predicate& v) {
  const int k = static_cast<int>(y_target.size());
  if (static_cast<int>(x_o.size()) != k || v.arity != k) {
    throw std::invalid_argument(
        "x_o, y_target and the predicate must share one arity");
  }
  const OracleTable reprogrammed = reprogram_multi(h, x_o, y_target);
  const Program prog = base_program(adv);
  StateVector state = run(prog, reprogrammed);

  OutputTuple ys(static_cast<std::size_t>(k), 0);
  state = project_basis(
      state, prog.out,
      [&](std::span<const int> xs, std::span<const int>, int z,
          std::uint32_t) {
        InputTuple xv(xs.begin(), xs.end());
        if (!tuple_equiv(xv, x_o)) return false;
        for (int j = 0; j < k; ++j) {
          ys[static_cast<std::size_t>(j)] =
              eval(reprogrammed, xs[static_cast<std::size_t>(j)]);
        }
        return v.relation(xs, ys, z, reprogrammed);
      });
  return norm_sq(state);
}

UniformImagesReport uniform_images_check(const WrappedAdversary& adv,
                                         const OracleTable& h,
                                         const BranchChoice& choice,
                                         long long oracle_budget) {
  UniformImagesReport report;
  if (choice.positions.empty()) return report;  // no recorded points at all

  const int k = adv.arity;
  if (static_cast<int>(choice.positions.size()) != k) {
    throw std::invalid_argument("branch choice size must match the arity");
  }
  validate_choice(choice, adv.program.query_count, k);

  const int M = adv.program.M;
  const int N = adv.program.N;
  OracleEnumeration tables(M, N, oracle_budget);
  const long long num_g = tables.size();

  long long theta_count = 1;
  for (int j = 0; j < k; ++j) theta_count *= N;
  std::vector<double> averaged(static_cast<std::size_t>(theta_count), 0.0);
  const double uniform = 1.0 / static_cast<double>(theta_count);
  double total_mass = 0.0;

  for (long long gi = 0; gi < num_g; ++gi) {
    const OracleTable g = tables.at(gi);
    const StateVector state = coherent_branch_state(adv, h, g, choice);
    const std::vector<double> sector = measure_control(state);

    std::vector<double> local(static_cast<std::size_t>(theta_count), 0.0);
    double mass_g = 0.0;
    for (std::size_t c = 0; c < sector.size(); ++c) {
      if (sector[c] == 0.0) continue;
      const std::uint32_t mask = state.layout.subset_masks[c];
      if (std::popcount(mask) != k) continue;
      long long theta = 0;
      long long scale = 1;
      for (int x = 0; x < M; ++x) {
        if (mask & (1u << x)) {
          theta += scale * eval(g, x);
          scale *= N;
        }
      }
      local[static_cast<std::size_t>(theta)] += sector[c];
      mass_g += sector[c];
    }

    for (long long t = 0; t < theta_count; ++t) {
      averaged[static_cast<std::size_t>(t)] +=
          local[static_cast<std::size_t>(t)] / static_cast<double>(num_g);
    }
    total_mass += mass_g / static_cast<double>(num_g);

    if (mass_g > 1e-15) {
      for (long long t = 0; t < theta_count; ++t) {
        const double dev =
            std::abs(local[static_cast<std::size_t>(t)] / mass_g - uniform);
        report.worst_single_g = std::max(report.worst_single_g, dev);
      }
    }
  }

  report.abort_mass = 1.0 - total_mass;
  if (total_mass > 1e-15) {
    for (long long t = 0; t < theta_count; ++t) {
      const double dev =
          std::abs(averaged[static_cast<std::size_t>(t)] / total_mass - uniform);
      report.averaged_deviation = std::max(report.averaged_deviation, dev);
    }
  }
  return report;
}

}  // namespace qromlift
