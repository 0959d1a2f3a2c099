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

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qromlift/oracle.hpp"
#include "qromlift/tolerances.hpp"

namespace qromlift {

// Dense statevector over four registers:
//
//   input   dim M   query point
//   output  dim N   query response accumulator (addition mod N)
//   work    dim W   private adversary memory, possibly mixed-radix
//   control dim C   recorded query points, as a subset S of [M], |S| <= k
//
// C = sum_{i=0..k} C(M, i).  Only the subset is recorded: within one run the
// recording oracle is fixed, so the pair list (x, G(x)) is determined by S.
// A consequence is that list states with a repeated point have no
// representation at all; updates that would create one are projected out
// instead.  Basis index = a * C + s with a = (x*N + y)*W + w, so the control
// register is the fastest-varying digit and gates on the adversary registers
// act sector-wise.
//
// States are not renormalized by any operation here.  Projections shrink the
// norm; the squared norm of a projected state IS the event probability, and
// keeping it subnormalized is what makes abort-paths compose correctly.

struct RegisterLayout {
  int M = 0;
  int N = 0;
  int W = 1;
  int k = 0;  // control capacity; k = 0 means no usable control register

  long long adv_dim = 0;      // M * N * W
  long long control_dim = 1;  // number of representable subsets
  long long dim = 0;          // adv_dim * control_dim

  std::vector<std::uint32_t> subset_masks;  // control index -> bitmask
  std::vector<std::int32_t> mask_to_index;  // bitmask -> control index or -1
};

RegisterLayout make_layout(int M, int N, int W, int k,
                           long long dim_budget = kDefaultStateDimBudget);

struct StateVector {
  RegisterLayout layout;
  Eigen::VectorXcd amps;
};

// |x=0, y=0, w=0, S=empty>
StateVector init_state(const RegisterLayout& layout);

double norm_sq(const StateVector& state);

// --- register fields -------------------------------------------------------
//
// A field addresses one positional digit of a register: value =
// (register_value / divisor) % modulus, shifted by `offset` when decoded as
// an output coordinate.  Whole registers are fields with divisor 1.

enum class Reg { Input, Output, Work };

struct FieldRef {
  Reg reg = Reg::Work;
  int divisor = 1;
  int modulus = 2;
  int offset = 0;  // added on decode; ignored by gates

  static FieldRef input(int modulus) { return {Reg::Input, 1, modulus, 0}; }
  static FieldRef output(int modulus) { return {Reg::Output, 1, modulus, 0}; }
  static FieldRef work(int divisor, int modulus, int offset = 0) {
    return {Reg::Work, divisor, modulus, offset};
  }
};

// Raw digit (no offset applied).
int field_digit(const RegisterLayout& layout, const FieldRef& f, long long a);
// Digit plus offset.
int field_value(const RegisterLayout& layout, const FieldRef& f, long long a);

// Where the final (x-tuple, y-tuple, z) is encoded in the basis index.
struct OutputMap {
  std::vector<FieldRef> xs;
  std::vector<FieldRef> ys;
  std::optional<FieldRef> z;
};

InputTuple decode_xs(const RegisterLayout& layout, const OutputMap& map,
                     long long a);
OutputTuple decode_ys(const RegisterLayout& layout, const OutputMap& map,
                      long long a);
int decode_z(const RegisterLayout& layout, const OutputMap& map, long long a);

// --- gates ------------------------------------------------------------------

// Dense unitary on an ordered list of disjoint fields (first field is the
// most significant digit of the gate index).  Control is never touched.
// Construction validates unitarity to kUnitarityTol and digit alignment.
struct DenseGate {
  Eigen::MatrixXcd matrix;
  std::vector<FieldRef> fields;
};

DenseGate make_dense_gate(Eigen::MatrixXcd matrix, std::vector<FieldRef> fields);

// Basis permutation of the adversary index a (control untouched).
// Construction validates bijectivity.
struct PermGate {
  std::vector<long long> perm;  // a -> perm[a]
};

PermGate make_perm_gate(std::vector<long long> perm);
PermGate make_perm_gate(long long adv_dim,
                        const std::function<long long(long long)>& map);

struct GateOp {
  // exactly one is active
  std::optional<DenseGate> dense;
  std::optional<PermGate> perm;

  static GateOp of(DenseGate g) { return {std::move(g), std::nullopt}; }
  static GateOp of(PermGate g) { return {std::nullopt, std::move(g)}; }
};

StateVector apply_gate(const StateVector& state, const GateOp& gate);

// Dense unitary over whole registers, most significant first.
StateVector apply_unitary(const StateVector& state,
                          const Eigen::MatrixXcd& matrix,
                          const std::vector<Reg>& regs);

// --- queries ----------------------------------------------------------------

// y := y + H(x) mod N on every sector.
StateVector apply_oracle_query(const StateVector& state, const OracleTable& h);

// Per-sector reprogrammed query: in sector S the effective table answers
// G(x) for x in S and H(x) otherwise.
StateVector apply_controlled_query(const StateVector& state,
                                   const OracleTable& h,
                                   const OracleTable& g);

// Record the current query point: S -> S + {x}.  Branches where x is
// already recorded, or where the record is full, are projected out.
StateVector apply_control_update(const StateVector& state);

// --- measurements and projections -------------------------------------------

// Predicate on the adversary's final output.  project_predicate additionally
// enforces oracle consistency h(x_i) == y_i for every i; the relation alone
// never suffices to accept.
struct Predicate {
  int arity = 1;
  std::function<bool(std::span<const int> xs, std::span<const int> ys, int z,
                     const OracleTable& h)>
      relation;
};

Predicate trivial_predicate(int arity);

StateVector project_predicate(const StateVector& state, const Predicate& pred,
                              const OracleTable& h, const OutputMap& map);

// Keep branches whose decoded x-tuple is a permutation of target.
StateVector project_output_equiv(const StateVector& state,
                                 const InputTuple& target,
                                 const OutputMap& map);

// Keep only the control sector with this subset mask.
StateVector project_control_sector(const StateVector& state,
                                   std::uint32_t mask);

// General diagonal filter over (decoded output, control mask).
StateVector project_basis(
    const StateVector& state, const OutputMap& map,
    const std::function<bool(std::span<const int> xs, std::span<const int> ys,
                             int z, std::uint32_t control_mask)>& keep);

// Probability of each control subset: index by layout.subset_masks.
std::vector<double> measure_control(const StateVector& state);

// Probability of each digit value of one field (offset ignored).
std::vector<double> register_marginal(const StateVector& state,
                                      const FieldRef& field);

}  // namespace qromlift
