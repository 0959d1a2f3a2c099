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

#include "qromlift/statevec.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

#include "qromlift/errors.hpp"

namespace qromlift {

namespace {

constexpr int kMaxTrackedDomain = 20;  // control subsets live in a bitmask table

void check_state(const StateVector& state) {
  if (state.amps.size() != state.layout.dim) {
    throw std::logic_error("state vector length does not match its layout");
  }
}

int register_extent(const RegisterLayout& layout, Reg reg) {
  switch (reg) {
    case Reg::Input:
      return layout.M;
    case Reg::Output:
      return layout.N;
    case Reg::Work:
      return layout.W;
  }
  throw std::logic_error("unknown register");
}

// Change in the flat adversary index per unit step of the field's digit.
long long field_stride(const RegisterLayout& layout, const FieldRef& f) {
  const long long nw = static_cast<long long>(layout.N) * layout.W;
  switch (f.reg) {
    case Reg::Input:
      return f.divisor * nw;
    case Reg::Output:
      return f.divisor * static_cast<long long>(layout.W);
    case Reg::Work:
      return f.divisor;
  }
  throw std::logic_error("unknown register");
}

void validate_field(const RegisterLayout& layout, const FieldRef& f) {
  const int extent = register_extent(layout, f.reg);
  if (f.divisor < 1 || f.modulus < 1) {
    throw std::invalid_argument("field needs divisor >= 1 and modulus >= 1");
  }
  const long long span = static_cast<long long>(f.divisor) * f.modulus;
  if (span > extent || extent % span != 0) {
    throw std::invalid_argument(
        "field digit (divisor " + std::to_string(f.divisor) + ", modulus " +
        std::to_string(f.modulus) + ") is not aligned in register of extent " +
        std::to_string(extent));
  }
}

bool fields_overlap(const FieldRef& a, const FieldRef& b) {
  if (a.reg != b.reg) return false;
  const long long ta = static_cast<long long>(a.divisor) * a.modulus;
  const long long tb = static_cast<long long>(b.divisor) * b.modulus;
  return !(ta <= b.divisor || tb <= a.divisor);
}

}  // namespace

RegisterLayout make_layout(int M, int N, int W, int k, long long dim_budget) {
  if (M < 1 || N < 1 || W < 1) {
    throw std::invalid_argument("layout needs M, N, W >= 1");
  }
  if (k < 0 || k > M) {
    throw std::invalid_argument("control capacity needs 0 <= k <= M");
  }
  if (M > kMaxTrackedDomain) {
    throw CapacityError("domain too large for subset-tracked control (M <= " +
                        std::to_string(kMaxTrackedDomain) + ")");
  }

  RegisterLayout layout;
  layout.M = M;
  layout.N = N;
  layout.W = W;
  layout.k = k;
  layout.adv_dim = static_cast<long long>(M) * N * W;

  const std::uint32_t mask_count = 1u << M;
  layout.mask_to_index.assign(mask_count, -1);
  for (std::uint32_t m = 0; m < mask_count; ++m) {
    if (std::popcount(m) <= k) {
      layout.mask_to_index[m] =
          static_cast<std::int32_t>(layout.subset_masks.size());
      layout.subset_masks.push_back(m);
    }
  }
  layout.control_dim = static_cast<long long>(layout.subset_masks.size());
  layout.dim = layout.adv_dim * layout.control_dim;

  if (layout.dim > dim_budget) {
    throw CapacityError("state dimension " + std::to_string(layout.dim) +
                        " exceeds budget " + std::to_string(dim_budget));
  }
  return layout;
}

StateVector init_state(const RegisterLayout& layout) {
  StateVector state{layout, Eigen::VectorXcd::Zero(layout.dim)};
  state.amps[0] = 1.0;
  return state;
}

double norm_sq(const StateVector& state) {
  check_state(state);
  return state.amps.squaredNorm();
}

int field_digit(const RegisterLayout& layout, const FieldRef& f, long long a) {
  long long reg_value = 0;
  const long long nw = static_cast<long long>(layout.N) * layout.W;
  switch (f.reg) {
    case Reg::Input:
      reg_value = a / nw;
      break;
    case Reg::Output:
      reg_value = (a / layout.W) % layout.N;
      break;
    case Reg::Work:
      reg_value = a % layout.W;
      break;
  }
  return static_cast<int>((reg_value / f.divisor) % f.modulus);
}

int field_value(const RegisterLayout& layout, const FieldRef& f, long long a) {
  return field_digit(layout, f, a) + f.offset;
}

InputTuple decode_xs(const RegisterLayout& layout, const OutputMap& map,
                     long long a) {
  InputTuple out;
  out.reserve(map.xs.size());
  for (const auto& f : map.xs) out.push_back(field_value(layout, f, a));
  return out;
}

OutputTuple decode_ys(const RegisterLayout& layout, const OutputMap& map,
                      long long a) {
  OutputTuple out;
  out.reserve(map.ys.size());
  for (const auto& f : map.ys) out.push_back(field_value(layout, f, a));
  return out;
}

int decode_z(const RegisterLayout& layout, const OutputMap& map, long long a) {
  return map.z ? field_value(layout, *map.z, a) : 0;
}

DenseGate make_dense_gate(Eigen::MatrixXcd matrix,
                          std::vector<FieldRef> fields) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("gate matrix must be square");
  }
  const Eigen::MatrixXcd gram = matrix.adjoint() * matrix;
  const double defect =
      (gram - Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > kUnitarityTol) {
    throw std::invalid_argument("gate matrix is not unitary (defect " +
                                std::to_string(defect) + ")");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      if (fields_overlap(fields[i], fields[j])) {
        throw std::invalid_argument("gate fields overlap");
      }
    }
  }
  return DenseGate{std::move(matrix), std::move(fields)};
}

PermGate make_perm_gate(std::vector<long long> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (long long target : perm) {
    if (target < 0 || target >= static_cast<long long>(perm.size()) ||
        seen[static_cast<std::size_t>(target)]) {
      throw std::invalid_argument("permutation gate is not a bijection");
    }
    seen[static_cast<std::size_t>(target)] = true;
  }
  return PermGate{std::move(perm)};
}

PermGate make_perm_gate(long long adv_dim,
                        const std::function<long long(long long)>& map) {
  std::vector<long long> perm(static_cast<std::size_t>(adv_dim));
  for (long long a = 0; a < adv_dim; ++a) {
    perm[static_cast<std::size_t>(a)] = map(a);
  }
  return make_perm_gate(std::move(perm));
}

namespace {

using RowMajorMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                  Eigen::RowMajor>;

StateVector apply_dense(const StateVector& state, const DenseGate& gate) {
  const RegisterLayout& layout = state.layout;
  const long long A = layout.adv_dim;
  const long long C = layout.control_dim;
  const long long gdim = gate.matrix.rows();

  long long expected = 1;
  for (const auto& f : gate.fields) {
    validate_field(layout, f);
    expected *= f.modulus;
  }
  if (expected != gdim) {
    throw std::invalid_argument("gate dimension does not match its fields");
  }

  // Whole-space gate: one sector-wise product.
  if (gdim == A) {
    StateVector out{layout, Eigen::VectorXcd(layout.dim)};
    Eigen::Map<const RowMajorMatrix> in_mat(state.amps.data(), A, C);
    Eigen::Map<RowMajorMatrix> out_mat(out.amps.data(), A, C);
    out_mat = gate.matrix * in_mat;
    return out;
  }

  std::vector<long long> stride(gate.fields.size());
  for (std::size_t i = 0; i < gate.fields.size(); ++i) {
    stride[i] = field_stride(layout, gate.fields[i]);
  }

  // enc[g] = flat-index displacement of gate basis state g from the base
  // state that has all gate digits zero.
  std::vector<long long> enc(static_cast<std::size_t>(gdim));
  for (long long g = 0; g < gdim; ++g) {
    long long off = 0;
    long long rest = g;
    for (std::size_t i = gate.fields.size(); i-- > 0;) {
      off += (rest % gate.fields[i].modulus) * stride[i];
      rest /= gate.fields[i].modulus;
    }
    enc[static_cast<std::size_t>(g)] = off;
  }

  StateVector out{layout, Eigen::VectorXcd::Zero(layout.dim)};
  Eigen::VectorXcd gathered(gdim);
  for (long long a = 0; a < A; ++a) {
    bool base = true;
    for (const auto& f : gate.fields) {
      if (field_digit(layout, f, a) != 0) {
        base = false;
        break;
      }
    }
    if (!base) continue;
    for (long long s = 0; s < C; ++s) {
      for (long long g = 0; g < gdim; ++g) {
        gathered[g] = state.amps[(a + enc[static_cast<std::size_t>(g)]) * C + s];
      }
      const Eigen::VectorXcd mixed = gate.matrix * gathered;
      for (long long g = 0; g < gdim; ++g) {
        out.amps[(a + enc[static_cast<std::size_t>(g)]) * C + s] = mixed[g];
      }
    }
  }
  return out;
}

StateVector apply_perm(const StateVector& state, const PermGate& gate) {
  const RegisterLayout& layout = state.layout;
  const long long A = layout.adv_dim;
  const long long C = layout.control_dim;
  if (static_cast<long long>(gate.perm.size()) != A) {
    throw std::invalid_argument("permutation gate has wrong dimension");
  }
  StateVector out{layout, Eigen::VectorXcd(layout.dim)};
  for (long long a = 0; a < A; ++a) {
    const long long target = gate.perm[static_cast<std::size_t>(a)];
    for (long long s = 0; s < C; ++s) {
      out.amps[target * C + s] = state.amps[a * C + s];
    }
  }
  return out;
}

}  // namespace

StateVector apply_gate(const StateVector& state, const GateOp& gate) {
  check_state(state);
  if (gate.dense) return apply_dense(state, *gate.dense);
  if (gate.perm) return apply_perm(state, *gate.perm);
  throw std::invalid_argument("empty gate");
}

StateVector apply_unitary(const StateVector& state,
                          const Eigen::MatrixXcd& matrix,
                          const std::vector<Reg>& regs) {
  std::vector<FieldRef> fields;
  fields.reserve(regs.size());
  for (Reg reg : regs) {
    fields.push_back({reg, 1, register_extent(state.layout, reg), 0});
  }
  return apply_gate(state, GateOp::of(make_dense_gate(matrix, fields)));
}

StateVector apply_oracle_query(const StateVector& state,
                               const OracleTable& h) {
  check_state(state);
  const RegisterLayout& layout = state.layout;
  if (h.M != layout.M || h.N != layout.N) {
    throw std::invalid_argument("oracle dimensions do not match layout");
  }
  const long long C = layout.control_dim;
  const long long W = layout.W;
  StateVector out{layout, Eigen::VectorXcd(layout.dim)};
  for (long long a = 0; a < layout.adv_dim; ++a) {
    const int x = static_cast<int>(a / (layout.N * W));
    const int y = static_cast<int>((a / W) % layout.N);
    const int y2 = (y + h.values[static_cast<std::size_t>(x)]) % layout.N;
    const long long a2 = a + static_cast<long long>(y2 - y) * W;
    for (long long s = 0; s < C; ++s) {
      out.amps[a2 * C + s] = state.amps[a * C + s];
    }
  }
  return out;
}

StateVector apply_controlled_query(const StateVector& state,
                                   const OracleTable& h,
                                   const OracleTable& g) {
  check_state(state);
  const RegisterLayout& layout = state.layout;
  if (layout.k < 1) {
    throw std::invalid_argument("controlled query needs a control register");
  }
  if (h.M != layout.M || h.N != layout.N || g.M != layout.M ||
      g.N != layout.N) {
    throw std::invalid_argument("oracle dimensions do not match layout");
  }
  const long long C = layout.control_dim;
  const long long W = layout.W;
  StateVector out{layout, Eigen::VectorXcd(layout.dim)};
  for (long long a = 0; a < layout.adv_dim; ++a) {
    const int x = static_cast<int>(a / (layout.N * W));
    const int y = static_cast<int>((a / W) % layout.N);
    for (long long s = 0; s < C; ++s) {
      const bool recorded = (layout.subset_masks[static_cast<std::size_t>(s)] >>
                             static_cast<unsigned>(x)) &
                            1u;
      const int image = recorded ? g.values[static_cast<std::size_t>(x)]
                                 : h.values[static_cast<std::size_t>(x)];
      const int y2 = (y + image) % layout.N;
      const long long a2 = a + static_cast<long long>(y2 - y) * W;
      out.amps[a2 * C + s] = state.amps[a * C + s];
    }
  }
  return out;
}

StateVector apply_control_update(const StateVector& state) {
  check_state(state);
  const RegisterLayout& layout = state.layout;
  if (layout.k < 1) {
    throw std::invalid_argument("control update needs a control register");
  }
  const long long C = layout.control_dim;
  StateVector out{layout, Eigen::VectorXcd::Zero(layout.dim)};
  for (long long a = 0; a < layout.adv_dim; ++a) {
    const int x = static_cast<int>(a / (layout.N * layout.W));
    const std::uint32_t bit = 1u << static_cast<unsigned>(x);
    for (long long s = 0; s < C; ++s) {
      const std::uint32_t mask = layout.subset_masks[static_cast<std::size_t>(s)];
      if (mask & bit) continue;  // duplicate point: abort branch
      const std::uint32_t grown = mask | bit;
      const std::int32_t s2 = layout.mask_to_index[grown];
      if (s2 < 0) continue;  // record full: abort branch
      out.amps[a * C + s2] = state.amps[a * C + s];
    }
  }
  return out;
}

Predicate trivial_predicate(int arity) {
  return Predicate{arity, [](std::span<const int>, std::span<const int>, int,
                             const OracleTable&) { return true; }};
}

StateVector project_predicate(const StateVector& state, const Predicate& pred,
                              const OracleTable& h, const OutputMap& map) {
  check_state(state);
  const RegisterLayout& layout = state.layout;
  if (static_cast<int>(map.xs.size()) != pred.arity ||
      static_cast<int>(map.ys.size()) != pred.arity) {
    throw std::invalid_argument(
        "output map arity does not match the predicate");
  }
  const long long C = layout.control_dim;
  StateVector out{layout, Eigen::VectorXcd::Zero(layout.dim)};
  for (long long a = 0; a < layout.adv_dim; ++a) {
    const InputTuple xs = decode_xs(layout, map, a);
    const OutputTuple ys = decode_ys(layout, map, a);
    const int z = decode_z(layout, map, a);
    bool keep = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (eval(h, xs[i]) != ys[i]) {
        keep = false;
        break;
      }
    }
    if (keep) keep = pred.relation(xs, ys, z, h);
    if (!keep) continue;
    for (long long s = 0; s < C; ++s) {
      out.amps[a * C + s] = state.amps[a * C + s];
    }
  }
  return out;
}

StateVector project_output_equiv(const StateVector& state,
                                 const InputTuple& target,
                                 const OutputMap& map) {
  check_state(state);
  const RegisterLayout& layout = state.layout;
  if (map.xs.size() != target.size()) {
    throw std::invalid_argument("output map arity does not match the target");
  }
  const long long C = layout.control_dim;
  StateVector out{layout, Eigen::VectorXcd::Zero(layout.dim)};
  for (long long a = 0; a < layout.adv_dim; ++a) {
    if (!tuple_equiv(decode_xs(layout, map, a), target)) continue;
    for (long long s = 0; s < C; ++s) {
      out.amps[a * C + s] = state.amps[a * C + s];
    }
  }
  return out;
}

StateVector project_control_sector(const StateVector& state,
                                   std::uint32_t mask) {
  check_state(state);
  const RegisterLayout& layout = state.layout;
  if (mask >= layout.mask_to_index.size() || layout.mask_to_index[mask] < 0) {
    throw std::invalid_argument("subset mask is not representable");
  }
  const long long C = layout.control_dim;
  const long long s = layout.mask_to_index[mask];
  StateVector out{layout, Eigen::VectorXcd::Zero(layout.dim)};
  for (long long a = 0; a < layout.adv_dim; ++a) {
    out.amps[a * C + s] = state.amps[a * C + s];
  }
  return out;
}

StateVector project_basis(
    const StateVector& state, const OutputMap& map,
    const std::function<bool(std::span<const int> xs, std::span<const int> ys,
                             int z, std::uint32_t control_mask)>& keep) {
  check_state(state);
  const RegisterLayout& layout = state.layout;
  const long long C = layout.control_dim;
  StateVector out{layout, Eigen::VectorXcd::Zero(layout.dim)};
  for (long long a = 0; a < layout.adv_dim; ++a) {
    const InputTuple xs = decode_xs(layout, map, a);
    const OutputTuple ys = decode_ys(layout, map, a);
    const int z = decode_z(layout, map, a);
    for (long long s = 0; s < C; ++s) {
      if (keep(xs, ys, z, layout.subset_masks[static_cast<std::size_t>(s)])) {
        out.amps[a * C + s] = state.amps[a * C + s];
      }
    }
  }
  return out;
}

std::vector<double> measure_control(const StateVector& state) {
  check_state(state);
  const long long C = state.layout.control_dim;
  std::vector<double> probs(static_cast<std::size_t>(C), 0.0);
  for (long long a = 0; a < state.layout.adv_dim; ++a) {
    for (long long s = 0; s < C; ++s) {
      probs[static_cast<std::size_t>(s)] += std::norm(state.amps[a * C + s]);
    }
  }
  return probs;
}

std::vector<double> register_marginal(const StateVector& state,
                                      const FieldRef& field) {
  check_state(state);
  const RegisterLayout& layout = state.layout;
  validate_field(layout, field);
  const long long C = layout.control_dim;
  std::vector<double> probs(static_cast<std::size_t>(field.modulus), 0.0);
  for (long long a = 0; a < layout.adv_dim; ++a) {
    const int d = field_digit(layout, field, a);
    for (long long s = 0; s < C; ++s) {
      probs[static_cast<std::size_t>(d)] += std::norm(state.amps[a * C + s]);
    }
  }
  return probs;
}

}  // namespace qromlift
