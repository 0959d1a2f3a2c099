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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qromlift/errors.hpp"
#include "qromlift/rng.hpp"

namespace qromlift {

namespace {

struct Coords {
  int x;
  int y;
  long long w;
};

long long encode(int N, int W, const Coords& c) {
  return (static_cast<long long>(c.x) * N + c.y) * W + c.w;
}

Coords decode(int N, int W, long long a) {
  Coords c;
  c.w = a % W;
  c.y = static_cast<int>((a / W) % N);
  c.x = static_cast<int>(a / (static_cast<long long>(N) * W));
  return c;
}

int work_digit(long long w, long long divisor, int modulus) {
  return static_cast<int>((w / divisor) % modulus);
}

long long with_work_digit(long long w, long long divisor, int modulus,
                          int value) {
  const int old = work_digit(w, divisor, modulus);
  return w + static_cast<long long>(value - old) * divisor;
}

int checked_pow(int base, int exp, const char* what) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > (1LL << 30)) {
      throw CapacityError(std::string(what) + " register would overflow");
    }
  }
  return static_cast<int>(v);
}

// Stretch a permutation of (x, y, w) to (x, y, w + W * park).
PermGate lift_perm(const PermGate& gate, int N, int W, int new_W) {
  const long long old_dim = static_cast<long long>(gate.perm.size());
  const int M = static_cast<int>(old_dim / (static_cast<long long>(N) * W));
  const long long new_dim = static_cast<long long>(M) * N * new_W;
  return make_perm_gate(new_dim, [&](long long a) {
    Coords c = decode(N, new_W, a);
    const long long w_base = c.w % W;
    const long long park = c.w / W;
    const long long t =
        gate.perm[static_cast<std::size_t>(encode(N, W, {c.x, c.y, w_base}))];
    Coords ct = decode(N, W, t);
    ct.w += static_cast<long long>(W) * park;
    return encode(N, new_W, ct);
  });
}

GateOp lift_gate(const GateOp& gate, int N, int W, int new_W) {
  if (gate.perm) return GateOp::of(lift_perm(*gate.perm, N, W, new_W));
  return gate;  // dense gates address digits that survive the extension
}

Eigen::MatrixXcd householder_to_uniform(int dim) {
  Eigen::VectorXd u = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(dim));
  Eigen::VectorXd v = u - Eigen::VectorXd::Unit(dim, 0);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(dim, dim);
  const double nsq = v.squaredNorm();
  if (nsq > 1e-30) {
    p -= (2.0 / nsq) * (v * v.transpose());
  }
  return p.cast<std::complex<double>>();
}

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a(r, c) = std::complex<double>(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  return q;
}

}  // namespace

void validate_circuit(const AdversaryCircuit& circ) {
  if (circ.M < 1 || circ.N < 1 || circ.W < 1) {
    throw std::invalid_argument("circuit needs M, N, W >= 1");
  }
  if (circ.q < 0 ||
      static_cast<int>(circ.slots.size()) != circ.q) {
    throw std::invalid_argument("circuit needs one gate slot per query");
  }
  if (circ.out.xs.empty()) {
    throw std::invalid_argument("circuit must declare at least one output");
  }
  if (!circ.out.ys.empty()) {
    throw std::invalid_argument(
        "answer slots are assigned by wrapping, not by the circuit");
  }
}

Program base_program(const AdversaryCircuit& circ) {
  validate_circuit(circ);
  Program prog;
  prog.M = circ.M;
  prog.N = circ.N;
  prog.W = circ.W;
  prog.query_count = circ.q;
  prog.out = circ.out;
  for (int i = 0; i < circ.q; ++i) {
    for (const auto& g : circ.slots[static_cast<std::size_t>(i)]) {
      prog.steps.emplace_back(g);
    }
    prog.steps.emplace_back(QueryTag{});
  }
  for (const auto& g : circ.finalize) {
    prog.steps.emplace_back(g);
  }
  return prog;
}

WrappedAdversary wrap_with_readout(const AdversaryCircuit& circ, int arity) {
  validate_circuit(circ);
  if (arity < 1 || arity != static_cast<int>(circ.out.xs.size())) {
    throw std::invalid_argument(
        "read-out arity must match the circuit's declared outputs");
  }
  const int M = circ.M;
  const int N = circ.N;
  const int W = circ.W;
  long long slot_extent = 1;
  for (int i = 0; i < arity; ++i) {
    slot_extent *= N;
    if (static_cast<long long>(W) * slot_extent > (1LL << 30)) {
      throw CapacityError("answer slots would overflow the work register");
    }
  }
  const int new_W = W * static_cast<int>(slot_extent);
  const long long adv_dim = static_cast<long long>(M) * N * new_W;

  // Routing mode per output: how x_i reaches the input register.
  enum class Mode { InPlace, Swap, Add };
  std::vector<Mode> mode(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) {
    const FieldRef& f = circ.out.xs[static_cast<std::size_t>(i)];
    if (f.reg == Reg::Input) {
      mode[static_cast<std::size_t>(i)] = Mode::InPlace;
    } else if (f.reg == Reg::Work && f.offset == 0 && f.modulus == M) {
      mode[static_cast<std::size_t>(i)] = Mode::Swap;
    } else if (f.reg == Reg::Work && f.offset + f.modulus <= M) {
      // Shift route: needs the input register parked at zero, which holds
      // for circuits built by embed_slices (the only source of offsets).
      mode[static_cast<std::size_t>(i)] = Mode::Add;
    } else {
      throw std::invalid_argument("output field cannot be routed to a query");
    }
  }

  WrappedAdversary wrapped;
  wrapped.base = circ;
  wrapped.arity = arity;
  wrapped.program.M = M;
  wrapped.program.N = N;
  wrapped.program.W = new_W;
  wrapped.program.query_count = circ.q + arity;
  wrapped.program.out = circ.out;
  for (int i = 0; i < arity; ++i) {
    long long div = W;
    for (int j = 0; j < i; ++j) div *= N;
    wrapped.program.out.ys.push_back(
        FieldRef::work(static_cast<int>(div), N));
  }

  Program base = base_program(circ);
  for (const auto& step : base.steps) {
    if (std::holds_alternative<QueryTag>(step)) {
      wrapped.program.steps.emplace_back(QueryTag{});
    } else {
      wrapped.program.steps.emplace_back(
          lift_gate(std::get<GateOp>(step), N, W, new_W));
    }
  }

  for (int i = 0; i < arity; ++i) {
    const FieldRef f = circ.out.xs[static_cast<std::size_t>(i)];
    long long slot_div = W;
    for (int j = 0; j < i; ++j) slot_div *= N;
    const Mode m = mode[static_cast<std::size_t>(i)];

    auto route = [=](bool outward) {
      return make_perm_gate(adv_dim, [=](long long a) {
        Coords c = decode(N, new_W, a);
        // park the answer slot in the output register (self-inverse swap)
        const int slot = work_digit(c.w, slot_div, N);
        c.w = with_work_digit(c.w, slot_div, N, c.y);
        c.y = slot;
        if (m == Mode::Swap) {
          const int v = work_digit(c.w, f.divisor, f.modulus);
          c.w = with_work_digit(c.w, f.divisor, f.modulus, c.x);
          c.x = v;
        } else if (m == Mode::Add) {
          const int v = f.offset + work_digit(c.w, f.divisor, f.modulus);
          c.x = outward ? (c.x - v % M + M) % M : (c.x + v) % M;
        }
        return encode(N, new_W, c);
      });
    };

    wrapped.program.steps.emplace_back(GateOp::of(route(false)));
    wrapped.program.steps.emplace_back(QueryTag{});
    wrapped.program.steps.emplace_back(GateOp::of(route(true)));
  }
  return wrapped;
}

StateVector run(const Program& prog, const OracleTable& h) {
  StateVector state = init_state(make_layout(prog.M, prog.N, prog.W, 0));
  for (const auto& step : prog.steps) {
    if (std::holds_alternative<QueryTag>(step)) {
      state = apply_oracle_query(state, h);
    } else {
      state = apply_gate(state, std::get<GateOp>(step));
    }
  }
  return state;
}

StateVector run(const AdversaryCircuit& circ, const OracleTable& h) {
  return run(base_program(circ), h);
}

AdversaryCircuit constant_adversary(int M, int N, const InputTuple& outputs) {
  if (outputs.empty()) {
    throw std::invalid_argument("constant adversary needs outputs");
  }
  for (int v : outputs) {
    if (v < 0 || v >= M) {
      throw std::invalid_argument("constant output outside the domain");
    }
  }
  const int arity = static_cast<int>(outputs.size());
  const int W = checked_pow(M, arity - 1, "constant adversary work");

  AdversaryCircuit circ;
  circ.M = M;
  circ.N = N;
  circ.W = W;
  circ.q = 0;
  circ.label = "const";
  circ.out.xs.push_back(FieldRef::input(M));
  for (int i = 1; i < arity; ++i) {
    circ.out.xs.push_back(FieldRef::work(checked_pow(M, i - 1, "field"), M));
  }
  const long long adv_dim = static_cast<long long>(M) * N * W;
  circ.finalize.push_back(GateOp::of(make_perm_gate(adv_dim, [=](long long a) {
    Coords c = decode(N, W, a);
    c.x = (c.x + outputs[0]) % M;
    long long div = 1;
    for (int i = 1; i < arity; ++i) {
      const int d = work_digit(c.w, div, M);
      c.w = with_work_digit(c.w, div, M, (d + outputs[static_cast<std::size_t>(i)]) % M);
      div *= M;
    }
    return encode(N, W, c);
  })));
  return circ;
}

int tree_depth(const DecisionTree& tree) {
  const auto depth_of = [&](auto&& self, int ref, int guard) -> int {
    if (ref < 0) return 0;
    if (guard > static_cast<int>(tree.nodes.size())) {
      throw std::invalid_argument("decision tree contains a cycle");
    }
    const auto& node = tree.nodes[static_cast<std::size_t>(ref)];
    int best = 0;
    for (int child : node.child) {
      best = std::max(best, self(self, child, guard + 1));
    }
    return 1 + best;
  };
  return depth_of(depth_of, tree.root, 0);
}

void validate_tree(const DecisionTree& tree, int M, int N, int arity) {
  for (const auto& node : tree.nodes) {
    if (node.query < 0 || node.query >= M) {
      throw std::invalid_argument("tree queries a point outside the domain");
    }
    if (static_cast<int>(node.child.size()) != N) {
      throw std::invalid_argument("tree node needs one child per answer");
    }
    for (int child : node.child) {
      if (child >= static_cast<int>(tree.nodes.size()) ||
          (child < 0 && ~child >= static_cast<int>(tree.leaves.size()))) {
        throw std::invalid_argument("tree child reference out of range");
      }
    }
  }
  if (tree.root >= static_cast<int>(tree.nodes.size()) ||
      (tree.root < 0 && ~tree.root >= static_cast<int>(tree.leaves.size()))) {
    throw std::invalid_argument("tree root reference out of range");
  }
  for (const auto& leaf : tree.leaves) {
    if (static_cast<int>(leaf.outputs.size()) != arity) {
      throw std::invalid_argument("tree leaf arity mismatch");
    }
    for (int v : leaf.outputs) {
      if (v < 0 || v >= M) {
        throw std::invalid_argument("tree leaf output outside the domain");
      }
    }
  }
  tree_depth(tree);  // rejects cycles
}

namespace {

// Walks the tree along observed answers; stays put once a leaf is reached.
// Returns a node's query point, or the leaf when the path has terminated.
struct WalkPos {
  bool at_leaf;
  int query;                      // valid when !at_leaf
  const DecisionTree::Leaf* leaf; // valid when at_leaf
};

WalkPos tree_walk(const DecisionTree& tree, const std::vector<int>& digits,
                  int len) {
  int cur = tree.root;
  for (int i = 0; i < len && cur >= 0; ++i) {
    cur = tree.nodes[static_cast<std::size_t>(cur)]
              .child[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
  }
  if (cur >= 0) {
    return {false, tree.nodes[static_cast<std::size_t>(cur)].query, nullptr};
  }
  return {true, 0, &tree.leaves[static_cast<std::size_t>(~cur)]};
}

int tree_point(const DecisionTree& tree, const std::vector<int>& digits,
               int len) {
  const WalkPos pos = tree_walk(tree, digits, len);
  return pos.at_leaf ? 0 : pos.query;  // finished paths pad with point 0
}

}  // namespace

AdversaryCircuit classical_strategy(int M, int N, const DecisionTree& tree,
                                    int arity) {
  validate_tree(tree, M, N, arity);
  const int q = tree_depth(tree);
  const int transcript = checked_pow(N, q, "transcript");
  const int W = transcript * checked_pow(M, arity - 1, "tree outputs");
  const long long adv_dim = static_cast<long long>(M) * N * W;

  AdversaryCircuit circ;
  circ.M = M;
  circ.N = N;
  circ.W = W;
  circ.q = q;
  circ.label = "tree";
  circ.out.xs.push_back(FieldRef::input(M));
  for (int i = 1; i < arity; ++i) {
    circ.out.xs.push_back(
        FieldRef::work(transcript * checked_pow(M, i - 1, "field"), M));
  }

  const auto transcript_digits = [=](long long w) {
    std::vector<int> digits(static_cast<std::size_t>(q));
    long long rest = w % transcript;
    for (int j = 0; j < q; ++j) {
      digits[static_cast<std::size_t>(j)] = static_cast<int>(rest % N);
      rest /= N;
    }
    return digits;
  };
  const auto pack_digits = [=](long long w, const std::vector<int>& digits) {
    long long packed = 0;
    for (int j = q - 1; j >= 0; --j) {
      packed = packed * N + digits[static_cast<std::size_t>(j)];
    }
    return w - w % transcript + packed;
  };

  for (int i = 1; i <= q; ++i) {
    std::vector<GateOp> slot;
    slot.push_back(GateOp::of(make_perm_gate(adv_dim, [=](long long a) {
      Coords c = decode(N, W, a);
      std::vector<int> digits = transcript_digits(c.w);
      if (i >= 2) {
        // capture the previous answer, freeing the output register
        std::swap(c.y, digits[static_cast<std::size_t>(i - 2)]);
      }
      // The input register holds the previous query point; shift it to the
      // next one.  Before the first query it holds zero.
      const int prev = i >= 2 ? tree_point(tree, digits, i - 2) : 0;
      const int next = tree_point(tree, digits, i - 1);
      c.x = ((c.x - prev + next) % M + M) % M;
      c.w = pack_digits(c.w, digits);
      return encode(N, W, c);
    })));
    circ.slots.push_back(std::move(slot));
  }

  circ.finalize.push_back(GateOp::of(make_perm_gate(adv_dim, [=](long long a) {
    Coords c = decode(N, W, a);
    std::vector<int> digits = transcript_digits(c.w);
    if (q >= 1) {
      std::swap(c.y, digits[static_cast<std::size_t>(q - 1)]);
    }
    const WalkPos pos = tree_walk(tree, digits, q);
    if (!pos.at_leaf) {
      throw std::logic_error("tree deeper than its computed depth");
    }
    const int last = tree_point(tree, digits, q > 0 ? q - 1 : 0);
    c.x = ((c.x - last + pos.leaf->outputs[0]) % M + M) % M;
    long long div = transcript;
    for (int i = 1; i < arity; ++i) {
      const int d = work_digit(c.w, div, M);
      c.w = with_work_digit(
          c.w, div, M,
          (d + pos.leaf->outputs[static_cast<std::size_t>(i)]) % M);
      div *= M;
    }
    c.w = pack_digits(c.w, digits);
    return encode(N, W, c);
  })));
  return circ;
}

AdversaryCircuit grover_adversary(int M, int N, const std::vector<bool>& marked,
                                  int iterations) {
  if (M < 2) {
    throw std::invalid_argument("amplitude amplification needs M >= 2");
  }
  if (static_cast<int>(marked.size()) != M) {
    throw std::invalid_argument("marked set size must equal the domain");
  }
  if (iterations < 0) {
    throw std::invalid_argument("iteration count must be nonnegative");
  }

  const Eigen::MatrixXcd prep_x = householder_to_uniform(M);
  // Parks the output register in the uniform superposition, which is fixed
  // by "add any constant mod N".  Every interleaved query therefore acts as
  // the identity and the amplification pattern survives unchanged.
  const Eigen::MatrixXcd prep_y = householder_to_uniform(N);

  Eigen::MatrixXcd flip = Eigen::MatrixXcd::Identity(M, M);
  for (int x = 0; x < M; ++x) {
    if (marked[static_cast<std::size_t>(x)]) flip(x, x) = -1.0;
  }
  Eigen::MatrixXcd diffuse =
      2.0 * Eigen::MatrixXcd::Constant(M, M, 1.0 / M) -
      Eigen::MatrixXcd::Identity(M, M);
  const Eigen::MatrixXcd iterate = diffuse * flip;

  AdversaryCircuit circ;
  circ.M = M;
  circ.N = N;
  circ.W = 1;
  circ.q = iterations;
  circ.label = "grover/t=" + std::to_string(iterations);
  circ.out.xs.push_back(FieldRef::input(M));

  const auto on_input = std::vector<FieldRef>{FieldRef::input(M)};
  const auto on_output = std::vector<FieldRef>{FieldRef::output(N)};
  if (iterations == 0) {
    circ.finalize.push_back(GateOp::of(make_dense_gate(prep_x, on_input)));
    circ.finalize.push_back(GateOp::of(make_dense_gate(prep_y, on_output)));
    return circ;
  }
  for (int i = 0; i < iterations; ++i) {
    std::vector<GateOp> slot;
    if (i == 0) {
      slot.push_back(GateOp::of(make_dense_gate(prep_x, on_input)));
      slot.push_back(GateOp::of(make_dense_gate(prep_y, on_output)));
    } else {
      slot.push_back(GateOp::of(make_dense_gate(iterate, on_input)));
    }
    circ.slots.push_back(std::move(slot));
  }
  circ.finalize.push_back(GateOp::of(make_dense_gate(iterate, on_input)));
  return circ;
}

AdversaryCircuit random_adversary(int M, int N, int arity, int q,
                                  std::uint64_t seed) {
  if (arity < 1) {
    throw std::invalid_argument("random adversary needs arity >= 1");
  }
  const int W =
      arity >= 2 ? checked_pow(M, arity - 1, "random adversary work") : 2;
  const int dim = M * N * W;

  AdversaryCircuit circ;
  circ.M = M;
  circ.N = N;
  circ.W = W;
  circ.q = q;
  circ.label = "random/seed=" + std::to_string(seed);
  circ.out.xs.push_back(FieldRef::input(M));
  for (int i = 1; i < arity; ++i) {
    circ.out.xs.push_back(FieldRef::work(checked_pow(M, i - 1, "field"), M));
  }
  const std::vector<FieldRef> whole = {FieldRef::input(M), FieldRef::output(N),
                                       FieldRef::work(1, W)};
  for (int i = 0; i < q; ++i) {
    auto rng = make_engine(derive_seed(seed, "gate", static_cast<std::uint64_t>(i)));
    std::vector<GateOp> slot;
    slot.push_back(GateOp::of(make_dense_gate(random_unitary(dim, rng), whole)));
    circ.slots.push_back(std::move(slot));
  }
  return circ;
}

AdversaryCircuit embed_slices(const std::vector<AdversaryCircuit>& slices,
                              const std::vector<int>& offsets, int total_M,
                              int N) {
  if (slices.empty() || slices.size() != offsets.size()) {
    throw std::invalid_argument("embedding needs one offset per slice");
  }
  long long total_W = 1;
  std::vector<long long> block_div(slices.size());
  std::vector<long long> block_extent(slices.size());
  for (std::size_t i = 0; i < slices.size(); ++i) {
    validate_circuit(slices[i]);
    if (slices[i].N != N) {
      throw std::invalid_argument("slice range size mismatch");
    }
    if (offsets[i] < 0 || offsets[i] + slices[i].M > total_M) {
      throw std::invalid_argument("slice window outside the composite domain");
    }
    block_div[i] = total_W;
    block_extent[i] =
        static_cast<long long>(slices[i].M) * slices[i].N * slices[i].W;
    total_W *= block_extent[i];
    if (total_W > (1LL << 30)) {
      throw CapacityError("composite work register would overflow");
    }
  }

  AdversaryCircuit out;
  out.M = total_M;
  out.N = N;
  out.W = static_cast<int>(total_W);
  out.label = "product";
  const long long adv_dim = static_cast<long long>(total_M) * N * out.W;

  // Field translation for slice i: its whole registers become work digits of
  // the composite.  Block layout: ((x * N) + y) * W_i + w.
  const auto slice_field = [&](std::size_t i, const FieldRef& f) {
    const auto& s = slices[i];
    switch (f.reg) {
      case Reg::Input:
        return FieldRef::work(
            static_cast<int>(block_div[i] * s.N * s.W * f.divisor), f.modulus,
            f.offset);
      case Reg::Output:
        return FieldRef::work(static_cast<int>(block_div[i] * s.W * f.divisor),
                              f.modulus, f.offset);
      case Reg::Work:
        return FieldRef::work(static_cast<int>(block_div[i] * f.divisor),
                              f.modulus, f.offset);
    }
    throw std::logic_error("unknown register");
  };

  const int comp_W = out.W;
  const auto lift_slice_gate = [&](std::size_t i, const GateOp& g) {
    if (g.dense) {
      std::vector<FieldRef> fields;
      fields.reserve(g.dense->fields.size());
      for (const auto& f : g.dense->fields) fields.push_back(slice_field(i, f));
      return GateOp::of(make_dense_gate(g.dense->matrix, std::move(fields)));
    }
    const auto& perm = g.perm->perm;
    const long long div = block_div[i];
    const long long extent = block_extent[i];
    return GateOp::of(make_perm_gate(adv_dim, [&, div, extent](long long a) {
      Coords c = decode(N, comp_W, a);
      const long long b = (c.w / div) % extent;
      const long long b2 = perm[static_cast<std::size_t>(b)];
      c.w += (b2 - b) * div;
      return encode(N, comp_W, c);
    }));
  };

  std::vector<GateOp> pending;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const auto& s = slices[i];
    const long long xdiv = block_div[i] * s.N * s.W;
    const long long ydiv = block_div[i] * s.W;
    const int offset = offsets[i];
    const int sM = s.M;
    const int sN = s.N;

    // Around each slice query: move the slice's query point into the shared
    // input register (which is parked at zero between queries) and swap its
    // private answer accumulator into the shared output register.
    const auto route = [&, xdiv, ydiv, offset, sM, sN](bool outward) {
      return GateOp::of(make_perm_gate(adv_dim, [=](long long a) {
        Coords c = decode(N, comp_W, a);
        const int v = offset + work_digit(c.w, xdiv, sM);
        c.x = outward ? (c.x - v % total_M + total_M) % total_M
                      : (c.x + v) % total_M;
        const int ly = work_digit(c.w, ydiv, sN);
        c.w = with_work_digit(c.w, ydiv, sN, c.y);
        c.y = ly;
        return encode(N, comp_W, c);
      }));
    };

    const Program prog = base_program(s);
    for (const auto& step : prog.steps) {
      if (std::holds_alternative<QueryTag>(step)) {
        pending.push_back(route(false));
        out.slots.push_back(std::move(pending));
        pending.clear();
        pending.push_back(route(true));
        ++out.q;
      } else {
        pending.push_back(lift_slice_gate(i, std::get<GateOp>(step)));
      }
    }

    for (const auto& f : s.out.xs) {
      FieldRef lifted = slice_field(i, f);
      lifted.offset += offset;
      out.out.xs.push_back(lifted);
    }
  }
  out.finalize = std::move(pending);
  return out;
}

}  // namespace qromlift
