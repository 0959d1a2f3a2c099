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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qromlift/statevec.hpp"

namespace qromlift {

// A q-query circuit: gates in slots[i] run before query i+1, finalize runs
// after the last query, then the output map tells where (x-tuple, z) sits.
// Gates never touch the control register, so the same circuit runs unchanged
// inside the recording experiments.
struct AdversaryCircuit {
  int M = 0;
  int N = 0;
  int W = 1;
  int q = 0;
  std::vector<std::vector<GateOp>> slots;  // size q
  std::vector<GateOp> finalize;
  OutputMap out;  // xs and optional z; ys stays empty until wrapping
  std::string label;
};

void validate_circuit(const AdversaryCircuit& circ);

struct QueryTag {};
using ProgramStep = std::variant<GateOp, QueryTag>;

// Flattened execution order.  query_count counts QueryTag steps.
struct Program {
  int M = 0;
  int N = 0;
  int W = 1;
  int query_count = 0;
  std::vector<ProgramStep> steps;
  OutputMap out;
};

Program base_program(const AdversaryCircuit& circ);

// Adversary followed by one read-out query per declared output.  Each
// read-out routes x_i into the input register and a fresh zeroed work slot
// into the output register, queries, and routes back, so slot i ends up
// holding the oracle's answer at x_i.  Only register-routing permutations
// are interleaved with the read-out queries; total queries = q + arity.
struct WrappedAdversary {
  AdversaryCircuit base;
  int arity = 1;
  Program program;  // out.ys points at the answer slots
};

WrappedAdversary wrap_with_readout(const AdversaryCircuit& circ, int arity);

// Execute against a fixed table (no control register).
StateVector run(const Program& prog, const OracleTable& h);
StateVector run(const AdversaryCircuit& circ, const OracleTable& h);

// --- the fixture zoo ---------------------------------------------------------

// No queries; deterministically outputs the given tuple.
AdversaryCircuit constant_adversary(int M, int N, const InputTuple& outputs);

// Adaptive classical strategy.  Nodes query a point and branch on the
// answer; leaves emit the output tuple.  Child/root encoding: value >= 0 is
// a node index, value < 0 is ~leaf_index.
struct DecisionTree {
  struct Node {
    int query = 0;
    std::vector<int> child;  // one entry per possible answer
  };
  struct Leaf {
    InputTuple outputs;
  };
  std::vector<Node> nodes;
  std::vector<Leaf> leaves;
  int root = ~0;
};

int tree_depth(const DecisionTree& tree);
void validate_tree(const DecisionTree& tree, int M, int N, int arity);

// Realizes the tree as permutation gates: query answers are captured into
// transcript digits, shallow paths pad with dummy queries at point 0, and
// the finalize step computes the leaf outputs from the transcript.
AdversaryCircuit classical_strategy(int M, int N, const DecisionTree& tree,
                                    int arity);

// Amplitude amplification toward the marked inputs, with the phase flip
// hard-coded into the gates.  The t interleaved oracle queries leave the
// state untouched (the output register is parked in the addition-invariant
// uniform state), so the analysis sees a genuine t-query adversary while
// the interference pattern stays exact.
AdversaryCircuit grover_adversary(int M, int N, const std::vector<bool>& marked,
                                  int iterations);

// q Haar-style unitaries over the whole register space (QR of a seeded
// complex Gaussian).  Output tuple: input register plus arity-1 work fields.
AdversaryCircuit random_adversary(int M, int N, int arity, int q,
                                  std::uint64_t seed);

// Runs each slice circuit against its own window [offset, offset + M_i) of a
// composite domain.  Slice registers live in private work fields; the shared
// input and output registers are used only transiently around each query and
// are restored to zero afterwards.  Slice outputs keep their window offset.
AdversaryCircuit embed_slices(const std::vector<AdversaryCircuit>& slices,
                              const std::vector<int>& offsets, int total_M,
                              int N);

}  // namespace qromlift
