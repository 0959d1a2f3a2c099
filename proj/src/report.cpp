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

#include "qromlift/report.hpp"

#include <sstream>
#include <stdexcept>

namespace qromlift {

namespace {

using nlohmann::json;

json field_to_json(const FieldRef& f) {
  json j;
  switch (f.reg) {
    case Reg::Input: j["reg"] = "input"; break;
    case Reg::Output: j["reg"] = "output"; break;
    case Reg::Work: j["reg"] = "work"; break;
  }
  j["divisor"] = f.divisor;
  j["modulus"] = f.modulus;
  j["offset"] = f.offset;
  return j;
}

FieldRef field_from_json(const json& j) {
  FieldRef f;
  const std::string reg = j.at("reg").get<std::string>();
  if (reg == "input") {
    f.reg = Reg::Input;
  } else if (reg == "output") {
    f.reg = Reg::Output;
  } else if (reg == "work") {
    f.reg = Reg::Work;
  } else {
    throw std::invalid_argument("unknown register name: " + reg);
  }
  f.divisor = j.at("divisor").get<int>();
  f.modulus = j.at("modulus").get<int>();
  f.offset = j.at("offset").get<int>();
  return f;
}

json gate_to_json(const GateOp& gate) {
  json j;
  if (gate.dense) {
    j["kind"] = "dense";
    json fields = json::array();
    for (const auto& f : gate.dense->fields) fields.push_back(field_to_json(f));
    j["fields"] = std::move(fields);
    const auto& m = gate.dense->matrix;
    j["dim"] = static_cast<long long>(m.rows());
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        data.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
      }
    }
    j["matrix"] = std::move(data);
  } else if (gate.perm) {
    j["kind"] = "perm";
    j["perm"] = gate.perm->perm;
  } else {
    throw std::invalid_argument("gate holds neither a matrix nor a map");
  }
  return j;
}

GateOp gate_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dense") {
    std::vector<FieldRef> fields;
    for (const auto& f : j.at("fields")) fields.push_back(field_from_json(f));
    const auto dim = j.at("dim").get<Eigen::Index>();
    const auto& data = j.at("matrix");
    if (static_cast<Eigen::Index>(data.size()) != dim * dim) {
      throw std::invalid_argument("matrix entry count does not match dim^2");
    }
    Eigen::MatrixXcd m(dim, dim);
    Eigen::Index i = 0;
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c, ++i) {
        m(r, c) = std::complex<double>(data[i][0].get<double>(),
                                       data[i][1].get<double>());
      }
    }
    return GateOp::of(make_dense_gate(std::move(m), std::move(fields)));
  }
  if (kind == "perm") {
    return GateOp::of(
        make_perm_gate(j.at("perm").get<std::vector<long long>>()));
  }
  throw std::invalid_argument("unknown gate kind: " + kind);
}

json output_map_to_json(const OutputMap& map) {
  json j;
  json xs = json::array();
  for (const auto& f : map.xs) xs.push_back(field_to_json(f));
  j["xs"] = std::move(xs);
  json ys = json::array();
  for (const auto& f : map.ys) ys.push_back(field_to_json(f));
  j["ys"] = std::move(ys);
  j["z"] = map.z ? field_to_json(*map.z) : json(nullptr);
  return j;
}

OutputMap output_map_from_json(const json& j) {
  OutputMap map;
  for (const auto& f : j.at("xs")) map.xs.push_back(field_from_json(f));
  for (const auto& f : j.at("ys")) map.ys.push_back(field_from_json(f));
  if (!j.at("z").is_null()) map.z = field_from_json(j.at("z"));
  return map;
}

json branch_to_json(const BranchOutcome& b) {
  json j;
  j["positions"] = b.choice.positions;
  j["bits"] = b.choice.bits;
  j["p"] = b.p;
  return j;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

json oracle_to_json(const OracleTable& h) {
  json j;
  j["M"] = h.M;
  j["N"] = h.N;
  j["values"] = h.values;
  return j;
}

OracleTable oracle_from_json(const json& j) {
  OracleTable h;
  h.M = j.at("M").get<int>();
  h.N = j.at("N").get<int>();
  h.values = j.at("values").get<std::vector<int>>();
  validate_oracle(h);
  return h;
}

json circuit_to_json(const AdversaryCircuit& circ) {
  json j;
  j["M"] = circ.M;
  j["N"] = circ.N;
  j["W"] = circ.W;
  j["q"] = circ.q;
  j["label"] = circ.label;
  json slots = json::array();
  for (const auto& slot : circ.slots) {
    json gates = json::array();
    for (const auto& g : slot) gates.push_back(gate_to_json(g));
    slots.push_back(std::move(gates));
  }
  j["slots"] = std::move(slots);
  json fin = json::array();
  for (const auto& g : circ.finalize) fin.push_back(gate_to_json(g));
  j["finalize"] = std::move(fin);
  j["out"] = output_map_to_json(circ.out);
  return j;
}

AdversaryCircuit circuit_from_json(const json& j) {
  AdversaryCircuit circ;
  circ.M = j.at("M").get<int>();
  circ.N = j.at("N").get<int>();
  circ.W = j.at("W").get<int>();
  circ.q = j.at("q").get<int>();
  circ.label = j.at("label").get<std::string>();
  for (const auto& slot : j.at("slots")) {
    std::vector<GateOp> gates;
    for (const auto& g : slot) gates.push_back(gate_from_json(g));
    circ.slots.push_back(std::move(gates));
  }
  for (const auto& g : j.at("finalize")) {
    circ.finalize.push_back(gate_from_json(g));
  }
  circ.out = output_map_from_json(j.at("out"));
  validate_circuit(circ);
  return circ;
}

json estimate_to_json(const SampleEstimate& est) {
  json j;
  j["estimate"] = est.estimate;
  j["std_error"] = est.std_error;
  j["trials"] = est.trials;
  return j;
}

json result_to_json(const ExperimentResult& result) {
  json j;
  j["lhs"] = result.lhs;
  j["rhs"] = result.rhs;
  j["loss"] = result.loss;
  j["holds"] = result.holds;
  j["q"] = result.q;
  j["k"] = result.k;
  j["adversary"] = result.adversary_label;
  j["x_o"] = result.x_o;
  if (!result.per_branch.empty()) {
    json branches = json::array();
    for (const auto& b : result.per_branch) branches.push_back(branch_to_json(b));
    j["per_branch"] = std::move(branches);
  }
  return j;
}

json bound_to_json(const BoundReport& bound) {
  json j;
  j["name"] = bound.name;
  json params = json::object();
  for (const auto& [key, value] : bound.params) params[key] = value;
  j["params"] = std::move(params);
  j["value"] = bound.value;
  j["vacuous"] = bound.vacuous;
  j["formula"] = bound.formula;
  return j;
}

json lifted_to_json(const LiftedCheckReport& report) {
  json j;
  j["lifted_value"] = report.lifted_value;
  j["base_value"] = report.base_value;
  j["loss"] = report.loss;
  j["holds"] = report.holds;
  j["q"] = report.q;
  j["k"] = report.k;
  return j;
}

json uniform_images_to_json(const UniformImagesReport& report) {
  json j;
  j["averaged_deviation"] = report.averaged_deviation;
  j["worst_single_g"] = report.worst_single_g;
  j["abort_mass"] = report.abort_mass;
  return j;
}

json loss_comparison_to_json(const LossComparison& cmp) {
  json j;
  j["q"] = cmp.q;
  j["k"] = cmp.k;
  j["coherent"] = cmp.coherent;
  j["classical"] = cmp.classical;
  j["ratio"] = cmp.ratio;
  j["factorial_sq"] = cmp.factorial_sq;
  j["trend"] = cmp.trend;
  return j;
}

json game_to_json(const GameSpec& game) {
  json j;
  j["name"] = game.name;
  j["M"] = game.M;
  j["N"] = game.N;
  j["k"] = game.k;
  j["image_only"] = game.image_only;
  j["distinct_group"] = game.distinct_group;
  j["challenge_count"] = game.challenges.size();
  j["has_oracle_filter"] = static_cast<bool>(game.oracle_filter);
  return j;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(header[i]);
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::invalid_argument("csv row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

json strip_timing(json report) {
  report.erase("timing");
  return report;
}

}  // namespace qromlift
