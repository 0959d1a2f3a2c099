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

#ifndef QROMLIFT_REPORT_HPP_
#define QROMLIFT_REPORT_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "qromlift/adversary.hpp"
#include "qromlift/bounds.hpp"
#include "qromlift/games.hpp"
#include "qromlift/oracle.hpp"
#include "qromlift/reprogram.hpp"

namespace qromlift {

// JSON views of every result type, plus invertible encodings for the types
// used as regression fixtures (oracle tables, circuits).  Keys are emitted
// in sorted order and numbers with shortest round-trip formatting, so equal
// values always print as equal bytes.

nlohmann::json oracle_to_json(const OracleTable& h);
OracleTable oracle_from_json(const nlohmann::json& j);

nlohmann::json circuit_to_json(const AdversaryCircuit& circ);
AdversaryCircuit circuit_from_json(const nlohmann::json& j);

nlohmann::json estimate_to_json(const SampleEstimate& est);
nlohmann::json result_to_json(const ExperimentResult& result);
nlohmann::json bound_to_json(const BoundReport& bound);
nlohmann::json lifted_to_json(const LiftedCheckReport& report);
nlohmann::json uniform_images_to_json(const UniformImagesReport& report);
nlohmann::json loss_comparison_to_json(const LossComparison& cmp);

// Descriptive view (relations and filters are code, not data).
nlohmann::json game_to_json(const GameSpec& game);

// Plain CSV: header then rows, every row padded checked against the header
// width; fields containing commas or quotes are quoted.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Copy of a report with the volatile fields (wall-clock timing) removed, for
// byte-comparison of reruns.
nlohmann::json strip_timing(nlohmann::json report);

}  // namespace qromlift

#endif  // QROMLIFT_REPORT_HPP_
