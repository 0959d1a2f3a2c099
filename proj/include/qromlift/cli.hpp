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

#ifndef QROMLIFT_CLI_HPP_
#define QROMLIFT_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qromlift/tolerances.hpp"

namespace qromlift {

inline constexpr const char* kArtifactVersion = "0.1.0";

// One batch experiment.  Every randomized component receives a sub-seed
// derived from the single `seed` field, so a config replays byte-identically
// (timing aside).
struct ExperimentConfig {
  std::string suite;  // verify-lift | uniform-images | game-value |
                      // bounds-table | p-of-r | compare-losses | classical-mr
  int M = 2;
  int N = 2;
  int k = 1;
  int q = 1;
  int g = 1;          // copies for product-style suites (reserved)
  int K = 1;          // salt count (reserved)
  long long S = 1;    // advice bits (reserved)
  long long trials = 1000;
  std::uint64_t seed = 0;
  std::string adversary = "random";  // guess | classical | grover | random
  std::string relation = "inversion";
  long long oracle_budget = kDefaultOracleBudget;
  long long state_dim_budget = kDefaultStateDimBudget;
  long long branch_budget = kDefaultBranchBudget;
  long long tuple_budget = kDefaultTupleBudget;
  std::string out_path;         // empty writes to stdout
  std::string format = "json";  // json | csv

  std::vector<std::string> defaults_applied;  // echoed in the report
};

// Defaults filled, range and consistency checks applied.  On failure the
// config is absent and diagnostics name the offending fields.
struct ConfigOutcome {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> diagnostics;
};

ConfigOutcome validate_config(const nlohmann::json& raw);
ConfigOutcome validate_config_text(const std::string& raw_text);

// Everything a suite run produces.  `report` always holds the JSON document;
// `csv` is nonempty only for tabular suites.  exit_status is 0 exactly when
// every inequality the suite asserts came out true.
struct SuiteOutput {
  nlohmann::json report;
  std::string csv;
  bool all_hold = true;
  int exit_status = 0;
};

SuiteOutput run_suite(const ExperimentConfig& config);

// Full command-line entry: one subcommand per suite, flags mirroring the
// config fields, `--config file.json` overriding flags.
int cli_main(int argc, char** argv);

}  // namespace qromlift

#endif  // QROMLIFT_CLI_HPP_
