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

namespace qromlift {

// Numeric policy shared by the whole engine.  Inequalities from the analysis
// are asserted with an absolute slack, never rescaled.
inline constexpr double kUnitarityTol = 1e-10;   // gate / normalization checks
inline constexpr double kEqualityTol = 1e-12;    // exact-value comparisons
inline constexpr double kInequalitySlack = 1e-9; // one-sided bound checks

// Exact-mode budgets (overridable through configs).
inline constexpr long long kDefaultOracleBudget = 1 << 20;
inline constexpr long long kDefaultBranchBudget = 4096;
inline constexpr long long kDefaultStateDimBudget = 1 << 22;
inline constexpr long long kDefaultTupleBudget = 10'000'000;

}  // namespace qromlift
