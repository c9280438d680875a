// Copyright 2026 The dashmip Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random instance families for training and benchmarking.

#ifndef DASH_GENERATORS_H_
#define DASH_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dash/mip_problem.h"

namespace dash {

// 0/1 knapsack with weakly correlated values: one LE row, all binary,
// maximize.
MipProblem GenerateKnapsack(int items, uint64_t seed);

// Multi-row knapsack over general integers in [0, 3]; maximize.
MipProblem GenerateIntegerKnapsack(int vars, int rows, uint64_t seed);

// Weighted set cover: binary columns, GE rows, minimize.
MipProblem GenerateSetCover(int rows, int columns, double density, uint64_t seed);

// Single-item capacitated lot sizing: continuous production and inventory,
// binary setups, EQ balance rows and LE setup-linking rows; minimize.
MipProblem GenerateLotSizing(int periods, uint64_t seed);

// Bin packing: items with weights in [20, 60], items / 2 bins of capacity
// 100, binary assignment and bin-usage variables; minimize bins used.
MipProblem GenerateBinPacking(int items, uint64_t seed);

// Capacitated facility location: binary opening decisions, continuous
// fractional assignments, EQ demand rows and LE capacity rows; minimize.
MipProblem GenerateFacilityLocation(int facilities, int customers, uint64_t seed);

// Small pure-integer program: 1..max_vars integer variables with bounds
// inside [0, 3], 1..max_rows rows with integer coefficients in [-10, 10],
// integer objective, maximize. Used for exhaustive-enumeration checks.
MipProblem GenerateSmallInteger(uint64_t seed, int max_vars = 8, int max_rows = 6);

inline constexpr std::string_view kFamilyNames[] = {
    "knapsack", "intknap", "setcover", "lotsizing", "binpacking", "facility",
    "small"};

// Generates one member of a named family with sizes picked from `seed`.
std::optional<MipProblem> GenerateFamily(std::string_view family, uint64_t seed);

}  // namespace dash

#endif  // DASH_GENERATORS_H_
