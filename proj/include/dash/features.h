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

// Structural descriptor of a branch-and-bound subproblem.
//
// A variable is removed from the subproblem once its bounds coincide; a row
// is removed once all of its variables are removed. Layout of the 40 values:
//
//   [0..3]   fraction of variables remaining: all, continuous, integer, binary
//   [4..7]   fraction of variables remaining with a nonzero objective
//            coefficient: all, continuous, integer, binary
//   [8]      fraction of remaining rows that are equalities
//   [9]      fraction of remaining rows that are inequalities
//   [10..13] remaining variables per remaining row: min, max, avg, std
//   [14..25] same, counting only continuous / integer / binary variables
//   [26..37] remaining rows per remaining variable, for continuous / integer /
//            binary variables: min, max, avg, std
//   [38]     fraction of rows remaining
//   [39]     depth
//
// Fractions use the variable (or row) count of the whole problem as the
// denominator and are 0 when that count is 0. Statistics over an empty set
// are all 0; std is the population standard deviation.

#ifndef DASH_FEATURES_H_
#define DASH_FEATURES_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dash/lp_solver.h"
#include "dash/mip_problem.h"

namespace dash {

inline constexpr int kNumFeatures = 40;

using FeatureVector = std::array<double, kNumFeatures>;

namespace feature_index {
inline constexpr int kVarsRemaining = 0;
inline constexpr int kVarsInObjective = 4;
inline constexpr int kEqualityRows = 8;
inline constexpr int kInequalityRows = 9;
inline constexpr int kVarsPerRow = 10;
inline constexpr int kVarsPerRowByKind = 14;
inline constexpr int kRowsPerVarByKind = 26;
inline constexpr int kRowsRemaining = 38;
inline constexpr int kDepth = 39;
}  // namespace feature_index

// Column names f0..f39 used in CSV files.
std::string FeatureColumnName(int index);

FeatureVector ComputeFeatures(const MipProblem& problem,
                              std::span<const double> lower,
                              std::span<const double> upper, int depth);
FeatureVector ComputeFeatures(const MipProblem& problem,
                              const BoundOverrides& overrides, int depth);

// Per-dimension z-score parameters.
struct ScalingParams {
  std::vector<double> mean;
  std::vector<double> stddev;

  // Dimensions whose stddev is (numerically) zero map to 0.
  bool is_constant(int dim) const;

  friend bool operator==(const ScalingParams&, const ScalingParams&) = default;
};

ScalingParams FitScaling(std::span<const FeatureVector> vectors);
std::vector<double> ApplyScaling(std::span<const double> v,
                                 const ScalingParams& params);

// Keeps the dimensions whose mask entry is true.
std::vector<double> ApplyMask(std::span<const double> v,
                              const std::vector<bool>& mask);

}  // namespace dash

#endif  // DASH_FEATURES_H_
