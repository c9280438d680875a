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

#include "dash/features.h"

#include <algorithm>
#include <cmath>

namespace dash {
namespace {

constexpr double kConstantStddev = 1e-12;

struct Stats {
  double min = 0.0, max = 0.0, avg = 0.0, std = 0.0;
};

Stats Summarize(const std::vector<double>& values) {
  Stats s;
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.avg = sum / values.size();
  double sq = 0.0;
  for (double v : values) sq += (v - s.avg) * (v - s.avg);
  s.std = std::sqrt(sq / values.size());
  return s;
}

void Put(FeatureVector& f, int at, const Stats& s) {
  f[at] = s.min;
  f[at + 1] = s.max;
  f[at + 2] = s.avg;
  f[at + 3] = s.std;
}

double Ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

int KindSlot(VarKind kind) { return static_cast<int>(kind); }

}  // namespace

std::string FeatureColumnName(int index) { return "f" + std::to_string(index); }

FeatureVector ComputeFeatures(const MipProblem& problem,
                              std::span<const double> lower,
                              std::span<const double> upper, int depth) {
  namespace fi = feature_index;
  FeatureVector f{};
  const int n = problem.num_vars();
  const int m = problem.num_rows();

  std::vector<bool> var_alive(n);
  std::array<double, 3> total_by_kind{};
  std::array<double, 3> alive_by_kind{};
  std::array<double, 3> obj_by_kind{};
  double alive = 0.0, alive_obj = 0.0;
  for (int j = 0; j < n; ++j) {
    const int k = KindSlot(problem.kinds[j]);
    total_by_kind[k] += 1.0;
    var_alive[j] = lower[j] < upper[j];
    if (!var_alive[j]) continue;
    alive += 1.0;
    alive_by_kind[k] += 1.0;
    if (problem.objective[j] != 0.0) {
      alive_obj += 1.0;
      obj_by_kind[k] += 1.0;
    }
  }
  f[fi::kVarsRemaining] = Ratio(alive, n);
  f[fi::kVarsInObjective] = Ratio(alive_obj, n);
  for (int k = 0; k < 3; ++k) {
    f[fi::kVarsRemaining + 1 + k] = Ratio(alive_by_kind[k], total_by_kind[k]);
    f[fi::kVarsInObjective + 1 + k] = Ratio(obj_by_kind[k], total_by_kind[k]);
  }

  std::vector<double> per_row;
  std::array<std::vector<double>, 3> per_row_by_kind;
  std::vector<int> rows_per_var(n, 0);
  double eq_rows = 0.0, ineq_rows = 0.0;
  for (int i = 0; i < m; ++i) {
    const Row& row = problem.rows[i];
    std::array<int, 3> count_by_kind{};
    int count = 0;
    for (const auto& [var, coef] : row.coeffs) {
      if (!var_alive[var]) continue;
      ++count;
      ++count_by_kind[KindSlot(problem.kinds[var])];
    }
    if (count == 0) continue;
    for (const auto& [var, coef] : row.coeffs) {
      if (var_alive[var]) ++rows_per_var[var];
    }
    per_row.push_back(count);
    for (int k = 0; k < 3; ++k) per_row_by_kind[k].push_back(count_by_kind[k]);
    (row.sense == RowSense::kEq ? eq_rows : ineq_rows) += 1.0;
  }
  const double alive_rows = static_cast<double>(per_row.size());
  f[fi::kEqualityRows] = Ratio(eq_rows, alive_rows);
  f[fi::kInequalityRows] = Ratio(ineq_rows, alive_rows);
  Put(f, fi::kVarsPerRow, Summarize(per_row));
  for (int k = 0; k < 3; ++k) {
    Put(f, fi::kVarsPerRowByKind + 4 * k, Summarize(per_row_by_kind[k]));
  }

  std::array<std::vector<double>, 3> per_var_by_kind;
  for (int j = 0; j < n; ++j) {
    if (var_alive[j]) {
      per_var_by_kind[KindSlot(problem.kinds[j])].push_back(rows_per_var[j]);
    }
  }
  for (int k = 0; k < 3; ++k) {
    Put(f, fi::kRowsPerVarByKind + 4 * k, Summarize(per_var_by_kind[k]));
  }
  f[fi::kRowsRemaining] = Ratio(alive_rows, m);
  f[fi::kDepth] = depth;
  return f;
}

FeatureVector ComputeFeatures(const MipProblem& problem,
                              const BoundOverrides& overrides, int depth) {
  std::vector<double> lower, upper;
  ApplyOverrides(problem, overrides, lower, upper);
  return ComputeFeatures(problem, lower, upper, depth);
}

bool ScalingParams::is_constant(int dim) const {
  return stddev[dim] <= kConstantStddev;
}

ScalingParams FitScaling(std::span<const FeatureVector> vectors) {
  ScalingParams params;
  params.mean.assign(kNumFeatures, 0.0);
  params.stddev.assign(kNumFeatures, 0.0);
  if (vectors.empty()) return params;
  const double count = static_cast<double>(vectors.size());
  for (const FeatureVector& v : vectors) {
    for (int d = 0; d < kNumFeatures; ++d) params.mean[d] += v[d];
  }
  for (double& m : params.mean) m /= count;
  for (const FeatureVector& v : vectors) {
    for (int d = 0; d < kNumFeatures; ++d) {
      const double diff = v[d] - params.mean[d];
      params.stddev[d] += diff * diff;
    }
  }
  for (double& s : params.stddev) s = std::sqrt(s / count);
  return params;
}

std::vector<double> ApplyScaling(std::span<const double> v,
                                 const ScalingParams& params) {
  DASH_CHECK(v.size() == params.mean.size() && v.size() == params.stddev.size(),
             "scaling dimension mismatch");
  std::vector<double> out(v.size());
  for (size_t d = 0; d < v.size(); ++d) {
    out[d] = params.is_constant(static_cast<int>(d))
                 ? 0.0
                 : (v[d] - params.mean[d]) / params.stddev[d];
  }
  return out;
}

std::vector<double> ApplyMask(std::span<const double> v,
                              const std::vector<bool>& mask) {
  DASH_CHECK(v.size() == mask.size(), "mask dimension mismatch");
  std::vector<double> out;
  out.reserve(v.size());
  for (size_t d = 0; d < v.size(); ++d) {
    if (mask[d]) out.push_back(v[d]);
  }
  return out;
}

}  // namespace dash
