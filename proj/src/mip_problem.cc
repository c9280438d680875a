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

#include "dash/mip_problem.h"

#include <cmath>
#include <set>
#include <sstream>

namespace dash {

int MipProblem::AddVariable(std::string var_name, double obj, double lb,
                            double ub, VarKind kind) {
  var_names.push_back(std::move(var_name));
  objective.push_back(obj);
  lower.push_back(lb);
  upper.push_back(ub);
  kinds.push_back(kind);
  return num_vars() - 1;
}

int MipProblem::AddRow(std::string row_name,
                       std::vector<std::pair<int, double>> coeffs,
                       RowSense row_sense, double row_rhs) {
  rows.push_back(Row{std::move(row_name), std::move(coeffs), row_sense, row_rhs});
  return num_rows() - 1;
}

double MipProblem::Evaluate(const std::vector<double>& x) const {
  double value = objective_offset;
  for (int j = 0; j < num_vars(); ++j) value += objective[j] * x[j];
  return value;
}

std::vector<std::string> Validate(const MipProblem& problem) {
  std::vector<std::string> violations;
  const int n = problem.num_vars();
  auto var_label = [&](int j) {
    return j < static_cast<int>(problem.var_names.size()) &&
                   !problem.var_names[j].empty()
               ? problem.var_names[j]
               : "#" + std::to_string(j);
  };
  if (problem.lower.size() != problem.objective.size() ||
      problem.upper.size() != problem.objective.size() ||
      problem.kinds.size() != problem.objective.size()) {
    violations.push_back("per-variable arrays have inconsistent lengths");
    return violations;
  }
  for (int j = 0; j < n; ++j) {
    const double lb = problem.lower[j];
    const double ub = problem.upper[j];
    if (std::isnan(lb) || std::isnan(ub) || lb > ub) {
      std::ostringstream os;
      os << "variable " << var_label(j) << ": lower bound " << lb
         << " exceeds upper bound " << ub;
      violations.push_back(os.str());
    }
    if (problem.kinds[j] == VarKind::kBinary && (lb < 0.0 || ub > 1.0)) {
      std::ostringstream os;
      os << "binary variable " << var_label(j) << " has bounds [" << lb << ", "
         << ub << "] outside [0, 1]";
      violations.push_back(os.str());
    }
  }
  for (const Row& row : problem.rows) {
    std::set<int> seen;
    for (const auto& [var, coef] : row.coeffs) {
      if (var < 0 || var >= n) {
        violations.push_back("row " + row.name + " references variable index " +
                             std::to_string(var) + " out of range");
      } else if (!seen.insert(var).second) {
        violations.push_back("row " + row.name + " lists variable " +
                             var_label(var) + " twice");
      }
      if (!std::isfinite(coef)) {
        violations.push_back("row " + row.name + " has a non-finite coefficient");
      }
    }
    if (std::isnan(row.rhs)) violations.push_back("row " + row.name + " has NaN rhs");
  }
  return violations;
}

bool IsFeasible(const MipProblem& problem, const std::vector<double>& x,
                double tol, double int_tol) {
  const int n = problem.num_vars();
  if (static_cast<int>(x.size()) != n) return false;
  for (int j = 0; j < n; ++j) {
    if (x[j] < problem.lower[j] - tol || x[j] > problem.upper[j] + tol) return false;
    if (problem.is_integral(j) && std::abs(x[j] - std::round(x[j])) > int_tol) {
      return false;
    }
  }
  for (const Row& row : problem.rows) {
    double activity = 0.0;
    for (const auto& [var, coef] : row.coeffs) activity += coef * x[var];
    const double slack_tol = tol * (1.0 + std::abs(row.rhs));
    switch (row.sense) {
      case RowSense::kLe:
        if (activity > row.rhs + slack_tol) return false;
        break;
      case RowSense::kGe:
        if (activity < row.rhs - slack_tol) return false;
        break;
      case RowSense::kEq:
        if (std::abs(activity - row.rhs) > slack_tol) return false;
        break;
    }
  }
  return true;
}

}  // namespace dash
