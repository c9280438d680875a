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

#ifndef DASH_MIP_PROBLEM_H_
#define DASH_MIP_PROBLEM_H_

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dash {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Thrown when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define DASH_CHECK(cond, msg)                                     \
  do {                                                            \
    if (!(cond)) throw ::dash::ContractViolation(std::string(msg)); \
  } while (false)

enum class VarKind { kContinuous = 0, kInteger = 1, kBinary = 2 };
enum class RowSense { kLe, kGe, kEq };
enum class ObjSense { kMinimize, kMaximize };

struct Row {
  std::string name;
  // (variable index, coefficient); indices are unique within a row.
  std::vector<std::pair<int, double>> coeffs;
  RowSense sense = RowSense::kLe;
  double rhs = 0.0;

  friend bool operator==(const Row&, const Row&) = default;
};

// A mixed integer program
//
//   optimize  c^T x + offset
//   s.t.      rows (LE / GE / EQ)
//             lower <= x <= upper
//             x_j integral for integer and binary kinds.
struct MipProblem {
  std::string name;
  std::string objective_name = "OBJ";
  ObjSense sense = ObjSense::kMinimize;
  double objective_offset = 0.0;

  std::vector<std::string> var_names;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<VarKind> kinds;
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  bool is_integral(int j) const { return kinds[j] != VarKind::kContinuous; }

  // +1 for maximize, -1 for minimize. Multiplying the objective by this
  // gives the maximize-form used by the search.
  double max_sign() const { return sense == ObjSense::kMaximize ? 1.0 : -1.0; }

  // Appends a variable and returns its index.
  int AddVariable(std::string var_name, double obj, double lb, double ub,
                  VarKind kind);
  int AddRow(std::string row_name, std::vector<std::pair<int, double>> coeffs,
             RowSense row_sense, double row_rhs);

  // Objective value (original sense, including the offset) of `x`.
  double Evaluate(const std::vector<double>& x) const;

  friend bool operator==(const MipProblem&, const MipProblem&) = default;
};

// Returns one human-readable line per broken invariant; empty iff the problem
// is well formed.
std::vector<std::string> Validate(const MipProblem& problem);

// Checks row and bound feasibility of `x` within `tol`, and integrality of
// integer variables within `int_tol`.
bool IsFeasible(const MipProblem& problem, const std::vector<double>& x,
                double tol = 1e-6, double int_tol = 1e-6);

}  // namespace dash

#endif  // DASH_MIP_PROBLEM_H_
