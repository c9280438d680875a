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

// Bounded-variable primal revised simplex for LP relaxations.
//
// Rows become equalities with one slack each (LE: s >= 0, GE: s <= 0,
// EQ: s = 0). Rows whose slack cannot absorb the initial residual get an
// artificial column and are repaired in a phase 1 that minimizes the sum of
// artificials. The basis inverse is kept explicitly and updated with
// product-form pivots, with a fresh LU factorization every few dozen pivots.
// Dantzig pricing is used until a streak of degenerate pivots, then Bland's
// rule takes over until the objective moves again.

#ifndef DASH_LP_SOLVER_H_
#define DASH_LP_SOLVER_H_

#include <span>
#include <string>
#include <vector>

#include "dash/mip_problem.h"

namespace dash {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  // Structural values; filled iff status == kOptimal.
  std::vector<double> values;
  // Objective in the problem's own sense, including the offset.
  double objective = 0.0;
  int iterations = 0;
};

// A bound tightening on one variable. When several entries name the same
// variable, later entries win.
struct BoundChange {
  int var = 0;
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const BoundChange&, const BoundChange&) = default;
};
using BoundOverrides = std::vector<BoundChange>;

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  double pivot_tol = 1e-9;
  // 0 selects 50 * (rows + columns) + 1000.
  int max_iterations = 0;
  int degenerate_streak_for_bland = 50;
  int refactor_interval = 64;
};

// Reusable solver context for one problem. Not thread-safe; use one instance
// per search thread.
class LpSolver {
 public:
  explicit LpSolver(const MipProblem& problem, LpOptions options = {});

  LpSolution Solve(std::span<const double> lower,
                   std::span<const double> upper);
  LpSolution Solve(const BoundOverrides& overrides);

  const MipProblem& problem() const { return problem_; }

 private:
  struct Impl;

  const MipProblem& problem_;
  LpOptions options_;
  // Column-major copy of the constraint matrix.
  std::vector<std::vector<std::pair<int, double>>> columns_;
  std::vector<double> slack_lower_;
  std::vector<double> slack_upper_;
};

LpSolution SolveLp(const MipProblem& problem,
                   const BoundOverrides& overrides = {},
                   LpOptions options = {});

// Root bounds with `overrides` applied.
void ApplyOverrides(const MipProblem& problem, const BoundOverrides& overrides,
                    std::vector<double>& lower, std::vector<double>& upper);

}  // namespace dash

#endif  // DASH_LP_SOLVER_H_
