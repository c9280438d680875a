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

#include "dash/lp_solver.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace dash {

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

void ApplyOverrides(const MipProblem& problem, const BoundOverrides& overrides,
                    std::vector<double>& lower, std::vector<double>& upper) {
  lower = problem.lower;
  upper = problem.upper;
  for (const BoundChange& change : overrides) {
    lower[change.var] = change.lower;
    upper[change.var] = change.upper;
  }
}

namespace {

enum class VarStatus : unsigned char { kBasic, kAtLower, kAtUpper, kFree };

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

}  // namespace

// Working state of one Solve() call.
struct LpSolver::Impl {
  Impl(const LpSolver& solver, std::span<const double> lower,
       std::span<const double> upper)
      : s(solver),
        opt(solver.options_),
        m(solver.problem_.num_rows()),
        n(solver.problem_.num_vars()) {
    const int total = n + 2 * m;
    lo.assign(total, 0.0);
    hi.assign(total, 0.0);
    x.assign(total, 0.0);
    status.assign(total, VarStatus::kAtLower);
    art_row.assign(total, -1);
    art_sign.assign(total, 1.0);
    std::copy(lower.begin(), lower.end(), lo.begin());
    std::copy(upper.begin(), upper.end(), hi.begin());
    for (int i = 0; i < m; ++i) {
      lo[n + i] = s.slack_lower_[i];
      hi[n + i] = s.slack_upper_[i];
    }
    num_columns = n + m;
    max_iterations = opt.max_iterations > 0 ? opt.max_iterations
                                            : 50 * (m + n) + 1000;
  }

  const LpSolver& s;
  const LpOptions& opt;
  const int m;
  const int n;
  int num_columns = 0;  // structurals + slacks + artificials in use
  int max_iterations = 0;
  int iterations = 0;

  std::vector<double> lo, hi, x, cost;
  std::vector<VarStatus> status;
  std::vector<int> art_row;
  std::vector<double> art_sign;
  std::vector<int> basis;
  Eigen::MatrixXd binv;

  // Dense column j of [A I art].
  void Column(int j, Eigen::VectorXd& col) const {
    col.setZero(m);
    if (j < n) {
      for (const auto& [row, coef] : s.columns_[j]) col[row] = coef;
    } else if (j < n + m) {
      col[j - n] = 1.0;
    } else {
      col[art_row[j]] = art_sign[j];
    }
  }

  double DotColumn(int j, const Eigen::VectorXd& y) const {
    if (j < n) {
      double d = 0.0;
      for (const auto& [row, coef] : s.columns_[j]) d += coef * y[row];
      return d;
    }
    if (j < n + m) return y[j - n];
    return art_sign[j] * y[art_row[j]];
  }

  // Recomputes the basis inverse and basic values from scratch.
  void Refactor() {
    Eigen::MatrixXd b(m, m);
    Eigen::VectorXd col;
    for (int i = 0; i < m; ++i) {
      Column(basis[i], col);
      b.col(i) = col;
    }
    binv = b.partialPivLu().inverse();
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = s.problem_.rows[i].rhs;
    for (int j = 0; j < num_columns; ++j) {
      if (status[j] == VarStatus::kBasic || x[j] == 0.0) continue;
      Column(j, col);
      rhs -= x[j] * col;
    }
    const Eigen::VectorXd xb = binv * rhs;
    for (int i = 0; i < m; ++i) x[basis[i]] = xb[i];
  }

  // Sets up slack/artificial basis. Returns the number of artificials.
  int Initialize() {
    for (int j = 0; j < n; ++j) {
      if (std::isfinite(lo[j])) {
        x[j] = lo[j];
        status[j] = VarStatus::kAtLower;
      } else if (std::isfinite(hi[j])) {
        x[j] = hi[j];
        status[j] = VarStatus::kAtUpper;
      } else {
        x[j] = 0.0;
        status[j] = VarStatus::kFree;
      }
    }
    std::vector<double> activity(m, 0.0);
    for (int j = 0; j < n; ++j) {
      if (x[j] == 0.0) continue;
      for (const auto& [row, coef] : s.columns_[j]) activity[row] += coef * x[j];
    }
    basis.assign(m, -1);
    binv = Eigen::MatrixXd::Identity(m, m);
    int artificials = 0;
    for (int i = 0; i < m; ++i) {
      const int slack = n + i;
      const double value = s.problem_.rows[i].rhs - activity[i];
      if (value >= lo[slack] - opt.feasibility_tol &&
          value <= hi[slack] + opt.feasibility_tol) {
        x[slack] = value;
        status[slack] = VarStatus::kBasic;
        basis[i] = slack;
        continue;
      }
      const double at = value < lo[slack] ? lo[slack] : hi[slack];
      x[slack] = at;
      status[slack] = at == lo[slack] ? VarStatus::kAtLower : VarStatus::kAtUpper;
      const int art = n + m + artificials++;
      const double residual = value - at;
      art_row[art] = i;
      art_sign[art] = residual > 0.0 ? 1.0 : -1.0;
      lo[art] = 0.0;
      hi[art] = kInfinity;
      x[art] = std::abs(residual);
      status[art] = VarStatus::kBasic;
      basis[i] = art;
      binv(i, i) = art_sign[art];
    }
    num_columns = n + m + artificials;
    return artificials;
  }

  PhaseResult Run() {
    Eigen::VectorXd cb(m), y(m), alpha(m), col;
    int degenerate_streak = 0;
    int since_refactor = 0;
    bool bland = false;
    while (true) {
      if (iterations >= max_iterations) return PhaseResult::kIterationLimit;
      for (int i = 0; i < m; ++i) cb[i] = cost[basis[i]];
      y.noalias() = binv.transpose() * cb;

      // Pricing.
      int entering = -1;
      double best = 0.0;
      double direction = 0.0;
      for (int j = 0; j < num_columns; ++j) {
        const VarStatus st = status[j];
        if (st == VarStatus::kBasic || lo[j] == hi[j]) continue;
        const double d = cost[j] - DotColumn(j, y);
        double dir = 0.0;
        if (st == VarStatus::kAtLower && d < -opt.optimality_tol) {
          dir = 1.0;
        } else if (st == VarStatus::kAtUpper && d > opt.optimality_tol) {
          dir = -1.0;
        } else if (st == VarStatus::kFree && std::abs(d) > opt.optimality_tol) {
          dir = d < 0.0 ? 1.0 : -1.0;
        }
        if (dir == 0.0) continue;
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          direction = dir;
        }
      }
      if (entering < 0) return PhaseResult::kOptimal;

      Column(entering, col);
      alpha.noalias() = binv * col;

      // Ratio test.
      double step = kInfinity;
      int leave = -1;
      double leave_alpha = 0.0;
      for (int i = 0; i < m; ++i) {
        const double a = alpha[i];
        if (std::abs(a) <= opt.pivot_tol) continue;
        const double delta = -direction * a;
        const int var = basis[i];
        double t;
        if (delta < 0.0) {
          if (!std::isfinite(lo[var])) continue;
          t = (x[var] - lo[var]) / -delta;
        } else {
          if (!std::isfinite(hi[var])) continue;
          t = (hi[var] - x[var]) / delta;
        }
        t = std::max(t, 0.0);
        bool take = false;
        if (leave < 0 || t < step - 1e-12) {
          take = true;
        } else if (t <= step + 1e-12) {
          take = bland ? var < basis[leave]
                       : std::abs(a) > std::abs(leave_alpha);
        }
        if (take) {
          step = t;
          leave = i;
          leave_alpha = a;
        }
      }
      const double flip = hi[entering] - lo[entering];
      const bool bound_flip = std::isfinite(flip) && (leave < 0 || flip <= step);
      if (bound_flip) step = flip;
      if (!std::isfinite(step)) return PhaseResult::kUnbounded;

      ++iterations;
      if (step <= 1e-12) {
        if (++degenerate_streak >= opt.degenerate_streak_for_bland) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      x[entering] += direction * step;
      for (int i = 0; i < m; ++i) x[basis[i]] -= direction * step * alpha[i];

      if (bound_flip) {
        if (direction > 0.0) {
          status[entering] = VarStatus::kAtUpper;
          x[entering] = hi[entering];
        } else {
          status[entering] = VarStatus::kAtLower;
          x[entering] = lo[entering];
        }
        continue;
      }

      const int leaving = basis[leave];
      const double delta = -direction * leave_alpha;
      if (delta < 0.0) {
        x[leaving] = lo[leaving];
        status[leaving] = VarStatus::kAtLower;
      } else {
        x[leaving] = hi[leaving];
        status[leaving] = lo[leaving] == hi[leaving] ? VarStatus::kAtLower
                                                     : VarStatus::kAtUpper;
      }
      status[entering] = VarStatus::kBasic;
      basis[leave] = entering;

      // Product-form update of the inverse.
      binv.row(leave) /= leave_alpha;
      for (int i = 0; i < m; ++i) {
        if (i == leave || alpha[i] == 0.0) continue;
        binv.row(i) -= alpha[i] * binv.row(leave);
      }
      if (++since_refactor >= opt.refactor_interval) {
        Refactor();
        since_refactor = 0;
      }
    }
  }

  LpSolution Solve() {
    LpSolution result;
    for (int j = 0; j < n; ++j) {
      if (lo[j] > hi[j] + opt.feasibility_tol) {
        result.status = LpStatus::kInfeasible;
        return result;
      }
      if (lo[j] > hi[j]) hi[j] = lo[j];
    }
    const int artificials = Initialize();
    if (artificials > 0) {
      cost.assign(num_columns, 0.0);
      for (int j = n + m; j < num_columns; ++j) cost[j] = 1.0;
      const PhaseResult phase1 = Run();
      if (phase1 == PhaseResult::kIterationLimit) {
        result.status = LpStatus::kIterationLimit;
        result.iterations = iterations;
        return result;
      }
      Refactor();
      double infeasibility = 0.0;
      double scale = 1.0;
      for (int i = 0; i < m; ++i) {
        scale = std::max(scale, std::abs(s.problem_.rows[i].rhs));
      }
      for (int j = n + m; j < num_columns; ++j) infeasibility += std::abs(x[j]);
      if (infeasibility > opt.feasibility_tol * scale) {
        result.status = LpStatus::kInfeasible;
        result.iterations = iterations;
        return result;
      }
      for (int j = n + m; j < num_columns; ++j) {
        hi[j] = 0.0;
        if (status[j] != VarStatus::kBasic) {
          x[j] = 0.0;
          status[j] = VarStatus::kAtLower;
        }
      }
    }
    cost.assign(num_columns, 0.0);
    const double sign = s.problem_.max_sign();
    for (int j = 0; j < n; ++j) cost[j] = -sign * s.problem_.objective[j];
    const PhaseResult phase2 = Run();
    result.iterations = iterations;
    if (phase2 == PhaseResult::kIterationLimit) {
      result.status = LpStatus::kIterationLimit;
      return result;
    }
    if (phase2 == PhaseResult::kUnbounded) {
      result.status = LpStatus::kUnbounded;
      return result;
    }
    Refactor();
    result.status = LpStatus::kOptimal;
    result.values.assign(x.begin(), x.begin() + n);
    for (int j = 0; j < n; ++j) {
      // Snap values that drifted past a bound by round-off.
      result.values[j] = std::clamp(result.values[j], lo[j], hi[j]);
    }
    result.objective = s.problem_.Evaluate(result.values);
    return result;
  }
};

LpSolver::LpSolver(const MipProblem& problem, LpOptions options)
    : problem_(problem), options_(options) {
  columns_.resize(problem.num_vars());
  slack_lower_.resize(problem.num_rows());
  slack_upper_.resize(problem.num_rows());
  for (int i = 0; i < problem.num_rows(); ++i) {
    const Row& row = problem.rows[i];
    for (const auto& [var, coef] : row.coeffs) columns_[var].emplace_back(i, coef);
    switch (row.sense) {
      case RowSense::kLe:
        slack_lower_[i] = 0.0;
        slack_upper_[i] = kInfinity;
        break;
      case RowSense::kGe:
        slack_lower_[i] = -kInfinity;
        slack_upper_[i] = 0.0;
        break;
      case RowSense::kEq:
        slack_lower_[i] = 0.0;
        slack_upper_[i] = 0.0;
        break;
    }
  }
}

LpSolution LpSolver::Solve(std::span<const double> lower,
                           std::span<const double> upper) {
  DASH_CHECK(static_cast<int>(lower.size()) == problem_.num_vars() &&
                 static_cast<int>(upper.size()) == problem_.num_vars(),
             "bound vectors must have one entry per variable");
  Impl impl(*this, lower, upper);
  return impl.Solve();
}

LpSolution LpSolver::Solve(const BoundOverrides& overrides) {
  std::vector<double> lower, upper;
  ApplyOverrides(problem_, overrides, lower, upper);
  return Solve(lower, upper);
}

LpSolution SolveLp(const MipProblem& problem, const BoundOverrides& overrides,
                   LpOptions options) {
  LpSolver solver(problem, options);
  return solver.Solve(overrides);
}

}  // namespace dash
