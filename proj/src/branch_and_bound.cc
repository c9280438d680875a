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

#include "dash/branch_and_bound.h"

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>

#include "json.hpp"

namespace dash {

bool IsIntegral(double value, double tol) {
  return std::abs(value - std::round(value)) <= tol;
}

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kNodeLimit: return "node_limit";
    case SolveStatus::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

std::string ToString(NodeAction action) {
  switch (action) {
    case NodeAction::kPrunedByParentBound: return "pruned_parent_bound";
    case NodeAction::kInfeasible: return "infeasible";
    case NodeAction::kPrunedByBound: return "pruned_bound";
    case NodeAction::kIntegral: return "integral";
    case NodeAction::kBranched: return "branched";
    case NodeAction::kAbandoned: return "abandoned";
    case NodeAction::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

void SetOverride(BoundOverrides& overrides, int var, double lower, double upper) {
  for (BoundChange& change : overrides) {
    if (change.var == var) {
      change.lower = lower;
      change.upper = upper;
      return;
    }
  }
  overrides.push_back({var, lower, upper});
}

// True when a node with maximize-form bound `bound` cannot improve on
// `incumbent`.
bool CannotImprove(double bound, double incumbent) {
  if (!std::isfinite(incumbent)) return false;
  return bound <= incumbent + 1e-6 * std::max(1.0, std::abs(incumbent));
}

}  // namespace

BranchChildren Branch(const Node& node, const MipProblem& problem, int var,
                      double lp_value, Direction first, Heuristic heuristic,
                      std::span<const double> lower,
                      std::span<const double> upper) {
  DASH_CHECK(var >= 0 && var < problem.num_vars(), "branch variable out of range");
  DASH_CHECK(problem.is_integral(var), "cannot branch on a continuous variable");
  DASH_CHECK(!IsIntegral(lp_value),
             "cannot branch on integral value " + std::to_string(lp_value));
  const double down_upper = std::floor(lp_value);
  const double up_lower = std::ceil(lp_value);
  const double frac = lp_value - down_upper;

  BranchChildren children;
  children.first = first;
  for (Node* child : {&children.down, &children.up}) {
    child->parent_id = node.id;
    child->depth = node.depth + 1;
    child->bound_overrides = node.bound_overrides;
    child->parent_heuristic = heuristic;
    child->branch_var = var;
    child->branch_frac = frac;
  }
  SetOverride(children.down.bound_overrides, var, lower[var], down_upper);
  children.down.branch_direction = Direction::kDown;
  SetOverride(children.up.bound_overrides, var, up_lower, upper[var]);
  children.up.branch_direction = Direction::kUp;
  return children;
}

SolveResult Solve(const MipProblem& problem, BranchingPolicy& policy,
                  const SolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const int n = problem.num_vars();
  const double sign = problem.max_sign();

  SolveResult result;
  LpSolver lp_solver(problem, options.lp);
  PseudocostTable pseudocosts(n);
  policy.BeginSolve(problem);

  double incumbent = -kInfinity;  // maximize form
  std::vector<double> lower(n), upper(n);
  std::vector<Candidate> candidates;
  std::vector<Node> stack;
  int64_t next_id = 1;

  Node root;
  root.id = 0;
  root.parent_heuristic = policy.DefaultHeuristic();
  stack.push_back(std::move(root));

  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  auto notify = [&](const Node& node, NodeAction action, double lp_obj,
                    Heuristic h = Heuristic::kMostFractional, int var = -1) {
    if (!options.observer) return;
    options.observer(NodeEvent{node, action, lp_obj, lower, upper, h, var,
                               incumbent});
  };

  bool stopped = false;
  bool unbounded = false;
  while (!stack.empty()) {
    if (options.limits.node_limit > 0 &&
        result.nodes_explored >= options.limits.node_limit) {
      result.status = SolveStatus::kNodeLimit;
      stopped = true;
      break;
    }
    if (options.limits.time_limit_seconds > 0.0 &&
        result.nodes_explored % options.time_check_interval == 0 &&
        result.nodes_explored > 0 &&
        elapsed() >= options.limits.time_limit_seconds) {
      result.status = SolveStatus::kTimeLimit;
      stopped = true;
      break;
    }

    Node node = std::move(stack.back());
    stack.pop_back();
    ApplyOverrides(problem, node.bound_overrides, lower, upper);

    if (CannotImprove(node.lp_bound, incumbent)) {
      notify(node, NodeAction::kPrunedByParentBound,
             std::numeric_limits<double>::quiet_NaN());
      continue;
    }

    const LpSolution lp = lp_solver.Solve(lower, upper);
    ++result.nodes_explored;

    if (lp.status == LpStatus::kInfeasible) {
      notify(node, NodeAction::kInfeasible, std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    if (lp.status == LpStatus::kIterationLimit) {
      ++result.abandoned_nodes;
      std::cerr << "warning: LP iteration limit at node " << node.id
                << "; node abandoned\n";
      notify(node, NodeAction::kAbandoned, std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    if (lp.status == LpStatus::kUnbounded) {
      unbounded = true;
      notify(node, NodeAction::kUnbounded, kInfinity);
      break;
    }

    const double bound = sign * lp.objective;
    if (node.branch_var >= 0) {
      pseudocosts.Update(node.branch_var, node.branch_direction, node.lp_bound,
                         bound, node.branch_frac);
    }
    if (CannotImprove(bound, incumbent)) {
      notify(node, NodeAction::kPrunedByBound, bound);
      continue;
    }

    candidates.clear();
    for (int j = 0; j < n; ++j) {
      if (problem.is_integral(j) && !IsIntegral(lp.values[j])) {
        candidates.push_back({j, lp.values[j], sign * problem.objective[j]});
      }
    }

    if (candidates.empty()) {
      std::vector<double> x = lp.values;
      for (int j = 0; j < n; ++j) {
        if (problem.is_integral(j)) x[j] = std::round(x[j]);
      }
      const double value = sign * problem.Evaluate(x);
      if (value > incumbent) {
        incumbent = value;
        result.incumbent = std::move(x);
        result.has_incumbent = true;
      }
      notify(node, NodeAction::kIntegral, bound);
      continue;
    }

    const NodeContext context{problem, node, lower, upper, lp};
    const PolicyDecision decision = policy.Decide(context);
    result.switch_log.push_back({node.id, node.depth, node.parent_heuristic,
                                 decision.heuristic, decision.cluster,
                                 decision.computed_features});
    const BranchChoice choice =
        SelectBranch(decision.heuristic, candidates, pseudocosts);
    notify(node, NodeAction::kBranched, bound, decision.heuristic, choice.var);

    BranchChildren children =
        Branch(node, problem, choice.var, lp.values[choice.var], choice.first,
               decision.heuristic, lower, upper);
    children.down.lp_bound = bound;
    children.up.lp_bound = bound;
    Node& explore_first =
        choice.first == Direction::kDown ? children.down : children.up;
    Node& explore_second =
        choice.first == Direction::kDown ? children.up : children.down;
    explore_second.id = next_id++;
    explore_first.id = next_id++;
    stack.push_back(std::move(explore_second));
    stack.push_back(std::move(explore_first));
  }

  if (unbounded) {
    result.status = SolveStatus::kUnbounded;
  } else if (!stopped) {
    result.status = result.has_incumbent ? SolveStatus::kOptimal
                                         : SolveStatus::kInfeasible;
  }
  if (result.has_incumbent) result.objective = problem.Evaluate(result.incumbent);
  result.seconds = elapsed();
  return result;
}

NodeObserver MakeJsonlTraceObserver(std::ostream& out) {
  return [&out](const NodeEvent& event) {
    nlohmann::json record = {
        {"node", event.node.id},
        {"parent", event.node.parent_id},
        {"depth", event.node.depth},
        {"action", ToString(event.action)},
    };
    if (std::isfinite(event.lp_objective)) {
      record["lp_objective"] = event.lp_objective;
    } else {
      record["lp_objective"] = nullptr;
    }
    if (event.action == NodeAction::kBranched) {
      record["heuristic"] = HeuristicId(event.heuristic);
      record["var"] = event.branch_var;
    }
    out << record.dump() << '\n';
  };
}

}  // namespace dash
