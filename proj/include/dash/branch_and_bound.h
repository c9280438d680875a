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

// Depth-first branch and bound with a pluggable branching policy.
//
// The search works in maximize form: objectives of minimize problems are
// negated internally, and every reported objective is converted back to the
// problem's own sense. At every node the LP relaxation is solved; the node
// is pruned when infeasible or when its bound cannot beat the incumbent.
// Integral relaxations update the incumbent. Otherwise the policy names a
// heuristic, the heuristic names a variable and the child to visit first,
// and both children are pushed with the preferred one on top.

#ifndef DASH_BRANCH_AND_BOUND_H_
#define DASH_BRANCH_AND_BOUND_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dash/heuristics.h"
#include "dash/lp_solver.h"
#include "dash/mip_problem.h"

namespace dash {

inline constexpr double kIntegralityTolerance = 1e-6;

bool IsIntegral(double value, double tol = kIntegralityTolerance);

struct Node {
  int64_t id = 0;
  int64_t parent_id = -1;
  int depth = 0;
  // Tightenings relative to the root, at most one entry per variable.
  BoundOverrides bound_overrides;
  Heuristic parent_heuristic = Heuristic::kMostFractional;
  // Relaxation value of the parent in maximize form; +inf at the root.
  double lp_bound = kInfinity;

  // The branching that created this node; branch_var < 0 at the root.
  int branch_var = -1;
  Direction branch_direction = Direction::kDown;
  double branch_frac = 0.0;
};

struct BranchChildren {
  Node down;
  Node up;
  Direction first = Direction::kDown;
};

// Splits `node` on `var` at the fractional relaxation value `lp_value`:
// the down child gets upper(var) = floor(lp_value), the up child
// lower(var) = ceil(lp_value). `lower`/`upper` are the node's current bounds.
// Children inherit `heuristic` and depth + 1; ids are left for the caller.
BranchChildren Branch(const Node& node, const MipProblem& problem, int var,
                      double lp_value, Direction first, Heuristic heuristic,
                      std::span<const double> lower,
                      std::span<const double> upper);

// Everything a policy may look at when a node is about to branch.
struct NodeContext {
  const MipProblem& problem;
  const Node& node;
  std::span<const double> lower;
  std::span<const double> upper;
  const LpSolution& lp;
};

struct PolicyDecision {
  Heuristic heuristic = Heuristic::kMostFractional;
  // Nearest cluster when features were computed, -1 otherwise.
  int cluster = -1;
  bool computed_features = false;
};

class BranchingPolicy {
 public:
  virtual ~BranchingPolicy() = default;

  // Called once before the root is solved.
  virtual void BeginSolve(const MipProblem& problem) { (void)problem; }
  // Heuristic the root node "inherits".
  virtual Heuristic DefaultHeuristic() const = 0;
  // Called only at nodes with fractional candidates.
  virtual PolicyDecision Decide(const NodeContext& context) = 0;
};

// One heuristic for the whole search.
class StaticPolicy : public BranchingPolicy {
 public:
  explicit StaticPolicy(Heuristic heuristic) : heuristic_(heuristic) {}
  Heuristic DefaultHeuristic() const override { return heuristic_; }
  PolicyDecision Decide(const NodeContext&) override {
    return {heuristic_, -1, false};
  }

 private:
  Heuristic heuristic_;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kNodeLimit, kTimeLimit };

std::string ToString(SolveStatus status);

struct SwitchLogEntry {
  int64_t node_id = 0;
  int depth = 0;
  Heuristic parent_heuristic = Heuristic::kMostFractional;
  Heuristic heuristic = Heuristic::kMostFractional;
  int cluster = -1;
  bool computed_features = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> incumbent;
  // Problem's own sense; meaningful iff has_incumbent.
  double objective = 0.0;
  int64_t nodes_explored = 0;
  // Nodes dropped because their LP hit the simplex iteration cap.
  int64_t abandoned_nodes = 0;
  double seconds = 0.0;
  std::vector<SwitchLogEntry> switch_log;
};

enum class NodeAction {
  kPrunedByParentBound,  // skipped without solving its LP
  kInfeasible,
  kPrunedByBound,
  kIntegral,
  kBranched,
  kAbandoned,
  kUnbounded,
};

std::string ToString(NodeAction action);

struct NodeEvent {
  const Node& node;
  NodeAction action;
  // Maximize-form relaxation value; NaN when no LP was solved.
  double lp_objective;
  std::span<const double> lower;
  std::span<const double> upper;
  // Set for kBranched.
  Heuristic heuristic = Heuristic::kMostFractional;
  int branch_var = -1;
  double incumbent = -kInfinity;  // maximize form
};

using NodeObserver = std::function<void(const NodeEvent&)>;

struct SolveLimits {
  int64_t node_limit = 0;          // 0 = unlimited
  double time_limit_seconds = 0.0; // 0 = unlimited
};

struct SolveOptions {
  SolveLimits limits;
  NodeObserver observer;
  LpOptions lp;
  // Wall clock is polled every this many nodes.
  int time_check_interval = 256;
};

SolveResult Solve(const MipProblem& problem, BranchingPolicy& policy,
                  const SolveOptions& options = {});

// Observer writing one JSON object per node:
// {"node","parent","depth","lp_objective","action","heuristic","var"}.
NodeObserver MakeJsonlTraceObserver(std::ostream& out);

}  // namespace dash

#endif  // DASH_BRANCH_AND_BOUND_H_
