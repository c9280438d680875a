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

#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "dash/dash_policy.h"
#include "dash/generators.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace dash {
namespace {

MipProblem ThreeItemKnapsack() {
  MipProblem p;
  p.sense = ObjSense::kMaximize;
  p.AddVariable("a", 10.0, 0.0, 1.0, VarKind::kBinary);
  p.AddVariable("b", 6.0, 0.0, 1.0, VarKind::kBinary);
  p.AddVariable("c", 4.0, 0.0, 1.0, VarKind::kBinary);
  p.AddRow("cap", {{0, 5.0}, {1, 4.0}, {2, 3.0}}, RowSense::kLe, 10.0);
  return p;
}

TEST(SolveTest, ThreeItemKnapsackEveryHeuristic) {
  const MipProblem p = ThreeItemKnapsack();
  const std::optional<double> oracle = testing::BruteForceOptimum(p);
  ASSERT_TRUE(oracle.has_value());
  ASSERT_EQ(*oracle, 16.0);
  for (Heuristic h : kAllHeuristics) {
    StaticPolicy policy(h);
    const SolveResult r = Solve(p, policy);
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << HeuristicName(h);
    EXPECT_EQ(r.objective, 16.0) << HeuristicName(h);
    EXPECT_EQ(r.incumbent, (std::vector<double>{1.0, 1.0, 0.0}));
  }
}

TEST(SolveTest, IntegralRootNeedsOneNode) {
  MipProblem p;
  p.sense = ObjSense::kMaximize;
  p.AddVariable("x", 1.0, 0.0, 4.0, VarKind::kInteger);
  p.AddVariable("y", 1.0, 0.0, 4.0, VarKind::kInteger);
  p.AddRow("r", {{0, 1.0}, {1, 1.0}}, RowSense::kLe, 5.0);
  StaticPolicy policy(Heuristic::kMostFractional);
  const SolveResult r = Solve(p, policy);
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, 5.0);
  EXPECT_EQ(r.nodes_explored, 1);
  EXPECT_TRUE(r.switch_log.empty());
}

TEST(SolveTest, FractionalWindowIsInfeasible) {
  MipProblem p;
  p.AddVariable("x", 1.0, 0.0, 1.0, VarKind::kInteger);
  p.AddRow("lo", {{0, 1.0}}, RowSense::kGe, 0.4);
  p.AddRow("hi", {{0, 1.0}}, RowSense::kLe, 0.6);
  StaticPolicy policy(Heuristic::kLeastFractional);
  const SolveResult r = Solve(p, policy);
  EXPECT_EQ(r.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(r.has_incumbent);
}

TEST(SolveTest, NodeLimitKeepsIncumbent) {
  const MipProblem p = GenerateKnapsack(40, 3);
  StaticPolicy policy(Heuristic::kMostFractional);
  SolveOptions options;
  options.limits.node_limit = 20;
  const SolveResult r = Solve(p, policy, options);
  EXPECT_EQ(r.status, SolveStatus::kNodeLimit);
  EXPECT_EQ(r.nodes_explored, 20);
}

TEST(SolveTest, MinimizeObjectiveReportedInOwnSense) {
  MipProblem p;
  p.AddVariable("x", 3.0, 0.0, 5.0, VarKind::kInteger);
  p.AddRow("r", {{0, 2.0}}, RowSense::kGe, 3.0);
  StaticPolicy policy(Heuristic::kPseudocostProduct);
  const SolveResult r = Solve(p, policy);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, 6.0);
}

TEST(BranchTest, DownAndUpChildren) {
  MipProblem p;
  p.AddVariable("x", 0.0, 0.0, 9.0, VarKind::kInteger);
  Node parent;
  parent.id = 4;
  parent.depth = 2;
  const std::vector<double> lo = {0.0}, hi = {9.0};
  const BranchChildren c =
      Branch(parent, p, 0, 2.3, Direction::kDown, Heuristic::kLeastFractional, lo, hi);
  EXPECT_EQ(c.first, Direction::kDown);
  ASSERT_EQ(c.down.bound_overrides.size(), 1u);
  EXPECT_EQ(c.down.bound_overrides[0], (BoundChange{0, 0.0, 2.0}));
  EXPECT_EQ(c.up.bound_overrides[0], (BoundChange{0, 3.0, 9.0}));
  for (const Node* child : {&c.down, &c.up}) {
    EXPECT_EQ(child->depth, 3);
    EXPECT_EQ(child->parent_id, 4);
    EXPECT_EQ(child->parent_heuristic, Heuristic::kLeastFractional);
  }
}

TEST(BranchTest, BinaryHalfFixesBothWays) {
  MipProblem p;
  p.AddVariable("b", 0.0, 0.0, 1.0, VarKind::kBinary);
  const std::vector<double> lo = {0.0}, hi = {1.0};
  const BranchChildren c =
      Branch(Node{}, p, 0, 0.5, Direction::kUp, Heuristic::kMostFractional, lo, hi);
  EXPECT_EQ(c.down.bound_overrides[0], (BoundChange{0, 0.0, 0.0}));
  EXPECT_EQ(c.up.bound_overrides[0], (BoundChange{0, 1.0, 1.0}));
}

TEST(BranchTest, IntegralValueIsAContractViolation) {
  MipProblem p;
  p.AddVariable("x", 0.0, 0.0, 9.0, VarKind::kInteger);
  const std::vector<double> lo = {0.0}, hi = {9.0};
  EXPECT_THROW(Branch(Node{}, p, 0, 3.0, Direction::kDown, Heuristic::kMostFractional,
                      lo, hi),
               ContractViolation);
}

TEST(BranchTest, OverridesOnlyTighten) {
  MipProblem p;
  p.AddVariable("x", 0.0, 0.0, 9.0, VarKind::kInteger);
  Node parent;
  parent.bound_overrides = {{0, 2.0, 6.0}};
  const std::vector<double> lo = {2.0}, hi = {6.0};
  const BranchChildren c =
      Branch(parent, p, 0, 4.5, Direction::kDown, Heuristic::kMostFractional, lo, hi);
  ASSERT_EQ(c.down.bound_overrides.size(), 1u);
  EXPECT_EQ(c.down.bound_overrides[0], (BoundChange{0, 2.0, 4.0}));
  EXPECT_EQ(c.up.bound_overrides[0], (BoundChange{0, 5.0, 6.0}));
}

// Every heuristic and the DASH policy return the enumeration optimum.
TEST(SolvePropertyTest, MatchesBruteForceOnRandomIntegerPrograms) {
  auto model = std::make_shared<const DashModel>(testing::ToyModel());
  int feasible = 0;
  for (uint64_t seed = 0; seed < 80; ++seed) {
    const MipProblem p = testing::RandomIntegerMip(seed);
    const std::optional<double> oracle = testing::BruteForceOptimum(p);
    if (oracle) ++feasible;
    std::vector<std::unique_ptr<BranchingPolicy>> policies;
    for (Heuristic h : kAllHeuristics) policies.push_back(std::make_unique<StaticPolicy>(h));
    policies.push_back(std::make_unique<DashPolicy>(model));
    for (auto& policy : policies) {
      const SolveResult r = Solve(p, *policy);
      if (!oracle) {
        EXPECT_EQ(r.status, SolveStatus::kInfeasible) << "seed " << seed;
        continue;
      }
      ASSERT_EQ(r.status, SolveStatus::kOptimal) << "seed " << seed;
      EXPECT_EQ(r.objective, *oracle) << "seed " << seed;
      EXPECT_TRUE(testing::PointFeasible(p, r.incumbent, 1e-9));
    }
  }
  EXPECT_GE(feasible, 50);
}

// Depth matches the path length, overrides tighten, and no node is expanded
// after its parent bound stopped beating the incumbent.
TEST(SolvePropertyTest, TreeInvariantsFromObserver) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const MipProblem p = GenerateKnapsack(14, seed);
    for (Heuristic h : kAllHeuristics) {
      std::map<int64_t, int> depth_of;
      int64_t expansions = 0;
      SolveOptions options;
      options.observer = [&](const NodeEvent& e) {
        if (e.node.parent_id >= 0) {
          ASSERT_TRUE(depth_of.contains(e.node.parent_id));
          EXPECT_EQ(e.node.depth, depth_of[e.node.parent_id] + 1);
        } else {
          EXPECT_EQ(e.node.depth, 0);
        }
        depth_of[e.node.id] = e.node.depth;
        for (const BoundChange& b : e.node.bound_overrides) {
          EXPECT_GE(b.lower, p.lower[b.var]);
          EXPECT_LE(b.upper, p.upper[b.var]);
        }
        if (e.action == NodeAction::kBranched) {
          ++expansions;
          if (std::isfinite(e.incumbent) && e.node.parent_id >= 0) {
            EXPECT_GT(e.node.lp_bound, e.incumbent);
          }
          EXPECT_GT(e.lp_objective, e.incumbent);
        }
      };
      StaticPolicy policy(h);
      const SolveResult r = Solve(p, policy, options);
      EXPECT_EQ(r.status, SolveStatus::kOptimal);
      EXPECT_LE(expansions, r.nodes_explored);
    }
  }
}

TEST(SolveTest, SolveIsDeterministic) {
  const MipProblem p = GenerateSetCover(12, 20, 0.25, 9);
  for (Heuristic h : kAllHeuristics) {
    StaticPolicy a(h), b(h);
    const SolveResult ra = Solve(p, a);
    const SolveResult rb = Solve(p, b);
    EXPECT_EQ(ra.nodes_explored, rb.nodes_explored);
    EXPECT_EQ(ra.incumbent, rb.incumbent);
  }
}

TEST(TraceTest, JsonlHasOneRecordPerEvent) {
  const MipProblem p = GenerateKnapsack(10, 2);
  std::ostringstream out;
  SolveOptions options;
  options.observer = MakeJsonlTraceObserver(out);
  StaticPolicy policy(Heuristic::kMostFractional);
  const SolveResult r = Solve(p, policy, options);
  std::istringstream in(out.str());
  std::string line;
  int64_t solved = 0, records = 0;
  std::set<std::string> actions;
  while (std::getline(in, line)) {
    const nlohmann::json j = nlohmann::json::parse(line);
    ++records;
    ASSERT_TRUE(j.contains("node"));
    ASSERT_TRUE(j.contains("depth"));
    ASSERT_TRUE(j.contains("action"));
    const std::string action = j["action"];
    actions.insert(action);
    if (action != "pruned_parent_bound") ++solved;
    if (action == "branched") {
      EXPECT_EQ(j["heuristic"], HeuristicId(Heuristic::kMostFractional));
      EXPECT_TRUE(j.contains("lp_objective"));
    }
  }
  EXPECT_GT(records, 0);
  EXPECT_EQ(solved, r.nodes_explored);
  EXPECT_TRUE(actions.contains("branched"));
}

}  // namespace
}  // namespace dash
