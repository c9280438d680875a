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

#include "dash/dash_policy.h"

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "dash/generators.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dash {
namespace {

using Trace = std::vector<std::tuple<int64_t, int, NodeAction, int, int>>;

Trace Record(const MipProblem& p, BranchingPolicy& policy, SolveResult* out = nullptr) {
  Trace trace;
  SolveOptions options;
  options.observer = [&](const NodeEvent& e) {
    trace.emplace_back(e.node.id, e.node.depth, e.action, e.branch_var,
                       e.action == NodeAction::kBranched ? HeuristicId(e.heuristic) : -1);
  };
  const SolveResult r = Solve(p, policy, options);
  if (out) *out = r;
  return trace;
}

DashModel FullModel() {
  DashModel m = testing::ToyModel();
  m.root_centers = {{1.0, 0.0}, {0.2, 0.0}};
  m.switch_flags = {true, false};
  m.root_heuristics = {Heuristic::kMostFracHighObj, Heuristic::kPseudocostProduct};
  m.default_heuristic = Heuristic::kLeastFracHighObj;
  m.max_depth = 7;
  m.interval = 2;
  return m;
}

TEST(ModelIoTest, JsonRoundTripIsLossless) {
  const DashModel m = FullModel();
  EXPECT_EQ(ModelFromJson(ModelToJson(m)), m);
  testing::TempDir dir;
  SaveModel(m, dir.file("m.json"));
  EXPECT_EQ(LoadModel(dir.file("m.json")), m);
}

TEST(ModelIoTest, WrongCenterDimensionIsNamed) {
  DashModel m;
  m.scaling.mean.assign(kNumFeatures, 0.0);
  m.scaling.stddev.assign(kNumFeatures, 1.0);
  m.centers = {Point(39, 0.0)};
  m.heuristics = {Heuristic::kMostFractional};
  nlohmann::json j = ModelToJson(FullModel());
  j["mask"] = std::vector<bool>(kNumFeatures, true);
  j["centers"] = m.centers;
  j["heuristics"] = {0};
  j["root_centers"] = nlohmann::json::array();
  j["switch_flags"] = nlohmann::json::array();
  j["root_heuristics"] = nlohmann::json::array();
  try {
    ModelFromJson(j);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("39"), std::string::npos) << e.what();
  }
}

TEST(ModelIoTest, VersionMismatchFails) {
  nlohmann::json j = ModelToJson(FullModel());
  j["version"] = kModelVersion + 1;
  EXPECT_THROW(ModelFromJson(j), ModelError);
}

TEST(ModelIoTest, HeuristicOutOfRangeFails) {
  nlohmann::json j = ModelToJson(FullModel());
  j["heuristics"] = {0, 6, 1};
  EXPECT_THROW(ModelFromJson(j), ModelError);
}

TEST(ModelIoTest, MissingSwitchFlagsMeansAllEnabled) {
  nlohmann::json j = ModelToJson(testing::ToyModel());
  j.erase("switch_flags");
  j.erase("root_centers");
  j.erase("root_heuristics");
  const DashModel m = ModelFromJson(j);
  EXPECT_TRUE(m.switch_flags.empty());
  DashPolicy policy(std::make_shared<const DashModel>(m));
  policy.BeginSolve(GenerateKnapsack(10, 1));
  EXPECT_TRUE(policy.switching_enabled());
}

TEST(GateTest, DecisionDepths) {
  EXPECT_TRUE(IsDecisionDepth(0, 10, 3));
  EXPECT_TRUE(IsDecisionDepth(9, 10, 3));
  EXPECT_FALSE(IsDecisionDepth(12, 10, 3));
  EXPECT_FALSE(IsDecisionDepth(4, 10, 3));
  EXPECT_FALSE(IsDecisionDepth(10, 10, 1));
}

TEST(ChooseHeuristicTest, NearestClusterAndInheritance) {
  const DashModel m = testing::ToyModel();
  MipProblem p;
  for (int j = 0; j < 5; ++j) p.AddVariable("x" + std::to_string(j), 1, 0, 1, VarKind::kBinary);
  LpSolution lp;
  std::vector<double> lower(5, 0.0), upper(5, 1.0);
  // One of five fixed: remaining 0.8, depth 3 is nearest (0.8, 3).
  lower[0] = upper[0] = 1.0;
  Node node;
  node.depth = 3;
  node.parent_heuristic = Heuristic::kMostFractional;
  const PolicyDecision d = ChooseHeuristic({p, node, lower, upper, lp}, m);
  EXPECT_TRUE(d.computed_features);
  EXPECT_EQ(d.cluster, 1);
  EXPECT_EQ(d.heuristic, m.heuristics[1]);

  node.depth = 4;
  const PolicyDecision inherit = ChooseHeuristic({p, node, lower, upper, lp}, m);
  EXPECT_FALSE(inherit.computed_features);
  EXPECT_EQ(inherit.cluster, -1);
  EXPECT_EQ(inherit.heuristic, Heuristic::kMostFractional);

  node.depth = 12;
  EXPECT_FALSE(ChooseHeuristic({p, node, lower, upper, lp}, m).computed_features);
}

// The switch log only computes features at gated depths; everything else
// inherits, and the heuristic used at each branching matches the log.
TEST(DashPolicyPropertyTest, SwitchLogRespectsGate) {
  auto model = std::make_shared<const DashModel>(testing::ToyModel());
  int64_t gated = 0;
  for (std::string_view family : {"knapsack", "setcover", "intknap", "lotsizing"}) {
    for (uint64_t seed = 0; seed < 4; ++seed) {
      const MipProblem p = *GenerateFamily(family, seed);
      DashPolicy policy(model);
      SolveResult r;
      SolveOptions options;
      options.limits.node_limit = 3000;
      std::map<int64_t, Heuristic> used;
      options.observer = [&](const NodeEvent& e) {
        if (e.action == NodeAction::kBranched) used[e.node.id] = e.heuristic;
      };
      r = Solve(p, policy, options);
      for (const SwitchLogEntry& s : r.switch_log) {
        const bool gate = IsDecisionDepth(s.depth, 10, 3);
        EXPECT_EQ(s.computed_features, gate) << family << " depth " << s.depth;
        if (!gate) EXPECT_EQ(s.heuristic, s.parent_heuristic);
        if (gate) {
          ++gated;
          EXPECT_EQ(s.heuristic, model->heuristics[s.cluster]);
        }
        EXPECT_EQ(used.at(s.node_id), s.heuristic);
      }
      EXPECT_EQ(used.size(), r.switch_log.size());
    }
  }
  EXPECT_GT(gated, 0);
}

TEST(DashPolicyPropertyTest, SingleClusterEqualsStaticTree) {
  for (Heuristic h : kAllHeuristics) {
    DashModel m = testing::ToyModel();
    m.centers = {{0.5, 1.0}};
    m.heuristics = {h};
    m.default_heuristic = h;
    auto model = std::make_shared<const DashModel>(m);
    for (uint64_t seed = 0; seed < 5; ++seed) {
      const MipProblem p = GenerateKnapsack(16, seed);
      DashPolicy dash(model);
      StaticPolicy fixed(h);
      SolveResult a, b;
      EXPECT_EQ(Record(p, dash, &a), Record(p, fixed, &b));
      EXPECT_EQ(a.nodes_explored, b.nodes_explored);
    }
  }
}

TEST(DashPolicyPropertyTest, AllFlagsOffEqualsPerInstanceHeuristic) {
  DashModel m = testing::ToyModel();
  m.root_centers = {{1.0, 0.0}, {0.0, 0.0}};
  m.switch_flags = {false, false};
  m.root_heuristics = {Heuristic::kPseudocostProduct, Heuristic::kMostFractional};
  auto model = std::make_shared<const DashModel>(m);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const MipProblem p = GenerateSetCover(12, 24, 0.2, seed);
    DashPolicy dash(model);
    StaticPolicy fixed(Heuristic::kPseudocostProduct);
    SolveResult a, b;
    EXPECT_EQ(Record(p, dash, &a), Record(p, fixed, &b));
    EXPECT_FALSE(dash.switching_enabled());
    EXPECT_EQ(dash.root_cluster(), 0);
    for (const SwitchLogEntry& s : a.switch_log) EXPECT_FALSE(s.computed_features);
  }
}

TEST(DashPolicyTest, RootClusterFlagIsResolvedPerInstance) {
  auto model = std::make_shared<const DashModel>(FullModel());
  DashPolicy policy(model);
  policy.BeginSolve(GenerateKnapsack(8, 0));
  EXPECT_EQ(policy.root_cluster(), 0);
  EXPECT_TRUE(policy.switching_enabled());
  EXPECT_EQ(policy.DefaultHeuristic(), Heuristic::kLeastFracHighObj);
}

}  // namespace
}  // namespace dash
