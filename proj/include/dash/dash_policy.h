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

// Dynamic heuristic switching during branch and bound.
//
// At a node of depth d with d < max_depth and d % interval == 0 the policy
// computes the subproblem features, scales and masks them, finds the nearest
// cluster center and branches with the heuristic assigned to that cluster.
// Every other node keeps its parent's heuristic.
//
// A model may also carry root clusters. The root feature vector of an
// instance picks one of them once per solve; when that root cluster has
// switching disabled, the whole search uses the root cluster's heuristic.
// A model with all switching disabled is therefore a per-instance
// algorithm selector.

#ifndef DASH_DASH_POLICY_H_
#define DASH_DASH_POLICY_H_

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dash/branch_and_bound.h"
#include "dash/clustering.h"
#include "dash/features.h"
#include "dash/heuristics.h"
#include "json.hpp"

namespace dash {

inline constexpr int kModelVersion = 1;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DashModel {
  ScalingParams scaling;
  // Dimensions kept after feature filtering; all true when unfiltered.
  std::vector<bool> feature_mask = std::vector<bool>(kNumFeatures, true);
  // Subproblem cluster centers in scaled, masked space.
  std::vector<Point> centers;
  std::vector<Heuristic> heuristics;
  // Root clusters; empty means switching is always on.
  std::vector<Point> root_centers;
  // Per root cluster; an empty vector means all enabled.
  std::vector<bool> switch_flags;
  // Heuristic used for a whole solve when its root cluster has switching
  // disabled; falls back to default_heuristic when empty.
  std::vector<Heuristic> root_heuristics;
  int max_depth = 10;
  int interval = 3;
  Heuristic default_heuristic = Heuristic::kMostFractional;

  int masked_dimension() const;

  // Throws ModelError describing the first inconsistency found.
  void Validate() const;

  friend bool operator==(const DashModel&, const DashModel&) = default;
};

nlohmann::json ModelToJson(const DashModel& model);
DashModel ModelFromJson(const nlohmann::json& json);
void SaveModel(const DashModel& model, const std::string& path);
DashModel LoadModel(const std::string& path);

// The depth gate shared by the switching and random policies.
inline bool IsDecisionDepth(int depth, int max_depth, int interval) {
  return depth < max_depth && depth % interval == 0;
}

// Scaled and masked features of a subproblem, i.e. the space the centers
// live in.
std::vector<double> EmbedFeatures(const FeatureVector& features,
                                  const DashModel& model);

// One decision at a branching node, ignoring the per-instance switch flag.
PolicyDecision ChooseHeuristic(const NodeContext& context,
                               const DashModel& model);

class DashPolicy : public BranchingPolicy {
 public:
  explicit DashPolicy(std::shared_ptr<const DashModel> model);

  void BeginSolve(const MipProblem& problem) override;
  Heuristic DefaultHeuristic() const override;
  PolicyDecision Decide(const NodeContext& context) override;

  // State of the most recent BeginSolve().
  bool switching_enabled() const { return switching_enabled_; }
  int root_cluster() const { return root_cluster_; }
  const DashModel& model() const { return *model_; }

 private:
  std::shared_ptr<const DashModel> model_;
  bool switching_enabled_ = true;
  int root_cluster_ = -1;
  Heuristic fixed_heuristic_ = Heuristic::kMostFractional;
};

}  // namespace dash

#endif  // DASH_DASH_POLICY_H_
