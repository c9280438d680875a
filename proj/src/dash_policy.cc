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

#include <algorithm>
#include <fstream>

namespace dash {

using nlohmann::json;

int DashModel::masked_dimension() const {
  return static_cast<int>(std::count(feature_mask.begin(), feature_mask.end(), true));
}

void DashModel::Validate() const {
  auto fail = [](const std::string& msg) { throw ModelError("invalid model: " + msg); };
  if (scaling.mean.size() != kNumFeatures || scaling.stddev.size() != kNumFeatures) {
    fail("scaling must have " + std::to_string(kNumFeatures) +
         " dimensions, got " + std::to_string(scaling.mean.size()) + "/" +
         std::to_string(scaling.stddev.size()));
  }
  if (feature_mask.size() != kNumFeatures) {
    fail("mask must have " + std::to_string(kNumFeatures) + " entries, got " +
         std::to_string(feature_mask.size()));
  }
  const int dim = masked_dimension();
  if (dim == 0) fail("mask keeps no dimension");
  if (centers.empty()) fail("no cluster centers");
  for (size_t c = 0; c < centers.size(); ++c) {
    if (static_cast<int>(centers[c].size()) != dim) {
      fail("center " + std::to_string(c) + " has dimension " +
           std::to_string(centers[c].size()) + ", expected " + std::to_string(dim));
    }
  }
  if (heuristics.size() != centers.size()) {
    fail(std::to_string(heuristics.size()) + " heuristics for " +
         std::to_string(centers.size()) + " centers");
  }
  for (size_t c = 0; c < root_centers.size(); ++c) {
    if (static_cast<int>(root_centers[c].size()) != dim) {
      fail("root center " + std::to_string(c) + " has dimension " +
           std::to_string(root_centers[c].size()) + ", expected " +
           std::to_string(dim));
    }
  }
  if (!switch_flags.empty() && switch_flags.size() != root_centers.size()) {
    fail(std::to_string(switch_flags.size()) + " switch flags for " +
         std::to_string(root_centers.size()) + " root centers");
  }
  if (!root_heuristics.empty() && root_heuristics.size() != root_centers.size()) {
    fail(std::to_string(root_heuristics.size()) + " root heuristics for " +
         std::to_string(root_centers.size()) + " root centers");
  }
  if (max_depth < 1) fail("max_depth must be >= 1");
  if (interval < 1) fail("interval must be >= 1");
}

json ModelToJson(const DashModel& model) {
  auto ids = [](const std::vector<Heuristic>& hs) {
    std::vector<int> out;
    for (Heuristic h : hs) out.push_back(HeuristicId(h));
    return out;
  };
  return json{
      {"version", kModelVersion},
      {"scaling", {{"mean", model.scaling.mean}, {"std", model.scaling.stddev}}},
      {"mask", model.feature_mask},
      {"centers", model.centers},
      {"heuristics", ids(model.heuristics)},
      {"switch_flags", model.switch_flags},
      {"root_centers", model.root_centers},
      {"root_heuristics", ids(model.root_heuristics)},
      {"max_depth", model.max_depth},
      {"interval", model.interval},
      {"default_heuristic", HeuristicId(model.default_heuristic)},
  };
}

DashModel ModelFromJson(const json& j) {
  DashModel model;
  try {
    const int version = j.at("version").get<int>();
    if (version != kModelVersion) {
      throw ModelError("unsupported model version " + std::to_string(version) +
                       " (expected " + std::to_string(kModelVersion) + ")");
    }
    model.scaling.mean = j.at("scaling").at("mean").get<std::vector<double>>();
    model.scaling.stddev = j.at("scaling").at("std").get<std::vector<double>>();
    if (j.contains("mask")) model.feature_mask = j.at("mask").get<std::vector<bool>>();
    model.centers = j.at("centers").get<std::vector<Point>>();
    auto read_ids = [](const json& arr, const char* what) {
      std::vector<Heuristic> out;
      for (const json& v : arr) {
        const int id = v.get<int>();
        if (id < 0 || id >= kNumHeuristics) {
          throw ModelError(std::string(what) + " id " + std::to_string(id) +
                           " out of range [0, 5]");
        }
        out.push_back(static_cast<Heuristic>(id));
      }
      return out;
    };
    model.heuristics = read_ids(j.at("heuristics"), "heuristic");
    if (j.contains("switch_flags")) {
      model.switch_flags = j.at("switch_flags").get<std::vector<bool>>();
    }
    if (j.contains("root_centers")) {
      model.root_centers = j.at("root_centers").get<std::vector<Point>>();
    }
    if (j.contains("root_heuristics")) {
      model.root_heuristics = read_ids(j.at("root_heuristics"), "root heuristic");
    }
    model.max_depth = j.value("max_depth", 10);
    model.interval = j.value("interval", 3);
    model.default_heuristic = read_ids(
        json::array({j.value("default_heuristic", 0)}), "default heuristic")[0];
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
  model.Validate();
  return model;
}

void SaveModel(const DashModel& model, const std::string& path) {
  model.Validate();
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write " + path);
  out << ModelToJson(model).dump(2) << '\n';
}

DashModel LoadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ModelError("cannot parse " + path + ": " + e.what());
  }
  return ModelFromJson(j);
}

std::vector<double> EmbedFeatures(const FeatureVector& features,
                                  const DashModel& model) {
  return ApplyMask(ApplyScaling(features, model.scaling), model.feature_mask);
}

PolicyDecision ChooseHeuristic(const NodeContext& context,
                               const DashModel& model) {
  const Node& node = context.node;
  if (!IsDecisionDepth(node.depth, model.max_depth, model.interval)) {
    return {node.parent_heuristic, -1, false};
  }
  const FeatureVector features =
      ComputeFeatures(context.problem, context.lower, context.upper, node.depth);
  const int cluster = NearestCenter(EmbedFeatures(features, model), model.centers);
  return {model.heuristics[cluster], cluster, true};
}

DashPolicy::DashPolicy(std::shared_ptr<const DashModel> model)
    : model_(std::move(model)) {
  DASH_CHECK(model_ != nullptr, "DashPolicy needs a model");
  model_->Validate();
}

void DashPolicy::BeginSolve(const MipProblem& problem) {
  switching_enabled_ = true;
  root_cluster_ = -1;
  fixed_heuristic_ = model_->default_heuristic;
  if (model_->root_centers.empty()) return;
  const FeatureVector root =
      ComputeFeatures(problem, problem.lower, problem.upper, 0);
  root_cluster_ = NearestCenter(EmbedFeatures(root, *model_), model_->root_centers);
  if (!model_->switch_flags.empty()) {
    switching_enabled_ = model_->switch_flags[root_cluster_];
  }
  if (!model_->root_heuristics.empty()) {
    fixed_heuristic_ = model_->root_heuristics[root_cluster_];
  }
}

Heuristic DashPolicy::DefaultHeuristic() const {
  return switching_enabled_ ? model_->default_heuristic : fixed_heuristic_;
}

PolicyDecision DashPolicy::Decide(const NodeContext& context) {
  if (!switching_enabled_) return {fixed_heuristic_, -1, false};
  return ChooseHeuristic(context, *model_);
}

}  // namespace dash
