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

// Offline training of switching models.
//
// Pipeline: every training instance is solved once per heuristic; the
// subproblems met along those searches are featurized at a few depths; the
// resulting extended set is scaled and clustered with g-means; finally a
// coordinate-descent tuner assigns one heuristic per cluster so that the
// total penalized node count of full switching solves is minimal.
//
// Penalized node count: the nodes a run explored, or 10 x node_limit when the
// run did not finish within its budget.

#ifndef DASH_TRAINER_H_
#define DASH_TRAINER_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dash/branch_and_bound.h"
#include "dash/clustering.h"
#include "dash/dash_policy.h"
#include "dash/features.h"
#include "dash/heuristics.h"
#include "dash/mip_problem.h"
#include "json.hpp"

namespace dash {

enum class TrainMode {
  kDash,      // switching everywhere
  kDashPlus,  // per root cluster switch flags
  kIsac,      // one heuristic per root cluster, never switch
};

std::string ToString(TrainMode mode);

struct FeatureFilter {
  bool enabled = false;
  int bins = 10;
  // Keep at most this many features; 0 keeps all that pass the threshold.
  int top_k = 0;
  // Features need a gain strictly above this.
  double threshold = 0.0;
};

struct TrainingConfig {
  std::vector<int> sample_depths = {3, 6, 9};
  // Vectors recorded per depth per (instance, heuristic) run.
  int samples_per_depth = 5;
  int64_t node_limit = 5000;
  double time_limit_seconds = 0.0;
  int tuner_passes = 3;
  uint64_t seed = 0;
  FeatureFilter filter;
  TrainMode mode = TrainMode::kDash;
  GMeansOptions gmeans;
  int max_depth = 10;
  int interval = 3;
  std::vector<Heuristic> heuristics = {kAllHeuristics.begin(), kAllHeuristics.end()};
  int threads = 1;

  // Throws std::invalid_argument.
  void Validate() const;
};

nlohmann::json ConfigToJson(const TrainingConfig& config);
// Missing keys keep their defaults.
TrainingConfig ConfigFromJson(const nlohmann::json& json);
TrainingConfig LoadConfig(const std::string& path);

struct TrainingInstance {
  std::string name;
  MipProblem problem;
};

bool Finished(SolveStatus status);
int64_t PenalizedNodes(const SolveResult& result, int64_t node_limit);

SolveOptions BudgetOptions(const TrainingConfig& config);

struct StandaloneRun {
  std::string instance;
  Heuristic heuristic = Heuristic::kMostFractional;
  SolveStatus status = SolveStatus::kOptimal;
  int64_t nodes = 0;
  int64_t penalized = 0;
  double seconds = 0.0;
  bool has_objective = false;
  double objective = 0.0;
};

// Every instance under every configured heuristic, instance-major.
std::vector<StandaloneRun> RunStandalone(std::span<const TrainingInstance> instances,
                                         const TrainingConfig& config);

// penalized[i][h] for instance i and heuristic id h; heuristics that were not
// run hold -1.
using CostTable = std::vector<std::array<int64_t, kNumHeuristics>>;
CostTable ToCostTable(std::span<const StandaloneRun> runs,
                      std::span<const TrainingInstance> instances);

// Per instance, the cheapest heuristic id; ties go to the lowest id.
std::vector<int> BestHeuristicLabels(const CostTable& costs);

// Heuristic with the lowest total over `members` (all rows when empty);
// ties go to the lowest id.
Heuristic BestStatic(const CostTable& costs, std::span<const int> members = {});

// Heuristics that ran on every instance, cheapest total first; ties go to
// the lowest id.
std::vector<Heuristic> RankHeuristics(const CostTable& costs);

struct SampledVector {
  FeatureVector features{};
  std::string instance;
  // Heuristic id of the run it came from, -1 for root vectors.
  int heuristic = -1;
  int depth = 0;
};

// Root vectors of all usable instances followed by the vectors sampled along
// single-heuristic searches. Instances whose root relaxation is not optimal
// are skipped with a warning.
std::vector<SampledVector> CollectSubproblems(
    std::span<const TrainingInstance> instances, const TrainingConfig& config,
    std::vector<std::string>* warnings = nullptr);

// Entropy reduction of `labels` (log base 2) from equal-width binning of
// `column` over its range. Constant columns give 0.
double InformationGain(std::span<const double> column, std::span<const int> labels,
                       int bins);

// Mask of features passing the filter; falls back to all features (with a
// warning) when none pass.
std::vector<bool> SelectFeatures(std::span<const double> gains,
                                 const FeatureFilter& filter,
                                 std::vector<std::string>* warnings = nullptr);

// Evaluates cluster -> heuristic assignments by running full switching solves
// of every training instance. Results are memoized per assignment.
class AssignmentEvaluator {
 public:
  AssignmentEvaluator(DashModel base, std::span<const TrainingInstance> instances,
                      const TrainingConfig& config);

  // Per-instance penalized node counts.
  const std::vector<int64_t>& Costs(const std::vector<Heuristic>& assignment);
  int64_t Total(const std::vector<Heuristic>& assignment);

  int evaluations() const { return evaluations_; }
  int num_clusters() const { return static_cast<int>(base_.centers.size()); }

 private:
  DashModel base_;
  std::span<const TrainingInstance> instances_;
  TrainingConfig config_;
  std::map<std::vector<Heuristic>, std::vector<int64_t>> memo_;
  int evaluations_ = 0;
};

struct TunerResult {
  std::vector<Heuristic> assignment;
  // Objective at initialization and after every accepted move.
  std::vector<int64_t> history;
  int passes = 0;
};

// Coordinate descent from `initial`: sweeps the clusters in a seeded random
// order, trying every configured heuristic for the swept cluster and keeping
// strict improvements only.
TunerResult AssignHeuristics(AssignmentEvaluator& evaluator,
                             std::vector<Heuristic> initial,
                             const TrainingConfig& config);

struct TrainingResult {
  DashModel model;
  std::vector<StandaloneRun> standalone;
  std::vector<SampledVector> samples;
  // Empty unless filtering was enabled.
  std::vector<double> gains;
  TunerResult tuner;
  Heuristic best_static = Heuristic::kMostFractional;
  std::vector<std::string> warnings;
};

TrainingResult Train(std::span<const TrainingInstance> instances,
                     const TrainingConfig& config);

void WriteSamplesCsv(std::span<const SampledVector> samples, const std::string& path);
void WriteStandaloneCsv(std::span<const StandaloneRun> runs, const std::string& path);

}  // namespace dash

#endif  // DASH_TRAINER_H_
