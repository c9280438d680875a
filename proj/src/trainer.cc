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

#include "dash/trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "dash/csv.h"
#include "dash/lp_solver.h"
#include "dash/parallel.h"
#include "dash/random.h"

namespace dash {

using nlohmann::json;

std::string ToString(TrainMode mode) {
  switch (mode) {
    case TrainMode::kDash:
      return "dash";
    case TrainMode::kDashPlus:
      return "dash_plus";
    case TrainMode::kIsac:
      return "isac";
  }
  return "?";
}

void TrainingConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("invalid training config: " + msg);
  };
  if (max_depth < 1) fail("max_depth must be >= 1");
  if (interval < 1) fail("interval must be >= 1");
  for (int d : sample_depths) {
    if (d < 0 || d >= max_depth) {
      fail("sample depth " + std::to_string(d) + " outside [0, max_depth)");
    }
  }
  if (samples_per_depth < 1) fail("samples_per_depth must be >= 1");
  if (node_limit < 1) fail("node_limit must be >= 1");
  if (time_limit_seconds < 0.0) fail("time_limit_seconds must be >= 0");
  if (tuner_passes < 0) fail("tuner_passes must be >= 0");
  if (filter.bins < 1) fail("filter bins must be >= 1");
  if (filter.top_k < 0) fail("filter top_k must be >= 0");
  if (heuristics.empty()) fail("no heuristics");
  std::set<Heuristic> unique(heuristics.begin(), heuristics.end());
  if (unique.size() != heuristics.size()) fail("duplicate heuristics");
  if (threads < 1) fail("threads must be >= 1");
  if (gmeans.min_cluster_size < 1) fail("min_cluster_size must be >= 1");
  if (gmeans.max_clusters < 1) fail("max_clusters must be >= 1");
}

json ConfigToJson(const TrainingConfig& config) {
  std::vector<std::string> names;
  for (Heuristic h : config.heuristics) names.emplace_back(HeuristicName(h));
  return json{
      {"sample_depths", config.sample_depths},
      {"samples_per_depth", config.samples_per_depth},
      {"node_limit", config.node_limit},
      {"time_limit_seconds", config.time_limit_seconds},
      {"tuner_passes", config.tuner_passes},
      {"seed", config.seed},
      {"filter",
       {{"enabled", config.filter.enabled},
        {"bins", config.filter.bins},
        {"top_k", config.filter.top_k},
        {"threshold", config.filter.threshold}}},
      {"mode", ToString(config.mode)},
      {"gmeans",
       {{"min_cluster_size", config.gmeans.min_cluster_size},
        {"critical_value", config.gmeans.critical_value},
        {"max_clusters", config.gmeans.max_clusters}}},
      {"max_depth", config.max_depth},
      {"interval", config.interval},
      {"heuristics", names},
      {"threads", config.threads},
  };
}

namespace {

void CheckKeys(const json& j, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
  }
}

Heuristic HeuristicFromJson(const json& v) {
  std::optional<Heuristic> h;
  if (v.is_number_integer()) {
    h = ParseHeuristic(std::to_string(v.get<int>()));
  } else if (v.is_string()) {
    h = ParseHeuristic(v.get<std::string>());
  }
  if (!h) throw std::invalid_argument("unknown heuristic " + v.dump());
  return *h;
}

}  // namespace

TrainingConfig ConfigFromJson(const json& j) {
  TrainingConfig c;
  try {
    CheckKeys(j,
              {"sample_depths", "samples_per_depth", "node_limit",
               "time_limit_seconds", "tuner_passes", "seed", "filter", "mode",
               "gmeans", "max_depth", "interval", "heuristics", "threads"},
              "training config");
    c.sample_depths = j.value("sample_depths", c.sample_depths);
    c.samples_per_depth = j.value("samples_per_depth", c.samples_per_depth);
    c.node_limit = j.value("node_limit", c.node_limit);
    c.time_limit_seconds = j.value("time_limit_seconds", c.time_limit_seconds);
    c.tuner_passes = j.value("tuner_passes", c.tuner_passes);
    c.seed = j.value("seed", c.seed);
    if (j.contains("filter")) {
      const json& f = j.at("filter");
      CheckKeys(f, {"enabled", "bins", "top_k", "threshold"}, "filter");
      c.filter.enabled = f.value("enabled", true);
      c.filter.bins = f.value("bins", c.filter.bins);
      c.filter.top_k = f.value("top_k", c.filter.top_k);
      c.filter.threshold = f.value("threshold", c.filter.threshold);
    }
    if (j.contains("mode")) {
      const std::string mode = j.at("mode").get<std::string>();
      if (mode == "dash") {
        c.mode = TrainMode::kDash;
      } else if (mode == "dash_plus" || mode == "dash+") {
        c.mode = TrainMode::kDashPlus;
      } else if (mode == "isac") {
        c.mode = TrainMode::kIsac;
      } else {
        throw std::invalid_argument("unknown mode '" + mode + "'");
      }
    }
    if (j.contains("gmeans")) {
      const json& g = j.at("gmeans");
      CheckKeys(g, {"min_cluster_size", "critical_value", "max_clusters"}, "gmeans");
      c.gmeans.min_cluster_size = g.value("min_cluster_size", c.gmeans.min_cluster_size);
      c.gmeans.critical_value = g.value("critical_value", c.gmeans.critical_value);
      c.gmeans.max_clusters = g.value("max_clusters", c.gmeans.max_clusters);
    }
    c.max_depth = j.value("max_depth", c.max_depth);
    c.interval = j.value("interval", c.interval);
    if (j.contains("heuristics")) {
      c.heuristics.clear();
      for (const json& v : j.at("heuristics")) c.heuristics.push_back(HeuristicFromJson(v));
    }
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed training config: ") + e.what());
  }
  c.Validate();
  return c;
}

TrainingConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("cannot parse " + path + ": " + e.what());
  }
  return ConfigFromJson(j);
}

bool Finished(SolveStatus status) {
  return status == SolveStatus::kOptimal || status == SolveStatus::kInfeasible ||
         status == SolveStatus::kUnbounded;
}

int64_t PenalizedNodes(const SolveResult& result, int64_t node_limit) {
  return Finished(result.status) ? result.nodes_explored : 10 * node_limit;
}

SolveOptions BudgetOptions(const TrainingConfig& config) {
  SolveOptions options;
  options.limits.node_limit = config.node_limit;
  options.limits.time_limit_seconds = config.time_limit_seconds;
  return options;
}

std::vector<StandaloneRun> RunStandalone(std::span<const TrainingInstance> instances,
                                         const TrainingConfig& config) {
  const int nh = static_cast<int>(config.heuristics.size());
  std::vector<StandaloneRun> runs(instances.size() * nh);
  const SolveOptions options = BudgetOptions(config);
  ParallelFor(static_cast<int>(runs.size()), config.threads, [&](int k) {
    const TrainingInstance& inst = instances[k / nh];
    const Heuristic h = config.heuristics[k % nh];
    StaticPolicy policy(h);
    const SolveResult r = Solve(inst.problem, policy, options);
    StandaloneRun& run = runs[k];
    run.instance = inst.name;
    run.heuristic = h;
    run.status = r.status;
    run.nodes = r.nodes_explored;
    run.penalized = PenalizedNodes(r, config.node_limit);
    run.seconds = r.seconds;
    run.has_objective = r.has_incumbent;
    run.objective = r.objective;
  });
  return runs;
}

CostTable ToCostTable(std::span<const StandaloneRun> runs,
                      std::span<const TrainingInstance> instances) {
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < instances.size(); ++i) {
    index.emplace(instances[i].name, static_cast<int>(i));
  }
  CostTable table(instances.size());
  for (auto& row : table) row.fill(-1);
  for (const StandaloneRun& run : runs) {
    auto it = index.find(run.instance);
    DASH_CHECK(it != index.end(), "run of unknown instance " + run.instance);
    table[it->second][HeuristicId(run.heuristic)] = run.penalized;
  }
  return table;
}

std::vector<int> BestHeuristicLabels(const CostTable& costs) {
  std::vector<int> labels;
  labels.reserve(costs.size());
  for (const auto& row : costs) {
    int best = -1;
    for (int h = 0; h < kNumHeuristics; ++h) {
      if (row[h] < 0) continue;
      if (best < 0 || row[h] < row[best]) best = h;
    }
    DASH_CHECK(best >= 0, "instance without runs");
    labels.push_back(best);
  }
  return labels;
}

Heuristic BestStatic(const CostTable& costs, std::span<const int> members) {
  std::vector<int> rows(members.begin(), members.end());
  if (rows.empty()) {
    rows.resize(costs.size());
    std::iota(rows.begin(), rows.end(), 0);
  }
  int best = -1;
  int64_t best_total = 0;
  for (int h = 0; h < kNumHeuristics; ++h) {
    int64_t total = 0;
    bool ran = true;
    for (int i : rows) {
      if (costs[i][h] < 0) {
        ran = false;
        break;
      }
      total += costs[i][h];
    }
    if (!ran || rows.empty()) continue;
    if (best < 0 || total < best_total) {
      best = h;
      best_total = total;
    }
  }
  DASH_CHECK(best >= 0, "no heuristic ran on every instance");
  return HeuristicFromId(best);
}

std::vector<Heuristic> RankHeuristics(const CostTable& costs) {
  std::vector<std::pair<int64_t, int>> totals;
  for (int h = 0; h < kNumHeuristics; ++h) {
    int64_t total = 0;
    bool ran = true;
    for (const auto& row : costs) {
      if (row[h] < 0) ran = false;
      total += row[h];
    }
    if (ran) totals.emplace_back(total, h);
  }
  std::sort(totals.begin(), totals.end());
  std::vector<Heuristic> out;
  for (const auto& [total, h] : totals) out.push_back(HeuristicFromId(h));
  return out;
}

namespace {

bool RootIsSolvable(const MipProblem& problem) {
  return SolveLp(problem).status == LpStatus::kOptimal;
}

}  // namespace

std::vector<SampledVector> CollectSubproblems(
    std::span<const TrainingInstance> instances, const TrainingConfig& config,
    std::vector<std::string>* warnings) {
  config.Validate();
  const int n = static_cast<int>(instances.size());
  std::vector<char> usable(n, 0);
  ParallelFor(n, config.threads,
              [&](int i) { usable[i] = RootIsSolvable(instances[i].problem); });

  std::vector<SampledVector> out;
  for (int i = 0; i < n; ++i) {
    const TrainingInstance& inst = instances[i];
    if (!usable[i]) {
      if (warnings) {
        warnings->push_back("skipping " + inst.name +
                            ": root relaxation has no optimal solution");
      }
      continue;
    }
    SampledVector root;
    root.features = ComputeFeatures(inst.problem, inst.problem.lower,
                                    inst.problem.upper, 0);
    root.instance = inst.name;
    out.push_back(std::move(root));
  }

  const int nh = static_cast<int>(config.heuristics.size());
  std::vector<std::vector<SampledVector>> per_run(n * nh);
  SolveOptions options = BudgetOptions(config);
  ParallelFor(n * nh, config.threads, [&](int k) {
    const int i = k / nh;
    if (!usable[i]) return;
    const TrainingInstance& inst = instances[i];
    const Heuristic h = config.heuristics[k % nh];
    std::vector<SampledVector>& sink = per_run[k];
    std::unordered_map<int, int> taken;
    SolveOptions run_options = options;
    run_options.observer = [&](const NodeEvent& event) {
      if (event.action != NodeAction::kBranched) return;
      const int depth = event.node.depth;
      if (std::find(config.sample_depths.begin(), config.sample_depths.end(),
                    depth) == config.sample_depths.end()) {
        return;
      }
      int& count = taken[depth];
      if (count >= config.samples_per_depth) return;
      ++count;
      SampledVector v;
      v.features = ComputeFeatures(inst.problem, event.lower, event.upper, depth);
      v.instance = inst.name;
      v.heuristic = HeuristicId(h);
      v.depth = depth;
      sink.push_back(std::move(v));
    };
    StaticPolicy policy(h);
    Solve(inst.problem, policy, run_options);
  });
  for (auto& run : per_run) {
    for (auto& v : run) out.push_back(std::move(v));
  }
  return out;
}

namespace {

double Entropy(const std::unordered_map<int, int>& counts, int total) {
  double h = 0.0;
  for (const auto& [label, count] : counts) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double InformationGain(std::span<const double> column, std::span<const int> labels,
                       int bins) {
  DASH_CHECK(column.size() == labels.size(),
             "column has " + std::to_string(column.size()) + " values for " +
                 std::to_string(labels.size()) + " labels");
  DASH_CHECK(bins >= 1, "bins must be >= 1");
  const int n = static_cast<int>(column.size());
  if (n == 0) return 0.0;
  for (double v : column) DASH_CHECK(std::isfinite(v), "non-finite feature value");
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return 0.0;

  std::unordered_map<int, int> all;
  std::vector<std::unordered_map<int, int>> by_bin(bins);
  std::vector<int> bin_size(bins, 0);
  for (int i = 0; i < n; ++i) {
    int b = static_cast<int>(std::floor((column[i] - lo) / (hi - lo) * bins));
    b = std::clamp(b, 0, bins - 1);
    ++all[labels[i]];
    ++by_bin[b][labels[i]];
    ++bin_size[b];
  }
  double conditional = 0.0;
  for (int b = 0; b < bins; ++b) {
    if (bin_size[b] == 0) continue;
    conditional += static_cast<double>(bin_size[b]) / n * Entropy(by_bin[b], bin_size[b]);
  }
  return std::max(0.0, Entropy(all, n) - conditional);
}

std::vector<bool> SelectFeatures(std::span<const double> gains,
                                 const FeatureFilter& filter,
                                 std::vector<std::string>* warnings) {
  std::vector<int> passing;
  for (int d = 0; d < static_cast<int>(gains.size()); ++d) {
    if (gains[d] > filter.threshold) passing.push_back(d);
  }
  if (filter.top_k > 0 && static_cast<int>(passing.size()) > filter.top_k) {
    std::stable_sort(passing.begin(), passing.end(),
                     [&](int a, int b) { return gains[a] > gains[b]; });
    passing.resize(filter.top_k);
  }
  std::vector<bool> mask(gains.size(), false);
  if (passing.empty()) {
    if (warnings) {
      warnings->push_back("feature filter kept no feature; using all " +
                          std::to_string(gains.size()));
    }
    mask.assign(gains.size(), true);
    return mask;
  }
  for (int d : passing) mask[d] = true;
  return mask;
}

AssignmentEvaluator::AssignmentEvaluator(DashModel base,
                                         std::span<const TrainingInstance> instances,
                                         const TrainingConfig& config)
    : base_(std::move(base)), instances_(instances), config_(config) {
  base_.root_centers.clear();
  base_.switch_flags.clear();
  base_.root_heuristics.clear();
}

const std::vector<int64_t>& AssignmentEvaluator::Costs(
    const std::vector<Heuristic>& assignment) {
  DASH_CHECK(static_cast<int>(assignment.size()) == num_clusters(),
             "assignment has " + std::to_string(assignment.size()) +
                 " entries for " + std::to_string(num_clusters()) + " clusters");
  auto it = memo_.find(assignment);
  if (it != memo_.end()) return it->second;
  auto model = std::make_shared<DashModel>(base_);
  model->heuristics = assignment;
  std::vector<int64_t> costs(instances_.size());
  const SolveOptions options = BudgetOptions(config_);
  ParallelFor(static_cast<int>(instances_.size()), config_.threads, [&](int i) {
    DashPolicy policy(model);
    costs[i] = PenalizedNodes(Solve(instances_[i].problem, policy, options),
                              config_.node_limit);
  });
  ++evaluations_;
  return memo_.emplace(assignment, std::move(costs)).first->second;
}

int64_t AssignmentEvaluator::Total(const std::vector<Heuristic>& assignment) {
  const std::vector<int64_t>& costs = Costs(assignment);
  return std::accumulate(costs.begin(), costs.end(), int64_t{0});
}

TunerResult AssignHeuristics(AssignmentEvaluator& evaluator,
                             std::vector<Heuristic> initial,
                             const TrainingConfig& config) {
  TunerResult result;
  result.assignment = std::move(initial);
  int64_t current = evaluator.Total(result.assignment);
  result.history.push_back(current);
  SplitMix64 rng(MixSeed(config.seed, 3));
  const int k = evaluator.num_clusters();
  for (int pass = 0; pass < config.tuner_passes; ++pass) {
    result.passes = pass + 1;
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    for (int i = k; i > 1; --i) std::swap(order[i - 1], order[rng.NextIndex(i)]);
    bool changed = false;
    for (int c : order) {
      Heuristic best_h = result.assignment[c];
      int64_t best = current;
      for (Heuristic h : config.heuristics) {
        if (h == result.assignment[c]) continue;
        std::vector<Heuristic> trial = result.assignment;
        trial[c] = h;
        const int64_t total = evaluator.Total(trial);
        if (total < best) {
          best = total;
          best_h = h;
        }
      }
      if (best < current) {
        result.assignment[c] = best_h;
        current = best;
        result.history.push_back(current);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return result;
}

TrainingResult Train(std::span<const TrainingInstance> instances,
                     const TrainingConfig& config) {
  config.Validate();
  if (instances.empty()) throw std::invalid_argument("empty training set");
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < instances.size(); ++i) {
    if (!index.emplace(instances[i].name, static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate instance name " + instances[i].name);
    }
  }

  TrainingResult out;
  out.standalone = RunStandalone(instances, config);
  const CostTable costs = ToCostTable(out.standalone, instances);
  const std::vector<int> labels = BestHeuristicLabels(costs);
  out.best_static = BestStatic(costs);

  out.samples = CollectSubproblems(instances, config, &out.warnings);
  std::vector<int> root_rows;  // instance index of each root vector
  for (const SampledVector& v : out.samples) {
    if (v.heuristic < 0) root_rows.push_back(index.at(v.instance));
  }
  if (root_rows.empty()) {
    throw std::invalid_argument("no training instance has a solvable root relaxation");
  }

  DashModel& model = out.model;
  model.max_depth = config.max_depth;
  model.interval = config.interval;
  model.default_heuristic = out.best_static;

  if (config.filter.enabled) {
    std::vector<int> root_labels;
    for (int i : root_rows) root_labels.push_back(labels[i]);
    out.gains.resize(kNumFeatures);
    for (int d = 0; d < kNumFeatures; ++d) {
      std::vector<double> column;
      for (size_t r = 0; r < root_rows.size(); ++r) {
        column.push_back(out.samples[r].features[d]);
      }
      out.gains[d] = InformationGain(column, root_labels, config.filter.bins);
    }
    model.feature_mask = SelectFeatures(out.gains, config.filter, &out.warnings);
  }

  std::vector<FeatureVector> raw;
  raw.reserve(out.samples.size());
  for (const SampledVector& v : out.samples) raw.push_back(v.features);
  model.scaling = FitScaling(raw);

  std::vector<Point> root_points;
  for (size_t r = 0; r < root_rows.size(); ++r) {
    root_points.push_back(EmbedFeatures(out.samples[r].features, model));
  }

  if (config.mode != TrainMode::kIsac) {
    std::vector<Point> points;
    points.reserve(raw.size());
    for (const FeatureVector& f : raw) points.push_back(EmbedFeatures(f, model));
    GMeansOptions gopt = config.gmeans;
    gopt.seed = MixSeed(config.seed, 1);
    model.centers = GMeans(points, gopt).centers;
    AssignmentEvaluator evaluator(model, instances, config);
    out.tuner = AssignHeuristics(
        evaluator, std::vector<Heuristic>(model.centers.size(), out.best_static),
        config);
    model.heuristics = out.tuner.assignment;

    if (config.mode == TrainMode::kDashPlus) {
      GMeansOptions ropt = config.gmeans;
      ropt.seed = MixSeed(config.seed, 2);
      model.root_centers = GMeans(root_points, ropt).centers;
      const std::vector<int64_t>& dash_costs = evaluator.Costs(model.heuristics);
      std::vector<std::vector<int>> members(model.root_centers.size());
      for (size_t r = 0; r < root_rows.size(); ++r) {
        members[NearestCenter(root_points[r], model.root_centers)].push_back(
            root_rows[r]);
      }
      for (const std::vector<int>& group : members) {
        const Heuristic fixed =
            group.empty() ? out.best_static : BestStatic(costs, group);
        int64_t dash_total = 0;
        int64_t static_total = 0;
        for (int i : group) {
          dash_total += dash_costs[i];
          static_total += costs[i][HeuristicId(fixed)];
        }
        model.root_heuristics.push_back(fixed);
        model.switch_flags.push_back(dash_total < static_total);
      }
    }
  } else {
    GMeansOptions ropt = config.gmeans;
    ropt.seed = MixSeed(config.seed, 2);
    model.root_centers = GMeans(root_points, ropt).centers;
    std::vector<std::vector<int>> members(model.root_centers.size());
    for (size_t r = 0; r < root_rows.size(); ++r) {
      members[NearestCenter(root_points[r], model.root_centers)].push_back(
          root_rows[r]);
    }
    for (const std::vector<int>& group : members) {
      model.root_heuristics.push_back(group.empty() ? out.best_static
                                                    : BestStatic(costs, group));
      model.switch_flags.push_back(false);
    }
    model.centers = model.root_centers;
    model.heuristics = model.root_heuristics;
    out.tuner.assignment = model.heuristics;
  }
  model.Validate();
  return out;
}

void WriteSamplesCsv(std::span<const SampledVector> samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::vector<std::string> header = {"instance", "heuristic", "depth"};
  for (int d = 0; d < kNumFeatures; ++d) header.push_back(FeatureColumnName(d));
  out << CsvJoin(header) << '\n';
  for (const SampledVector& v : samples) {
    std::vector<std::string> row = {
        v.instance,
        v.heuristic < 0 ? "root"
                        : std::string(HeuristicName(HeuristicFromId(v.heuristic))),
        std::to_string(v.depth)};
    for (double f : v.features) row.push_back(FormatDouble(f));
    out << CsvJoin(row) << '\n';
  }
}

void WriteStandaloneCsv(std::span<const StandaloneRun> runs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "instance,heuristic,status,nodes,penalized,seconds,objective\n";
  for (const StandaloneRun& r : runs) {
    out << CsvJoin({r.instance, std::string(HeuristicName(r.heuristic)),
                    ToString(r.status), std::to_string(r.nodes),
                    std::to_string(r.penalized), FormatDouble(r.seconds),
                    r.has_objective ? FormatDouble(r.objective) : ""})
        << '\n';
  }
}

}  // namespace dash
