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

// Benchmark harness: runs solver configurations over an instance set,
// persists one record per (solver, instance), and summarizes the records as
// Avg / Par10 / %Solved tables with virtual best solver rows.

#ifndef DASH_BENCH_H_
#define DASH_BENCH_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dash/branch_and_bound.h"
#include "dash/dash_policy.h"
#include "dash/heuristics.h"
#include "dash/random.h"
#include "json.hpp"

namespace dash {

enum class RunStatus { kSolved, kTimeout, kNodeLimit, kError };

std::string ToString(RunStatus status);
std::optional<RunStatus> ParseRunStatus(std::string_view text);
RunStatus ToRunStatus(SolveStatus status);

struct RunRecord {
  std::string solver;
  std::string instance;
  RunStatus status = RunStatus::kError;
  double seconds = 0.0;
  int64_t nodes = 0;
  // Always set for solved runs; +-inf for proven infeasible or unbounded.
  bool has_objective = false;
  double objective = 0.0;

  bool solved() const { return status == RunStatus::kSolved; }
};

// Switches uniformly at random among `heuristics` at the depths where the
// switching policy would consult its model; inherits otherwise. The
// generator restarts from `seed` at every BeginSolve().
class RandomPolicy : public BranchingPolicy {
 public:
  RandomPolicy(std::vector<Heuristic> heuristics, int interval, int max_depth,
               uint64_t seed);

  void BeginSolve(const MipProblem& problem) override;
  Heuristic DefaultHeuristic() const override { return heuristics_.front(); }
  PolicyDecision Decide(const NodeContext& context) override;

 private:
  std::vector<Heuristic> heuristics_;
  int interval_;
  int max_depth_;
  uint64_t seed_;
  SplitMix64 rng_;
};

enum class SolverType { kStatic, kRandom, kModel };

struct SolverSpec {
  std::string name;
  SolverType type = SolverType::kStatic;
  // kStatic.
  Heuristic heuristic = Heuristic::kMostFractional;
  // kRandom.
  std::vector<Heuristic> heuristics;
  int interval = 3;
  int max_depth = 10;
  // kModel.
  std::string model_path;
  std::shared_ptr<const DashModel> model;
};

// Accepts {"solvers": [...]} or a bare array. Entries:
//   {"name": "mf", "type": "static", "heuristic": "mf"}
//   {"name": "RAND1", "type": "rand", "heuristics": [...], "interval": 3,
//    "max_depth": 10}
//   {"name": "DASH", "type": "model", "model": "dash.json"}
// Model paths are resolved against `base_dir` and loaded eagerly. Throws
// std::invalid_argument.
std::vector<SolverSpec> SolverSpecsFromJson(const nlohmann::json& json,
                                            const std::string& base_dir = ".");
std::vector<SolverSpec> LoadSolverSpecs(const std::string& path);

// Policy for one run; randomized solvers draw from `run_seed`.
std::unique_ptr<BranchingPolicy> MakePolicy(const SolverSpec& spec, uint64_t run_seed);

uint64_t RunSeed(uint64_t seed, std::string_view solver, std::string_view instance);

struct BenchOptions {
  double timeout_seconds = 1800.0;
  int64_t node_limit = 0;  // 0 = unlimited
  uint64_t seed = 0;
  int threads = 1;
  // Records are appended here as they finish; existing records are reused.
  std::string records_path;
};

// Solves `problem` (or records `load_error`) with one solver.
RunRecord RunOne(const SolverSpec& spec, const std::string& instance,
                 const MipProblem& problem, const BenchOptions& options);

// One record per (solver, instance), solver-major in the given orders.
// Instances that fail to load produce error records.
std::vector<RunRecord> RunBenchmark(std::span<const SolverSpec> solvers,
                                    std::span<const std::string> instance_paths,
                                    const BenchOptions& options);

inline constexpr std::array<std::string_view, 6> kRecordColumns = {
    "solver", "instance", "status", "seconds", "nodes", "objective"};

std::string RecordCsvHeader();
std::string RecordCsvLine(const RunRecord& record);
void WriteRecordsCsv(std::span<const RunRecord> records, const std::string& path);
std::vector<RunRecord> ReadRecordsCsv(const std::string& path);

// Records of one solver.
std::vector<RunRecord> RecordsFor(std::span<const RunRecord> records,
                                  std::string_view solver);
// Solver names in order of first appearance.
std::vector<std::string> SolverNames(std::span<const RunRecord> records);

// Mean seconds with unsolved runs counted as 10 x timeout.
double Par10(std::span<const RunRecord> records, double timeout_seconds);
// Mean seconds over solved runs only; NaN when none solved.
double Avg(std::span<const RunRecord> records);
// Percentage in [0, 100].
double PercentSolved(std::span<const RunRecord> records);
// Sum of node counts with unsolved runs counted as 10 x node_limit.
int64_t PenalizedNodeTotal(std::span<const RunRecord> records, int64_t node_limit);

// Per instance, the fastest solved record among `members` (all solvers when
// empty), renamed to `name`; a timeout record when none solved it.
std::vector<RunRecord> VirtualBest(std::span<const RunRecord> records,
                                   double timeout_seconds,
                                   const std::string& name = "VBS",
                                   std::span<const std::string> members = {});

struct ReportRow {
  std::string solver;
  double avg = 0.0;
  double par10 = 0.0;
  double percent_solved = 0.0;
  int runs = 0;
};

struct ReportOptions {
  double timeout_seconds = 1800.0;
  // Adds a VBS row over these solvers when non-empty.
  std::vector<std::string> vbs_members;
  // Adds a VBS_DASH row over every solver.
  bool vbs_all = false;
};

std::vector<ReportRow> MakeReport(std::span<const RunRecord> records,
                                  const ReportOptions& options);
std::string FormatReportText(std::span<const ReportRow> rows);
std::string FormatReportCsv(std::span<const ReportRow> rows);
std::vector<ReportRow> ParseReportCsv(const std::string& text);

// Solvers whose names are heuristic names (mf, lf, ...).
std::vector<std::string> StaticSolverNames(std::span<const RunRecord> records);

struct Projection {
  // Unit principal axes, each with its largest-magnitude component positive.
  std::vector<std::vector<double>> axes;
  std::vector<double> variances;
  std::vector<std::array<double, 2>> coords;
};

// Top-2 principal component coordinates of the centered rows.
Projection PcaProject(const std::vector<std::vector<double>>& rows);

// Reads a CSV whose feature columns are named f<digits>; writes the other
// columns followed by pc1, pc2.
void ProjectFeaturesCsv(const std::string& in_path, const std::string& out_path);

}  // namespace dash

#endif  // DASH_BENCH_H_
