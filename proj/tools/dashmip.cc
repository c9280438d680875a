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

// dashmip command-line tool: solve, train, bench, project, report, generate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dash/bench.h"
#include "dash/branch_and_bound.h"
#include "dash/dash_policy.h"
#include "dash/generators.h"
#include "dash/mps.h"
#include "dash/trainer.h"

namespace dash {
namespace {

namespace fs = std::filesystem;

struct SolveArgs {
  std::string file;
  std::string model;
  std::string heuristic;
  int64_t node_limit = 0;
  double time_limit = 0.0;
  std::string trace;
  bool show_solution = false;
};

int RunSolve(const SolveArgs& args) {
  const MipProblem problem = ReadMpsFile(args.file);
  const auto violations = Validate(problem);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid instance: " << v << "\n";
    return 2;
  }
  std::unique_ptr<BranchingPolicy> policy;
  if (!args.model.empty()) {
    policy = std::make_unique<DashPolicy>(
        std::make_shared<const DashModel>(LoadModel(args.model)));
  } else {
    const auto h = ParseHeuristic(args.heuristic.empty() ? "mf" : args.heuristic);
    if (!h) {
      std::cerr << "unknown heuristic '" << args.heuristic
                << "' (expected mf, lf, lfho, mfho, pw, p or 0-5)\n";
      return 2;
    }
    policy = std::make_unique<StaticPolicy>(*h);
  }
  SolveOptions options;
  options.limits.node_limit = args.node_limit;
  options.limits.time_limit_seconds = args.time_limit;
  std::ofstream trace;
  if (!args.trace.empty()) {
    trace.open(args.trace);
    if (!trace) throw std::runtime_error("cannot write " + args.trace);
    options.observer = MakeJsonlTraceObserver(trace);
  }
  const SolveResult r = Solve(problem, *policy, options);
  std::cout << "instance  " << InstanceName(args.file) << "\n"
            << "status    " << ToString(r.status) << "\n";
  if (r.has_incumbent) std::printf("objective %.10g\n", r.objective);
  std::cout << "nodes     " << r.nodes_explored << "\n";
  std::printf("seconds   %.3f\n", r.seconds);
  int switches = 0;
  for (const SwitchLogEntry& s : r.switch_log) switches += s.heuristic != s.parent_heuristic;
  std::cout << "switches  " << switches << "\n";
  if (r.abandoned_nodes > 0) std::cout << "abandoned " << r.abandoned_nodes << "\n";
  if (args.show_solution && r.has_incumbent) {
    for (int j = 0; j < problem.num_vars(); ++j) {
      if (r.incumbent[j] != 0.0) {
        std::printf("  %s = %.10g\n", problem.var_names[j].c_str(), r.incumbent[j]);
      }
    }
  }
  return 0;
}

struct TrainArgs {
  std::string config;
  std::string out;
  std::string dir;
  std::string samples;
  std::string runs;
  int threads = 0;
};

std::string Sibling(const std::string& out, const std::string& suffix) {
  fs::path p(out);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

int RunTrain(const TrainArgs& args) {
  TrainingConfig config = args.config.empty() ? TrainingConfig{} : LoadConfig(args.config);
  if (args.threads > 0) config.threads = args.threads;
  std::vector<TrainingInstance> instances;
  for (const std::string& path : ListMpsFiles(args.dir)) {
    try {
      MipProblem p = ReadMpsFile(path);
      const auto violations = Validate(p);
      if (!violations.empty()) {
        std::cerr << "warning: skipping " << path << ": " << violations.front() << "\n";
        continue;
      }
      instances.push_back({InstanceName(path), std::move(p)});
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping " << path << ": " << e.what() << "\n";
    }
  }
  if (instances.empty()) {
    std::cerr << "no usable .mps files in " << args.dir << "\n";
    return 1;
  }
  std::cerr << "training on " << instances.size() << " instances, mode "
            << ToString(config.mode) << "\n";
  const TrainingResult result = Train(instances, config);
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
  SaveModel(result.model, args.out);
  const std::string samples = args.samples.empty() ? Sibling(args.out, "_samples.csv")
                                                   : args.samples;
  const std::string runs = args.runs.empty() ? Sibling(args.out, "_runs.csv") : args.runs;
  WriteSamplesCsv(result.samples, samples);
  WriteStandaloneCsv(result.standalone, runs);
  std::cout << "clusters   " << result.model.centers.size() << "\n"
            << "best static " << HeuristicName(result.best_static) << "\n"
            << "assignment ";
  for (Heuristic h : result.model.heuristics) std::cout << " " << HeuristicName(h);
  std::cout << "\n";
  if (!result.tuner.history.empty()) {
    std::cout << "tuner      " << result.tuner.history.front() << " -> "
              << result.tuner.history.back() << " penalized nodes\n";
  }
  if (!result.model.switch_flags.empty()) {
    std::cout << "switching ";
    for (bool f : result.model.switch_flags) std::cout << " " << (f ? "on" : "off");
    std::cout << "\n";
  }
  std::cout << "wrote " << args.out << ", " << samples << ", " << runs << "\n";
  return 0;
}

struct BenchArgs {
  std::string solvers;
  std::string dir;
  std::string records = "records.csv";
  double timeout = 1800.0;
  int64_t node_limit = 0;
  uint64_t seed = 0;
  int threads = 1;
};

int RunBench(const BenchArgs& args) {
  const std::vector<SolverSpec> solvers = LoadSolverSpecs(args.solvers);
  const std::vector<std::string> paths = ListMpsFiles(args.dir);
  if (paths.empty()) {
    std::cerr << "no .mps files in " << args.dir << "\n";
    return 1;
  }
  BenchOptions options;
  options.timeout_seconds = args.timeout;
  options.node_limit = args.node_limit;
  options.seed = args.seed;
  options.threads = args.threads;
  options.records_path = args.records;
  const auto records = RunBenchmark(solvers, paths, options);
  int errors = 0;
  for (const RunRecord& r : records) errors += r.status == RunStatus::kError;
  ReportOptions ro;
  ro.timeout_seconds = args.timeout;
  ro.vbs_members = StaticSolverNames(records);
  ro.vbs_all = true;
  std::cout << FormatReportText(MakeReport(records, ro));
  std::cerr << records.size() << " records in " << args.records;
  if (errors > 0) std::cerr << " (" << errors << " errors)";
  std::cerr << "\n";
  return 0;
}

struct ReportArgs {
  std::string records;
  double timeout = 1800.0;
  std::vector<std::string> vbs;
  bool vbs_static = false;
  bool vbs_all = false;
  std::string csv;
};

int RunReport(const ReportArgs& args) {
  const std::vector<RunRecord> records = ReadRecordsCsv(args.records);
  ReportOptions ro;
  ro.timeout_seconds = args.timeout;
  ro.vbs_members = args.vbs;
  if (args.vbs_static) ro.vbs_members = StaticSolverNames(records);
  ro.vbs_all = args.vbs_all;
  const auto rows = MakeReport(records, ro);
  std::cout << FormatReportText(rows);
  if (!args.csv.empty()) {
    std::ofstream out(args.csv);
    if (!out) throw std::runtime_error("cannot write " + args.csv);
    out << FormatReportCsv(rows);
  }
  return 0;
}

struct GenerateArgs {
  std::string family;
  int count = 10;
  uint64_t seed = 0;
  std::string dir;
};

int RunGenerate(const GenerateArgs& args) {
  fs::create_directories(args.dir);
  for (int i = 0; i < args.count; ++i) {
    const auto p = GenerateFamily(args.family, args.seed + static_cast<uint64_t>(i));
    if (!p) {
      std::cerr << "unknown family '" << args.family << "'\n";
      return 2;
    }
    const std::string name = args.family + "_" + std::to_string(args.seed + i) + ".mps";
    WriteMpsFile(*p, (fs::path(args.dir) / name).string());
  }
  std::cout << "wrote " << args.count << " instances to " << args.dir << "\n";
  return 0;
}

}  // namespace
}  // namespace dash

int main(int argc, char** argv) {
  using namespace dash;
  CLI::App app{"Branch-and-bound with adaptive heuristic switching"};
  app.require_subcommand(1);
  int code = 0;

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one MPS instance");
  s->add_option("file", solve.file, "Instance (.mps)")->required()->check(CLI::ExistingFile);
  auto* model_opt = s->add_option("--model", solve.model, "Trained model JSON")
                        ->check(CLI::ExistingFile);
  s->add_option("--heuristic", solve.heuristic, "Static heuristic: mf lf lfho mfho pw p")
      ->excludes(model_opt);
  s->add_option("--node-limit", solve.node_limit, "Node limit (0 = none)");
  s->add_option("--time-limit", solve.time_limit, "Time limit in seconds (0 = none)");
  s->add_option("--trace", solve.trace, "Write a JSON-lines node trace");
  s->add_flag("--solution", solve.show_solution, "Print nonzero variables");
  s->callback([&] { code = RunSolve(solve); });

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train a switching model from a directory");
  t->add_option("dir", train.dir, "Directory of .mps files")
      ->required()
      ->check(CLI::ExistingDirectory);
  t->add_option("--config", train.config, "Training config JSON")->check(CLI::ExistingFile);
  t->add_option("--out", train.out, "Model output path")->required();
  t->add_option("--samples", train.samples, "Feature samples CSV");
  t->add_option("--runs", train.runs, "Standalone runs CSV");
  t->add_option("--threads", train.threads, "Worker threads (overrides config)");
  t->callback([&] { code = RunTrain(train); });

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run solvers over a directory of instances");
  b->add_option("dir", bench.dir, "Directory of .mps files")
      ->required()
      ->check(CLI::ExistingDirectory);
  b->add_option("--solvers", bench.solvers, "Solver spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  b->add_option("--timeout", bench.timeout, "Per-run timeout in seconds")
      ->capture_default_str();
  b->add_option("--seed", bench.seed, "Seed for randomized solvers");
  b->add_option("--records", bench.records, "Records CSV (resumed when present)")
      ->capture_default_str();
  b->add_option("--node-limit", bench.node_limit, "Per-run node limit (0 = none)");
  b->add_option("--threads", bench.threads, "Parallel runs")->capture_default_str();
  b->callback([&] { code = RunBench(bench); });

  std::string features, coords;
  auto* p = app.add_subcommand("project", "Project feature vectors onto two principal axes");
  p->add_option("--features", features, "Feature CSV with f0..f39 columns")
      ->required()
      ->check(CLI::ExistingFile);
  p->add_option("--out", coords, "Coordinates CSV")->required();
  p->callback([&] {
    ProjectFeaturesCsv(features, coords);
    std::cout << "wrote " << coords << "\n";
  });

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Summarize a records CSV");
  r->add_option("--records", report.records, "Records CSV")
      ->required()
      ->check(CLI::ExistingFile);
  r->add_option("--timeout", report.timeout, "Timeout used for Par10")->capture_default_str();
  r->add_option("--vbs", report.vbs, "Add a VBS row over these solvers");
  r->add_flag("--vbs-static", report.vbs_static, "Add a VBS row over static solvers");
  r->add_flag("--vbs-all", report.vbs_all, "Add a VBS_DASH row over every solver");
  r->add_option("--csv", report.csv, "Also write the table as CSV");
  r->callback([&] { code = RunReport(report); });

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write generated instances");
  g->add_option("dir", gen.dir, "Output directory")->required();
  g->add_option("--family", gen.family,
                "knapsack intknap setcover lotsizing binpacking facility small")
      ->required();
  g->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  g->add_option("--seed", gen.seed, "First seed");
  g->callback([&] { code = RunGenerate(gen); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
