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

#include "dash/bench.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dash/csv.h"
#include "dash/generators.h"
#include "dash/mps.h"
#include "dash/random.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dash {
namespace {

RunRecord Rec(const std::string& solver, const std::string& instance, RunStatus status,
              double seconds) {
  RunRecord r;
  r.solver = solver;
  r.instance = instance;
  r.status = status;
  r.seconds = seconds;
  r.nodes = static_cast<int64_t>(seconds * 10);
  if (status == RunStatus::kSolved) {
    r.has_objective = true;
    r.objective = 1.5;
  }
  return r;
}

std::vector<std::string> WriteInstances(const testing::TempDir& dir, int count) {
  std::vector<std::string> paths;
  for (int i = 0; i < count; ++i) {
    const std::string path = dir.file("inst" + std::to_string(i) + ".mps");
    WriteMpsFile(GenerateKnapsack(14, 100 + i), path);
    paths.push_back(path);
  }
  return paths;
}

std::vector<SolverSpec> TwoSolvers() {
  return SolverSpecsFromJson(nlohmann::json::parse(R"({"solvers": [
      {"name": "mf", "type": "static", "heuristic": "mf"},
      {"name": "rand1", "type": "rand"}]})"));
}

TEST(SolverSpecTest, ParsesTypesAndRejectsDuplicates) {
  const auto specs = TwoSolvers();
  ASSERT_EQ(specs.size(), 2u);
  EXPECT_EQ(specs[0].type, SolverType::kStatic);
  EXPECT_EQ(specs[1].type, SolverType::kRandom);
  EXPECT_EQ(specs[1].heuristics.size(), 6u);
  EXPECT_THROW(SolverSpecsFromJson(nlohmann::json::parse(
                   R"([{"name": "a", "type": "static", "heuristic": "p"},
                       {"name": "a", "type": "static", "heuristic": "pw"}])")),
               std::exception);
}

TEST(BenchmarkTest, TwoSolversThreeInstancesGiveSixRecords) {
  testing::TempDir dir;
  const auto paths = WriteInstances(dir, 3);
  BenchOptions options;
  options.seed = 1;
  options.records_path = dir.file("records.csv");
  const auto specs = TwoSolvers();
  const auto records = RunBenchmark(specs, paths, options);
  ASSERT_EQ(records.size(), 6u);
  for (const RunRecord& r : records) {
    EXPECT_EQ(r.status, RunStatus::kSolved);
    EXPECT_TRUE(r.has_objective);
  }
  const auto reread = ReadRecordsCsv(options.records_path);
  EXPECT_EQ(reread.size(), 6u);
  const CsvTable table = ReadCsvFile(options.records_path);
  EXPECT_EQ(table.header, (std::vector<std::string>{"solver", "instance", "status",
                                                    "seconds", "nodes", "objective"}));
}

TEST(BenchmarkTest, ResumeDoesNotRerunFinishedRecords) {
  testing::TempDir dir;
  const auto paths = WriteInstances(dir, 3);
  BenchOptions options;
  options.seed = 2;
  options.records_path = dir.file("records.csv");
  const auto specs = TwoSolvers();
  RunBenchmark(specs, paths, options);

  // Keep the header and two records, with a marker time nobody would measure.
  std::ifstream in(options.records_path);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  in.close();
  std::vector<std::string> f = CsvSplit(first);
  f[3] = "123.25";
  {
    std::ofstream out(options.records_path, std::ios::trunc);
    out << header << '\n' << CsvJoin(f) << '\n' << second << '\n';
  }
  const auto records = RunBenchmark(specs, paths, options);
  ASSERT_EQ(records.size(), 6u);
  int kept = 0;
  for (const RunRecord& r : records) kept += r.seconds == 123.25;
  EXPECT_EQ(kept, 1);
  EXPECT_EQ(ReadRecordsCsv(options.records_path).size(), 6u);
}

TEST(BenchmarkTest, UnreadableInstanceIsAnErrorRecord) {
  testing::TempDir dir;
  auto paths = WriteInstances(dir, 1);
  const std::string broken = dir.file("broken.mps");
  std::ofstream(broken) << "NAME X\nCOLUMNS\n";
  paths.push_back(broken);
  BenchOptions options;
  const auto specs = TwoSolvers();
  const auto records = RunBenchmark(specs, paths, options);
  ASSERT_EQ(records.size(), 4u);
  int errors = 0;
  for (const RunRecord& r : records) errors += r.status == RunStatus::kError;
  EXPECT_EQ(errors, 2);
}

TEST(BenchmarkTest, RandomSolverIsDeterministicForASeed) {
  const MipProblem p = GenerateSetCover(14, 24, 0.2, 6);
  const SolverSpec spec = TwoSolvers()[1];
  BenchOptions options;
  options.seed = 44;
  const RunRecord a = RunOne(spec, "sc", p, options);
  const RunRecord b = RunOne(spec, "sc", p, options);
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(RandomPolicyTest, SingletonSetEqualsStatic) {
  const MipProblem p = GenerateKnapsack(18, 3);
  RandomPolicy rand({Heuristic::kPseudocostProduct}, 3, 10, 7);
  StaticPolicy fixed(Heuristic::kPseudocostProduct);
  EXPECT_EQ(Solve(p, rand).nodes_explored, Solve(p, fixed).nodes_explored);
}

TEST(RandomPolicyTest, UniformFrequenciesAndReproducibleDraws) {
  MipProblem p;
  p.AddVariable("x", 0, 0, 1, VarKind::kBinary);
  const std::vector<double> lo = {0.0}, hi = {1.0};
  LpSolution lp;
  Node node;
  const NodeContext context{p, node, lo, hi, lp};
  RandomPolicy policy({kAllHeuristics.begin(), kAllHeuristics.end()}, 3, 10, 99);
  policy.BeginSolve(p);
  std::vector<int> counts(kNumHeuristics, 0);
  std::vector<Heuristic> sequence;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const Heuristic h = policy.Decide(context).heuristic;
    sequence.push_back(h);
    ++counts[HeuristicId(h)];
  }
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / draws, 1.0 / 6.0, 0.02);
  policy.BeginSolve(p);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(policy.Decide(context).heuristic, sequence[i]);

  node.depth = 4;
  node.parent_heuristic = Heuristic::kLeastFractional;
  const NodeContext inherit{p, node, lo, hi, lp};
  EXPECT_EQ(policy.Decide(inherit).heuristic, Heuristic::kLeastFractional);
}

TEST(MetricsTest, HandValues) {
  const double t = 1800.0;
  const std::vector<RunRecord> both = {Rec("a", "i1", RunStatus::kSolved, 10),
                                       Rec("a", "i2", RunStatus::kSolved, 20)};
  EXPECT_EQ(Par10(both, t), 15.0);
  EXPECT_EQ(Avg(both), 15.0);
  EXPECT_EQ(PercentSolved(both), 100.0);

  const std::vector<RunRecord> half = {Rec("a", "i1", RunStatus::kSolved, 10),
                                       Rec("a", "i2", RunStatus::kTimeout, 1800)};
  EXPECT_EQ(Par10(half, t), 9005.0);
  EXPECT_EQ(Avg(half), 10.0);
  EXPECT_EQ(PercentSolved(half), 50.0);

  const std::vector<RunRecord> none = {Rec("a", "i1", RunStatus::kTimeout, 1800),
                                       Rec("a", "i2", RunStatus::kNodeLimit, 3)};
  EXPECT_EQ(Par10(none, t), 18000.0);
  EXPECT_EQ(PercentSolved(none), 0.0);
  EXPECT_TRUE(std::isnan(Avg(none)));
}

TEST(MetricsTest, VirtualBestPicksFastestSolvedRun) {
  const std::vector<RunRecord> records = {
      Rec("A", "i1", RunStatus::kSolved, 5), Rec("B", "i1", RunStatus::kSolved, 9),
      Rec("A", "i2", RunStatus::kTimeout, 1800), Rec("B", "i2", RunStatus::kTimeout, 1800),
      Rec("A", "i3", RunStatus::kTimeout, 1800), Rec("B", "i3", RunStatus::kSolved, 70)};
  const auto vbs = VirtualBest(records, 1800);
  ASSERT_EQ(vbs.size(), 3u);
  EXPECT_EQ(vbs[0].seconds, 5.0);
  EXPECT_EQ(vbs[0].solver, "VBS");
  EXPECT_EQ(vbs[1].status, RunStatus::kTimeout);
  EXPECT_EQ(vbs[2].seconds, 70.0);
  const std::vector<std::string> only_a = {"A"};
  EXPECT_EQ(VirtualBest(records, 1800, "VBS", only_a)[2].status, RunStatus::kTimeout);
}

TEST(MetricsPropertyTest, DominanceAndPermutationInvariance) {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RunRecord> records;
    const int solvers = static_cast<int>(rng.NextInt(1, 5));
    const int instances = static_cast<int>(rng.NextInt(1, 8));
    const double timeout = 100.0;
    for (int s = 0; s < solvers; ++s) {
      for (int i = 0; i < instances; ++i) {
        const bool solved = rng.NextIndex(3) != 0;
        records.push_back(Rec("s" + std::to_string(s), "i" + std::to_string(i),
                              solved ? RunStatus::kSolved : RunStatus::kTimeout,
                              solved ? 100.0 * rng.NextDouble() : timeout));
      }
    }
    const auto vbs = VirtualBest(records, timeout);
    const double vbs_par10 = Par10(vbs, timeout);
    for (const std::string& name : SolverNames(records)) {
      const auto mine = RecordsFor(records, name);
      const double par10 = Par10(mine, timeout);
      EXPECT_LE(vbs_par10, par10 + 1e-9);
      const double avg = Avg(mine);
      if (!std::isnan(avg)) {
        EXPECT_GE(par10, avg - 1e-9);
        EXPECT_EQ(PercentSolved(mine) == 100.0, std::abs(par10 - avg) < 1e-9);
      }
      for (const RunRecord& r : mine) {
        for (const RunRecord& v : vbs) {
          if (v.instance == r.instance && r.solved()) EXPECT_LE(v.seconds, r.seconds);
        }
      }
    }
    std::vector<RunRecord> shuffled = records;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ReportOptions ro;
    ro.timeout_seconds = timeout;
    ro.vbs_all = true;
    auto a = MakeReport(records, ro);
    auto b = MakeReport(shuffled, ro);
    auto by_name = [](const ReportRow& x, const ReportRow& y) { return x.solver < y.solver; };
    std::sort(a.begin(), a.end(), by_name);
    std::sort(b.begin(), b.end(), by_name);
    ASSERT_EQ(a.size(), b.size());
    for (size_t k = 0; k < a.size(); ++k) {
      EXPECT_NEAR(a[k].par10, b[k].par10, 1e-9);
      EXPECT_EQ(a[k].percent_solved, b[k].percent_solved);
    }
  }
}

TEST(ReportTest, RowsMatchMetricsAndCsvRoundTrips) {
  const std::vector<RunRecord> records = {
      Rec("A", "i1", RunStatus::kSolved, 5), Rec("B", "i1", RunStatus::kSolved, 9),
      Rec("A", "i2", RunStatus::kTimeout, 1800), Rec("B", "i2", RunStatus::kSolved, 40)};
  ReportOptions ro;
  ro.vbs_members = {"A", "B"};
  ro.vbs_all = true;
  const auto rows = MakeReport(records, ro);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].solver, "A");
  EXPECT_EQ(rows[0].par10, Par10(RecordsFor(records, "A"), 1800));
  EXPECT_EQ(rows[0].avg, 5.0);
  EXPECT_EQ(rows[1].avg, rows[1].par10);
  EXPECT_EQ(rows[2].solver, "VBS");
  EXPECT_EQ(rows[2].par10, 22.5);
  EXPECT_EQ(rows[3].solver, "VBS_DASH");
  const auto back = ParseReportCsv(FormatReportCsv(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(back[k].solver, rows[k].solver);
    EXPECT_EQ(back[k].par10, rows[k].par10);
    EXPECT_EQ(back[k].avg, rows[k].avg);
    EXPECT_EQ(back[k].percent_solved, rows[k].percent_solved);
    EXPECT_EQ(back[k].runs, rows[k].runs);
  }
  const std::string text = FormatReportText(rows);
  EXPECT_NE(text.find("solved runs only"), std::string::npos);
}

TEST(RecordsCsvTest, RoundTripKeepsInfinitiesAndMissingObjectives) {
  testing::TempDir dir;
  RunRecord inf = Rec("a", "x,y", RunStatus::kSolved, 0.25);
  inf.objective = std::numeric_limits<double>::infinity();
  RunRecord none = Rec("a", "z", RunStatus::kNodeLimit, 2);
  WriteRecordsCsv(std::vector<RunRecord>{inf, none}, dir.file("r.csv"));
  const auto back = ReadRecordsCsv(dir.file("r.csv"));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].instance, "x,y");
  EXPECT_TRUE(std::isinf(back[0].objective));
  EXPECT_FALSE(back[1].has_objective);
  EXPECT_EQ(back[1].status, RunStatus::kNodeLimit);
}

TEST(PcaTest, AxisAlignedDataIsRecovered) {
  const std::vector<std::vector<double>> rows = {{3, 1}, {3, -1}, {-3, 1},
                                                 {-3, -1}, {5, 0}, {-5, 0}};
  const Projection p = PcaProject(rows);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(std::abs(p.coords[i][0]), std::abs(rows[i][0]), 1e-9);
    EXPECT_NEAR(std::abs(p.coords[i][1]), std::abs(rows[i][1]), 1e-9);
  }
  EXPECT_GE(p.variances[0], p.variances[1]);
  for (const auto& axis : p.axes) {
    const auto big = std::max_element(axis.begin(), axis.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    EXPECT_GT(*big, 0.0);
  }
}

TEST(PcaTest, RankOneDataHasFlatSecondCoordinate) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 20; ++i) rows.push_back({1.0 * i, 2.0 * i, -0.5 * i});
  const Projection p = PcaProject(rows);
  for (const auto& c : p.coords) EXPECT_LT(std::abs(c[1]), 1e-9);
}

TEST(PcaTest, PlantedPlaneIn40Dimensions) {
  SplitMix64 rng(6);
  std::vector<double> u(40), v(40);
  for (int d = 0; d < 40; ++d) {
    u[d] = rng.NextGaussian();
    v[d] = rng.NextGaussian();
  }
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 300; ++i) {
    const double a = 5.0 * rng.NextGaussian(), b = 3.0 * rng.NextGaussian();
    std::vector<double> x(40);
    for (int d = 0; d < 40; ++d) x[d] = a * u[d] + b * v[d] + 0.05 * rng.NextGaussian();
    rows.push_back(std::move(x));
  }
  const Projection p = PcaProject(rows);
  std::vector<double> mean(40, 0.0);
  for (const auto& x : rows) {
    for (int d = 0; d < 40; ++d) mean[d] += x[d] / rows.size();
  }
  double total = 0.0, residual = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int d = 0; d < 40; ++d) {
      const double centered = rows[i][d] - mean[d];
      const double rebuilt = p.coords[i][0] * p.axes[0][d] + p.coords[i][1] * p.axes[1][d];
      total += centered * centered;
      residual += (centered - rebuilt) * (centered - rebuilt);
    }
  }
  EXPECT_LT(residual, 0.05 * total);
}

TEST(PcaTest, ProjectsFeatureCsvWithProvenance) {
  testing::TempDir dir;
  {
    std::ofstream out(dir.file("f.csv"));
    out << "instance,heuristic,depth";
    for (int d = 0; d < 3; ++d) out << ",f" << d;
    out << "\n";
    for (int i = 0; i < 6; ++i) {
      out << "i" << i << ",mf," << i % 3 << "," << i << "," << 2 * i << "," << (i % 2)
          << "\n";
    }
  }
  ProjectFeaturesCsv(dir.file("f.csv"), dir.file("c.csv"));
  const CsvTable t = ReadCsvFile(dir.file("c.csv"));
  EXPECT_EQ(t.header, (std::vector<std::string>{"instance", "heuristic", "depth", "pc1",
                                                "pc2"}));
  EXPECT_EQ(t.rows.size(), 6u);
  EXPECT_EQ(t.rows[3][0], "i3");
}

}  // namespace
}  // namespace dash
