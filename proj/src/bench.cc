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
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "dash/csv.h"
#include "dash/mps.h"
#include "dash/parallel.h"

namespace dash {

using nlohmann::json;

std::string ToString(RunStatus status) {
  switch (status) {
    case RunStatus::kSolved:
      return "solved";
    case RunStatus::kTimeout:
      return "timeout";
    case RunStatus::kNodeLimit:
      return "nodelimit";
    case RunStatus::kError:
      return "error";
  }
  return "?";
}

std::optional<RunStatus> ParseRunStatus(std::string_view text) {
  for (RunStatus s : {RunStatus::kSolved, RunStatus::kTimeout, RunStatus::kNodeLimit,
                      RunStatus::kError}) {
    if (text == ToString(s)) return s;
  }
  return std::nullopt;
}

RunStatus ToRunStatus(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
    case SolveStatus::kInfeasible:
    case SolveStatus::kUnbounded:
      return RunStatus::kSolved;
    case SolveStatus::kNodeLimit:
      return RunStatus::kNodeLimit;
    case SolveStatus::kTimeLimit:
      return RunStatus::kTimeout;
  }
  return RunStatus::kError;
}

RandomPolicy::RandomPolicy(std::vector<Heuristic> heuristics, int interval,
                           int max_depth, uint64_t seed)
    : heuristics_(std::move(heuristics)),
      interval_(interval),
      max_depth_(max_depth),
      seed_(seed),
      rng_(seed) {
  DASH_CHECK(!heuristics_.empty(), "random policy needs heuristics");
  DASH_CHECK(interval_ >= 1 && max_depth_ >= 1, "interval and max_depth must be >= 1");
}

void RandomPolicy::BeginSolve(const MipProblem&) { rng_ = SplitMix64(seed_); }

PolicyDecision RandomPolicy::Decide(const NodeContext& context) {
  const Node& node = context.node;
  if (!IsDecisionDepth(node.depth, max_depth_, interval_)) {
    return {node.parent_heuristic, -1, false};
  }
  return {heuristics_[rng_.NextIndex(heuristics_.size())], -1, false};
}

namespace {

Heuristic HeuristicField(const json& v) {
  std::optional<Heuristic> h;
  if (v.is_number_integer()) h = ParseHeuristic(std::to_string(v.get<int>()));
  if (v.is_string()) h = ParseHeuristic(v.get<std::string>());
  if (!h) throw std::invalid_argument("unknown heuristic " + v.dump());
  return *h;
}

}  // namespace

std::vector<SolverSpec> SolverSpecsFromJson(const json& j, const std::string& base_dir) {
  const json& list = j.is_object() && j.contains("solvers") ? j.at("solvers") : j;
  if (!list.is_array()) throw std::invalid_argument("solver list must be an array");
  std::vector<SolverSpec> specs;
  std::set<std::string> names;
  try {
    for (const json& e : list) {
      SolverSpec s;
      const std::string type = e.value("type", "static");
      if (type == "static") {
        s.type = SolverType::kStatic;
        s.heuristic = HeuristicField(e.at("heuristic"));
        s.name = e.value("name", std::string(HeuristicName(s.heuristic)));
      } else if (type == "rand" || type == "random") {
        s.type = SolverType::kRandom;
        if (e.contains("heuristics")) {
          for (const json& h : e.at("heuristics")) s.heuristics.push_back(HeuristicField(h));
        } else {
          s.heuristics.assign(kAllHeuristics.begin(), kAllHeuristics.end());
        }
        if (s.heuristics.empty()) throw std::invalid_argument("empty heuristic set");
        s.interval = e.value("interval", 3);
        s.max_depth = e.value("max_depth", 10);
        if (s.interval < 1 || s.max_depth < 1) {
          throw std::invalid_argument("interval and max_depth must be >= 1");
        }
        s.name = e.value("name", std::string("RAND"));
      } else if (type == "model" || type == "dash" || type == "dash_plus" ||
                 type == "isac") {
        s.type = SolverType::kModel;
        s.model_path = e.at("model").get<std::string>();
        std::filesystem::path p(s.model_path);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        s.model = std::make_shared<const DashModel>(LoadModel(p.string()));
        s.name = e.value("name", InstanceName(s.model_path));
      } else {
        throw std::invalid_argument("unknown solver type '" + type + "'");
      }
      if (s.name.empty()) throw std::invalid_argument("empty solver name");
      if (!names.insert(s.name).second) {
        throw std::invalid_argument("duplicate solver name '" + s.name + "'");
      }
      specs.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed solver spec: ") + e.what());
  } catch (const ModelError& e) {
    throw std::invalid_argument(e.what());
  }
  return specs;
}

std::vector<SolverSpec> LoadSolverSpecs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("cannot parse " + path + ": " + e.what());
  }
  return SolverSpecsFromJson(j, std::filesystem::path(path).parent_path().string());
}

std::unique_ptr<BranchingPolicy> MakePolicy(const SolverSpec& spec, uint64_t run_seed) {
  switch (spec.type) {
    case SolverType::kStatic:
      return std::make_unique<StaticPolicy>(spec.heuristic);
    case SolverType::kRandom:
      return std::make_unique<RandomPolicy>(spec.heuristics, spec.interval,
                                            spec.max_depth, run_seed);
    case SolverType::kModel:
      DASH_CHECK(spec.model != nullptr, "solver " + spec.name + " has no model");
      return std::make_unique<DashPolicy>(spec.model);
  }
  return nullptr;
}

uint64_t RunSeed(uint64_t seed, std::string_view solver, std::string_view instance) {
  std::string key(solver);
  key += '\n';
  key += instance;
  return MixSeed(seed, HashString(key));
}

namespace {

RunRecord ErrorRecord(const std::string& solver, const std::string& instance) {
  RunRecord r;
  r.solver = solver;
  r.instance = instance;
  r.status = RunStatus::kError;
  return r;
}

}  // namespace

RunRecord RunOne(const SolverSpec& spec, const std::string& instance,
                 const MipProblem& problem, const BenchOptions& options) {
  RunRecord record = ErrorRecord(spec.name, instance);
  try {
    std::unique_ptr<BranchingPolicy> policy =
        MakePolicy(spec, RunSeed(options.seed, spec.name, instance));
    SolveOptions solve_options;
    solve_options.limits.node_limit = options.node_limit;
    solve_options.limits.time_limit_seconds = options.timeout_seconds;
    const SolveResult result = Solve(problem, *policy, solve_options);
    record.status = ToRunStatus(result.status);
    record.seconds = result.seconds;
    record.nodes = result.nodes_explored;
    const double inf = std::numeric_limits<double>::infinity();
    const bool minimize = problem.sense == ObjSense::kMinimize;
    if (result.status == SolveStatus::kInfeasible) {
      record.has_objective = true;
      record.objective = minimize ? inf : -inf;
    } else if (result.status == SolveStatus::kUnbounded) {
      record.has_objective = true;
      record.objective = minimize ? -inf : inf;
    } else if (result.has_incumbent) {
      record.has_objective = true;
      record.objective = result.objective;
    }
  } catch (const std::exception&) {
    record.status = RunStatus::kError;
  }
  return record;
}

std::vector<RunRecord> RunBenchmark(std::span<const SolverSpec> solvers,
                                    std::span<const std::string> instance_paths,
                                    const BenchOptions& options) {
  const int ns = static_cast<int>(solvers.size());
  const int ni = static_cast<int>(instance_paths.size());
  std::vector<std::string> names(ni);
  for (int i = 0; i < ni; ++i) names[i] = InstanceName(instance_paths[i]);

  std::map<std::pair<std::string, std::string>, RunRecord> done;
  const bool resume = !options.records_path.empty() &&
                      std::filesystem::exists(options.records_path) &&
                      std::filesystem::file_size(options.records_path) > 0;
  if (resume) {
    for (RunRecord& r : ReadRecordsCsv(options.records_path)) {
      done[{r.solver, r.instance}] = std::move(r);
    }
  }
  std::ofstream sink;
  if (!options.records_path.empty()) {
    sink.open(options.records_path, std::ios::app);
    if (!sink) throw std::runtime_error("cannot write " + options.records_path);
    if (!resume) sink << RecordCsvHeader() << '\n' << std::flush;
  }

  std::vector<int> pending;
  std::vector<char> needed(ni, 0);
  for (int s = 0; s < ns; ++s) {
    for (int i = 0; i < ni; ++i) {
      if (!done.count({solvers[s].name, names[i]})) {
        pending.push_back(s * ni + i);
        needed[i] = 1;
      }
    }
  }
  std::vector<std::optional<MipProblem>> problems(ni);
  ParallelFor(ni, options.threads, [&](int i) {
    if (!needed[i]) return;
    try {
      problems[i] = ReadMpsFile(instance_paths[i]);
      if (!Validate(*problems[i]).empty()) problems[i].reset();
    } catch (const std::exception&) {
      problems[i].reset();
    }
  });

  std::vector<RunRecord> fresh(pending.size());
  std::mutex sink_mutex;
  ParallelFor(static_cast<int>(pending.size()), options.threads, [&](int k) {
    const int s = pending[k] / ni;
    const int i = pending[k] % ni;
    fresh[k] = problems[i] ? RunOne(solvers[s], names[i], *problems[i], options)
                           : ErrorRecord(solvers[s].name, names[i]);
    if (sink.is_open()) {
      std::lock_guard<std::mutex> lock(sink_mutex);
      sink << RecordCsvLine(fresh[k]) << '\n' << std::flush;
    }
  });
  for (RunRecord& r : fresh) done[{r.solver, r.instance}] = std::move(r);

  std::vector<RunRecord> out;
  out.reserve(static_cast<size_t>(ns) * ni);
  for (int s = 0; s < ns; ++s) {
    for (int i = 0; i < ni; ++i) out.push_back(done.at({solvers[s].name, names[i]}));
  }
  return out;
}

std::string RecordCsvHeader() {
  std::vector<std::string> cols(kRecordColumns.begin(), kRecordColumns.end());
  return CsvJoin(cols);
}

std::string RecordCsvLine(const RunRecord& r) {
  return CsvJoin({r.solver, r.instance, ToString(r.status), FormatDouble(r.seconds),
                  std::to_string(r.nodes),
                  r.has_objective ? FormatDouble(r.objective) : ""});
}

void WriteRecordsCsv(std::span<const RunRecord> records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << RecordCsvHeader() << '\n';
  for (const RunRecord& r : records) out << RecordCsvLine(r) << '\n';
}

namespace {

double ParseDouble(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("bad " + what + " '" + text + "'");
  }
  return v;
}

}  // namespace

std::vector<RunRecord> ReadRecordsCsv(const std::string& path) {
  const CsvTable table = ReadCsvFile(path);
  std::vector<int> col;
  for (std::string_view name : kRecordColumns) {
    const int c = table.Column(name);
    if (c < 0) {
      throw std::runtime_error(path + ": missing column '" + std::string(name) + "'");
    }
    col.push_back(c);
  }
  std::vector<RunRecord> records;
  for (const auto& row : table.rows) {
    RunRecord r;
    r.solver = row[col[0]];
    r.instance = row[col[1]];
    auto status = ParseRunStatus(row[col[2]]);
    if (!status) throw std::runtime_error(path + ": bad status '" + row[col[2]] + "'");
    r.status = *status;
    r.seconds = ParseDouble(row[col[3]], "seconds");
    r.nodes = static_cast<int64_t>(ParseDouble(row[col[4]], "nodes"));
    if (!row[col[5]].empty()) {
      r.has_objective = true;
      r.objective = ParseDouble(row[col[5]], "objective");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RunRecord> RecordsFor(std::span<const RunRecord> records,
                                  std::string_view solver) {
  std::vector<RunRecord> out;
  for (const RunRecord& r : records) {
    if (r.solver == solver) out.push_back(r);
  }
  return out;
}

std::vector<std::string> SolverNames(std::span<const RunRecord> records) {
  std::vector<std::string> names;
  for (const RunRecord& r : records) {
    if (std::find(names.begin(), names.end(), r.solver) == names.end()) {
      names.push_back(r.solver);
    }
  }
  return names;
}

double Par10(std::span<const RunRecord> records, double timeout_seconds) {
  DASH_CHECK(!records.empty(), "Par10 of no records");
  double total = 0.0;
  for (const RunRecord& r : records) {
    total += r.solved() ? r.seconds : 10.0 * timeout_seconds;
  }
  return total / static_cast<double>(records.size());
}

double Avg(std::span<const RunRecord> records) {
  double total = 0.0;
  int solved = 0;
  for (const RunRecord& r : records) {
    if (!r.solved()) continue;
    total += r.seconds;
    ++solved;
  }
  return solved == 0 ? std::numeric_limits<double>::quiet_NaN() : total / solved;
}

double PercentSolved(std::span<const RunRecord> records) {
  DASH_CHECK(!records.empty(), "PercentSolved of no records");
  const auto solved = std::count_if(records.begin(), records.end(),
                                    [](const RunRecord& r) { return r.solved(); });
  return 100.0 * static_cast<double>(solved) / static_cast<double>(records.size());
}

int64_t PenalizedNodeTotal(std::span<const RunRecord> records, int64_t node_limit) {
  int64_t total = 0;
  for (const RunRecord& r : records) total += r.solved() ? r.nodes : 10 * node_limit;
  return total;
}

std::vector<RunRecord> VirtualBest(std::span<const RunRecord> records,
                                   double timeout_seconds, const std::string& name,
                                   std::span<const std::string> members) {
  std::vector<std::string> instances;
  std::map<std::string, const RunRecord*> best;
  for (const RunRecord& r : records) {
    if (!members.empty() &&
        std::find(members.begin(), members.end(), r.solver) == members.end()) {
      continue;
    }
    if (!best.count(r.instance)) {
      instances.push_back(r.instance);
      best[r.instance] = nullptr;
    }
    const RunRecord*& b = best[r.instance];
    if (r.solved() && (b == nullptr || r.seconds < b->seconds)) b = &r;
  }
  std::vector<RunRecord> out;
  for (const std::string& inst : instances) {
    const RunRecord* b = best[inst];
    RunRecord v;
    if (b != nullptr) {
      v = *b;
    } else {
      v.instance = inst;
      v.status = RunStatus::kTimeout;
      v.seconds = timeout_seconds;
    }
    v.solver = name;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<ReportRow> MakeReport(std::span<const RunRecord> records,
                                  const ReportOptions& options) {
  auto row = [&](const std::string& name, std::span<const RunRecord> rs) {
    ReportRow out;
    out.solver = name;
    out.avg = Avg(rs);
    out.par10 = Par10(rs, options.timeout_seconds);
    out.percent_solved = PercentSolved(rs);
    out.runs = static_cast<int>(rs.size());
    return out;
  };
  std::vector<ReportRow> rows;
  for (const std::string& name : SolverNames(records)) {
    rows.push_back(row(name, RecordsFor(records, name)));
  }
  if (!options.vbs_members.empty()) {
    rows.push_back(row("VBS", VirtualBest(records, options.timeout_seconds, "VBS",
                                          options.vbs_members)));
  }
  if (options.vbs_all && !records.empty()) {
    rows.push_back(
        row("VBS_DASH", VirtualBest(records, options.timeout_seconds, "VBS_DASH")));
  }
  return rows;
}

std::string FormatReportText(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << "# Avg: mean seconds over solved runs only. Par10: unsolved runs count "
         "10 x timeout.\n";
  size_t width = 6;
  for (const ReportRow& r : rows) width = std::max(width, r.solver.size());
  out << std::left << std::setw(static_cast<int>(width) + 2) << "Solver" << std::right
      << std::setw(12) << "Avg" << std::setw(12) << "Par10" << std::setw(10)
      << "%Solved" << '\n';
  out << std::fixed << std::setprecision(2);
  for (const ReportRow& r : rows) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.solver
        << std::right << std::setw(12);
    if (std::isnan(r.avg)) {
      out << "-";
    } else {
      out << r.avg;
    }
    out << std::setw(12) << r.par10 << std::setw(10) << r.percent_solved << '\n';
  }
  return out.str();
}

std::string FormatReportCsv(std::span<const ReportRow> rows) {
  std::string out = "solver,avg,par10,pct_solved,runs\n";
  for (const ReportRow& r : rows) {
    out += CsvJoin({r.solver, FormatDouble(r.avg), FormatDouble(r.par10),
                    FormatDouble(r.percent_solved), std::to_string(r.runs)});
    out += '\n';
  }
  return out;
}

std::vector<ReportRow> ParseReportCsv(const std::string& text) {
  std::istringstream in(text);
  const CsvTable table = ReadCsv(in);
  const int cs = table.Column("solver"), ca = table.Column("avg"),
            cp = table.Column("par10"), cv = table.Column("pct_solved"),
            cr = table.Column("runs");
  if (cs < 0 || ca < 0 || cp < 0 || cv < 0 || cr < 0) {
    throw std::runtime_error("report CSV lacks a required column");
  }
  std::vector<ReportRow> rows;
  for (const auto& f : table.rows) {
    ReportRow r;
    r.solver = f[cs];
    r.avg = ParseDouble(f[ca], "avg");
    r.par10 = ParseDouble(f[cp], "par10");
    r.percent_solved = ParseDouble(f[cv], "pct_solved");
    r.runs = static_cast<int>(ParseDouble(f[cr], "runs"));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> StaticSolverNames(std::span<const RunRecord> records) {
  std::vector<std::string> out;
  for (const std::string& name : SolverNames(records)) {
    for (Heuristic h : kAllHeuristics) {
      if (name == HeuristicName(h)) out.push_back(name);
    }
  }
  return out;
}

Projection PcaProject(const std::vector<std::vector<double>>& rows) {
  Projection proj;
  if (rows.empty()) return proj;
  const int n = static_cast<int>(rows.size());
  const int dim = static_cast<int>(rows.front().size());
  DASH_CHECK(dim >= 1, "PCA needs at least one column");
  Eigen::MatrixXd x(n, dim);
  for (int i = 0; i < n; ++i) {
    DASH_CHECK(static_cast<int>(rows[i].size()) == dim, "ragged PCA input");
    for (int d = 0; d < dim; ++d) x(i, d) = rows[i][d];
  }
  x.rowwise() -= x.colwise().mean();
  const Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const int keep = std::min(2, dim);
  Eigen::MatrixXd axes(dim, 2);
  axes.setZero();
  for (int k = 0; k < keep; ++k) {
    Eigen::VectorXd v = eig.eigenvectors().col(dim - 1 - k);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    axes.col(k) = v;
    proj.axes.emplace_back(v.data(), v.data() + dim);
    proj.variances.push_back(std::max(0.0, eig.eigenvalues()(dim - 1 - k)));
  }
  const Eigen::MatrixXd coords = x * axes;
  proj.coords.resize(n);
  for (int i = 0; i < n; ++i) proj.coords[i] = {coords(i, 0), coords(i, 1)};
  return proj;
}

namespace {

bool IsFeatureColumn(const std::string& name) {
  return name.size() >= 2 && name[0] == 'f' &&
         std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

void ProjectFeaturesCsv(const std::string& in_path, const std::string& out_path) {
  const CsvTable table = ReadCsvFile(in_path);
  std::vector<int> features, provenance;
  for (int c = 0; c < static_cast<int>(table.header.size()); ++c) {
    (IsFeatureColumn(table.header[c]) ? features : provenance).push_back(c);
  }
  if (features.empty()) throw std::runtime_error(in_path + ": no f<k> feature columns");
  std::vector<std::vector<double>> rows;
  for (const auto& r : table.rows) {
    std::vector<double> v;
    for (int c : features) v.push_back(ParseDouble(r[c], table.header[c]));
    rows.push_back(std::move(v));
  }
  const Projection proj = PcaProject(rows);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  std::vector<std::string> header;
  for (int c : provenance) header.push_back(table.header[c]);
  header.push_back("pc1");
  header.push_back("pc2");
  out << CsvJoin(header) << '\n';
  for (size_t i = 0; i < table.rows.size(); ++i) {
    std::vector<std::string> fields;
    for (int c : provenance) fields.push_back(table.rows[i][c]);
    fields.push_back(FormatDouble(proj.coords[i][0]));
    fields.push_back(FormatDouble(proj.coords[i][1]));
    out << CsvJoin(fields) << '\n';
  }
}

}  // namespace dash
