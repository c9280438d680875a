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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iterator>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "dash/bench.h"
#include "dash/branch_and_bound.h"
#include "dash/clustering.h"
#include "dash/dash_policy.h"
#include "dash/features.h"
#include "dash/generators.h"
#include "dash/heuristics.h"
#include "dash/lp_solver.h"
#include "dash/mps.h"
#include "dash/trainer.h"

namespace py = pybind11;

namespace dash {
namespace {

std::string KindName(VarKind k) {
  switch (k) {
    case VarKind::kContinuous: return "continuous";
    case VarKind::kInteger: return "integer";
    case VarKind::kBinary: return "binary";
  }
  return "?";
}

BoundOverrides ToOverrides(const std::vector<std::tuple<int, double, double>>& in) {
  BoundOverrides out;
  for (const auto& [var, lo, hi] : in) out.push_back({var, lo, hi});
  return out;
}

Heuristic HeuristicArg(const std::string& name) {
  const auto h = ParseHeuristic(name);
  if (!h) throw py::value_error("unknown heuristic '" + name + "'");
  return *h;
}

py::dict SolveToDict(const SolveResult& r) {
  py::dict d;
  d["status"] = ToString(r.status);
  d["objective"] = r.has_incumbent ? py::cast(r.objective) : py::none();
  d["incumbent"] = r.incumbent;
  d["nodes"] = r.nodes_explored;
  d["seconds"] = r.seconds;
  py::list log;
  for (const SwitchLogEntry& s : r.switch_log) {
    py::dict e;
    e["node"] = s.node_id;
    e["depth"] = s.depth;
    e["parent_heuristic"] = std::string(HeuristicName(s.parent_heuristic));
    e["heuristic"] = std::string(HeuristicName(s.heuristic));
    e["cluster"] = s.cluster;
    e["computed_features"] = s.computed_features;
    log.append(e);
  }
  d["switch_log"] = log;
  return d;
}

py::dict PySolve(const MipProblem& problem, const std::string& heuristic,
               const std::string& model_json, int64_t node_limit, double time_limit) {
  std::unique_ptr<BranchingPolicy> policy;
  if (!model_json.empty()) {
    policy = std::make_unique<DashPolicy>(std::make_shared<const DashModel>(
        ModelFromJson(nlohmann::json::parse(model_json))));
  } else {
    policy = std::make_unique<StaticPolicy>(HeuristicArg(heuristic));
  }
  SolveOptions options;
  options.limits.node_limit = node_limit;
  options.limits.time_limit_seconds = time_limit;
  SolveResult r;
  {
    py::gil_scoped_release release;
    r = dash::Solve(problem, *policy, options);
  }
  return SolveToDict(r);
}

std::string PyTrain(const std::vector<std::string>& paths, const std::string& config_json) {
  const TrainingConfig config = config_json.empty()
                                    ? TrainingConfig{}
                                    : ConfigFromJson(nlohmann::json::parse(config_json));
  std::vector<TrainingInstance> instances;
  for (const std::string& p : paths) instances.push_back({InstanceName(p), ReadMpsFile(p)});
  py::gil_scoped_release release;
  const TrainingResult r = dash::Train(instances, config);
  return ModelToJson(r.model).dump();
}

RunRecord RecordFromDict(const py::dict& d) {
  RunRecord r;
  r.solver = d.contains("solver") ? d["solver"].cast<std::string>() : "";
  r.instance = d.contains("instance") ? d["instance"].cast<std::string>() : "";
  const auto status = ParseRunStatus(d["status"].cast<std::string>());
  if (!status) throw py::value_error("unknown status");
  r.status = *status;
  r.seconds = d["seconds"].cast<double>();
  if (d.contains("nodes")) r.nodes = d["nodes"].cast<int64_t>();
  return r;
}

std::vector<RunRecord> Records(const py::list& list) {
  std::vector<RunRecord> out;
  for (const auto& item : list) out.push_back(RecordFromDict(item.cast<py::dict>()));
  return out;
}

}  // namespace
}  // namespace dash

PYBIND11_MODULE(_dashmip, m) {
  using namespace dash;
  m.doc() = "Branch and bound with adaptive heuristic switching";

  py::register_exception<MpsError>(m, "MpsError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);

  py::class_<MipProblem>(m, "MipProblem")
      .def_readonly("name", &MipProblem::name)
      .def_property_readonly("num_vars", &MipProblem::num_vars)
      .def_property_readonly("num_rows", &MipProblem::num_rows)
      .def_property_readonly("maximize",
                             [](const MipProblem& p) { return p.sense == ObjSense::kMaximize; })
      .def_readonly("var_names", &MipProblem::var_names)
      .def_readonly("objective", &MipProblem::objective)
      .def_readonly("lower", &MipProblem::lower)
      .def_readonly("upper", &MipProblem::upper)
      .def_property_readonly("kinds",
                             [](const MipProblem& p) {
                               std::vector<std::string> out;
                               for (VarKind k : p.kinds) out.push_back(KindName(k));
                               return out;
                             })
      .def("__repr__", [](const MipProblem& p) {
        return "<MipProblem " + p.name + ": " + std::to_string(p.num_vars()) + " vars, " +
               std::to_string(p.num_rows()) + " rows>";
      });

  m.def("parse_mps", [](const std::string& text) { return ParseMps(text); }, py::arg("text"));
  m.def("read_mps", &ReadMpsFile, py::arg("path"));
  m.def("write_mps", &WriteMps, py::arg("problem"));
  m.def("validate", &Validate, py::arg("problem"));
  m.def(
      "generate",
      [](const std::string& family, uint64_t seed) {
        auto p = GenerateFamily(family, seed);
        if (!p) throw py::value_error("unknown family '" + family + "'");
        return *p;
      },
      py::arg("family"), py::arg("seed"));
  m.attr("families") = std::vector<std::string>(std::begin(kFamilyNames), std::end(kFamilyNames));
  m.attr("heuristics") = [] {
    std::vector<std::string> names;
    for (Heuristic h : kAllHeuristics) names.emplace_back(HeuristicName(h));
    return names;
  }();

  m.def(
      "solve_lp",
      [](const MipProblem& p, const std::vector<std::tuple<int, double, double>>& overrides) {
        const LpSolution s = SolveLp(p, ToOverrides(overrides));
        py::dict d;
        d["status"] = ToString(s.status);
        d["objective"] = s.objective;
        d["values"] = s.values;
        return d;
      },
      py::arg("problem"), py::arg("overrides") = std::vector<std::tuple<int, double, double>>{});
  m.def("_solve", &PySolve, py::arg("problem"), py::arg("heuristic") = "mf",
        py::arg("model_json") = "", py::arg("node_limit") = 0, py::arg("time_limit") = 0.0);

  m.def("score_weighted", &ScoreWeighted, py::arg("down"), py::arg("up"));
  m.def("score_product", &ScoreProduct, py::arg("down"), py::arg("up"));

  m.def(
      "compute_features",
      [](const MipProblem& p, const std::vector<std::tuple<int, double, double>>& overrides,
         int depth) {
        const FeatureVector f = ComputeFeatures(p, ToOverrides(overrides), depth);
        return std::vector<double>(f.begin(), f.end());
      },
      py::arg("problem"), py::arg("overrides") = std::vector<std::tuple<int, double, double>>{},
      py::arg("depth") = 0);
  m.def("feature_names", [] {
    std::vector<std::string> names;
    for (int i = 0; i < kNumFeatures; ++i) names.push_back(FeatureColumnName(i));
    return names;
  });

  m.def(
      "kmeans",
      [](const std::vector<Point>& points, int k, uint64_t seed) {
        const KMeansResult r = KMeans(points, k, seed);
        return py::make_tuple(r.centers, r.assignment);
      },
      py::arg("points"), py::arg("k"), py::arg("seed") = 0);
  m.def(
      "gmeans",
      [](const std::vector<Point>& points, int min_cluster_size, uint64_t seed,
         int max_clusters, double critical_value) {
        GMeansOptions o;
        o.min_cluster_size = min_cluster_size;
        o.seed = seed;
        o.max_clusters = max_clusters;
        o.critical_value = critical_value;
        return GMeans(points, o).centers;
      },
      py::arg("points"), py::arg("min_cluster_size") = 5, py::arg("seed") = 0,
      py::arg("max_clusters") = 64, py::arg("critical_value") = 1.8692);
  m.def("nearest_center",
        [](const std::vector<double>& x, const std::vector<Point>& centers) {
          return NearestCenter(x, centers);
        },
        py::arg("x"), py::arg("centers"));
  m.def("anderson_darling",
        [](const std::vector<double>& samples) { return AndersonDarlingStatistic(samples); },
        py::arg("samples"));

  m.def("information_gain",
        [](const std::vector<double>& column, const std::vector<int>& labels, int bins) {
          return InformationGain(column, labels, bins);
        },
        py::arg("column"), py::arg("labels"), py::arg("bins") = 10);
  m.def("_train", &PyTrain, py::arg("paths"), py::arg("config_json") = "");
  m.def("_default_config", [] { return ConfigToJson(TrainingConfig{}).dump(); });
  m.def("_load_model", [](const std::string& path) { return ModelToJson(LoadModel(path)).dump(); },
        py::arg("path"));

  m.def("par10", [](const py::list& r, double timeout) { return Par10(Records(r), timeout); },
        py::arg("records"), py::arg("timeout") = 1800.0);
  m.def("avg", [](const py::list& r) { return Avg(Records(r)); }, py::arg("records"));
  m.def("pct_solved", [](const py::list& r) { return PercentSolved(Records(r)); },
        py::arg("records"));
  m.def(
      "pca_project",
      [](const std::vector<std::vector<double>>& rows) {
        const Projection p = PcaProject(rows);
        std::vector<std::vector<double>> coords;
        for (const auto& c : p.coords) coords.push_back({c[0], c[1]});
        return py::make_tuple(coords, p.axes, p.variances);
      },
      py::arg("rows"));
}
