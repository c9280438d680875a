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

#include "dash/generators.h"

#include <algorithm>
#include <functional>
#include <cmath>

#include "dash/random.h"

namespace dash {

MipProblem GenerateKnapsack(int items, uint64_t seed) {
  SplitMix64 rng(seed);
  MipProblem p;
  p.name = "knapsack_" + std::to_string(items) + "_" + std::to_string(seed);
  p.sense = ObjSense::kMaximize;
  std::vector<std::pair<int, double>> row;
  double total = 0.0;
  for (int j = 0; j < items; ++j) {
    const double w = static_cast<double>(rng.NextInt(10, 100));
    const double v = std::max(1.0, w + static_cast<double>(rng.NextInt(-10, 10)));
    p.AddVariable("x" + std::to_string(j), v, 0.0, 1.0, VarKind::kBinary);
    row.emplace_back(j, w);
    total += w;
  }
  p.AddRow("cap", std::move(row), RowSense::kLe, std::floor(total / 2.0));
  return p;
}

MipProblem GenerateIntegerKnapsack(int vars, int rows, uint64_t seed) {
  SplitMix64 rng(seed);
  MipProblem p;
  p.name = "intknap_" + std::to_string(vars) + "x" + std::to_string(rows) + "_" +
           std::to_string(seed);
  p.sense = ObjSense::kMaximize;
  for (int j = 0; j < vars; ++j) {
    p.AddVariable("x" + std::to_string(j),
                  static_cast<double>(rng.NextInt(5, 40)), 0.0, 3.0,
                  VarKind::kInteger);
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, double>> row;
    double total = 0.0;
    for (int j = 0; j < vars; ++j) {
      const double a = static_cast<double>(rng.NextInt(1, 30));
      row.emplace_back(j, a);
      total += 3.0 * a;
    }
    p.AddRow("r" + std::to_string(i), std::move(row), RowSense::kLe,
             std::floor(total * 0.35));
  }
  return p;
}

MipProblem GenerateSetCover(int rows, int columns, double density, uint64_t seed) {
  SplitMix64 rng(seed);
  MipProblem p;
  p.name = "setcover_" + std::to_string(rows) + "x" + std::to_string(columns) +
           "_" + std::to_string(seed);
  p.sense = ObjSense::kMinimize;
  for (int j = 0; j < columns; ++j) {
    p.AddVariable("y" + std::to_string(j),
                  static_cast<double>(rng.NextInt(1, 20)), 0.0, 1.0,
                  VarKind::kBinary);
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, double>> row;
    for (int j = 0; j < columns; ++j) {
      if (rng.NextDouble() < density) row.emplace_back(j, 1.0);
    }
    while (row.size() < 2) {
      const int j = static_cast<int>(rng.NextIndex(columns));
      if (std::none_of(row.begin(), row.end(),
                       [j](const auto& e) { return e.first == j; })) {
        row.emplace_back(j, 1.0);
      }
    }
    std::sort(row.begin(), row.end());
    p.AddRow("cover" + std::to_string(i), std::move(row), RowSense::kGe, 1.0);
  }
  return p;
}

MipProblem GenerateLotSizing(int periods, uint64_t seed) {
  SplitMix64 rng(seed);
  MipProblem p;
  p.name = "lotsizing_" + std::to_string(periods) + "_" + std::to_string(seed);
  p.sense = ObjSense::kMinimize;
  std::vector<int> produce(periods), stock(periods), setup(periods);
  std::vector<double> capacity(periods), demand(periods);
  for (int t = 0; t < periods; ++t) {
    capacity[t] = static_cast<double>(rng.NextInt(80, 150));
    demand[t] = static_cast<double>(rng.NextInt(20, 80));
    const std::string s = std::to_string(t);
    produce[t] = p.AddVariable("x" + s, static_cast<double>(rng.NextInt(1, 5)),
                               0.0, capacity[t], VarKind::kContinuous);
    stock[t] = p.AddVariable("s" + s, static_cast<double>(rng.NextInt(1, 3)), 0.0,
                             kInfinity, VarKind::kContinuous);
    setup[t] = p.AddVariable("y" + s, static_cast<double>(rng.NextInt(100, 300)),
                             0.0, 1.0, VarKind::kBinary);
  }
  for (int t = 0; t < periods; ++t) {
    std::vector<std::pair<int, double>> balance;
    if (t > 0) balance.emplace_back(stock[t - 1], 1.0);
    balance.emplace_back(produce[t], 1.0);
    balance.emplace_back(stock[t], -1.0);
    std::sort(balance.begin(), balance.end());
    p.AddRow("bal" + std::to_string(t), std::move(balance), RowSense::kEq,
             demand[t]);
  }
  for (int t = 0; t < periods; ++t) {
    p.AddRow("link" + std::to_string(t),
             {{produce[t], 1.0}, {setup[t], -capacity[t]}}, RowSense::kLe, 0.0);
  }
  return p;
}

MipProblem GenerateBinPacking(int items, uint64_t seed) {
  SplitMix64 rng(seed);
  MipProblem p;
  p.name = "binpacking_" + std::to_string(items) + "_" + std::to_string(seed);
  p.sense = ObjSense::kMinimize;
  constexpr double kCapacity = 100.0;
  std::vector<double> weight(items);
  for (double& w : weight) w = static_cast<double>(rng.NextInt(20, 60));
  // Enough bins for a first-fit-decreasing packing, so every draw is feasible.
  std::vector<double> sorted = weight;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> load;
  for (double w : sorted) {
    auto it = std::find_if(load.begin(), load.end(),
                           [&](double l) { return l + w <= kCapacity; });
    if (it == load.end()) {
      load.push_back(w);
    } else {
      *it += w;
    }
  }
  const int bins = std::max({1, items / 2, static_cast<int>(load.size())});
  std::vector<int> used(bins);
  for (int b = 0; b < bins; ++b) {
    used[b] = p.AddVariable("u" + std::to_string(b), 1.0, 0.0, 1.0, VarKind::kBinary);
  }
  std::vector<std::vector<int>> assign(items, std::vector<int>(bins));
  for (int i = 0; i < items; ++i) {
    for (int b = 0; b < bins; ++b) {
      assign[i][b] = p.AddVariable(
          "a" + std::to_string(i) + "_" + std::to_string(b), 0.0, 0.0, 1.0,
          VarKind::kBinary);
    }
  }
  for (int i = 0; i < items; ++i) {
    std::vector<std::pair<int, double>> row;
    for (int b = 0; b < bins; ++b) row.emplace_back(assign[i][b], 1.0);
    p.AddRow("item" + std::to_string(i), std::move(row), RowSense::kEq, 1.0);
  }
  for (int b = 0; b < bins; ++b) {
    std::vector<std::pair<int, double>> row = {{used[b], -kCapacity}};
    for (int i = 0; i < items; ++i) row.emplace_back(assign[i][b], weight[i]);
    p.AddRow("bin" + std::to_string(b), std::move(row), RowSense::kLe, 0.0);
  }
  return p;
}

MipProblem GenerateFacilityLocation(int facilities, int customers, uint64_t seed) {
  SplitMix64 rng(seed);
  MipProblem p;
  p.name = "facility_" + std::to_string(facilities) + "x" +
           std::to_string(customers) + "_" + std::to_string(seed);
  p.sense = ObjSense::kMinimize;
  std::vector<double> demand(customers);
  double total_demand = 0.0;
  for (double& d : demand) {
    d = static_cast<double>(rng.NextInt(5, 35));
    total_demand += d;
  }
  std::vector<int> open(facilities);
  std::vector<double> capacity(facilities);
  for (int f = 0; f < facilities; ++f) {
    capacity[f] = std::floor(total_demand * (0.2 + 0.2 * rng.NextDouble()));
    open[f] = p.AddVariable("open" + std::to_string(f),
                            static_cast<double>(rng.NextInt(300, 700)), 0.0, 1.0,
                            VarKind::kBinary);
  }
  std::vector<std::vector<int>> serve(facilities, std::vector<int>(customers));
  for (int f = 0; f < facilities; ++f) {
    for (int c = 0; c < customers; ++c) {
      serve[f][c] = p.AddVariable(
          "s" + std::to_string(f) + "_" + std::to_string(c),
          demand[c] * static_cast<double>(rng.NextInt(1, 10)), 0.0, 1.0,
          VarKind::kContinuous);
    }
  }
  for (int c = 0; c < customers; ++c) {
    std::vector<std::pair<int, double>> row;
    for (int f = 0; f < facilities; ++f) row.emplace_back(serve[f][c], 1.0);
    p.AddRow("demand" + std::to_string(c), std::move(row), RowSense::kEq, 1.0);
  }
  for (int f = 0; f < facilities; ++f) {
    std::vector<std::pair<int, double>> row = {{open[f], -capacity[f]}};
    for (int c = 0; c < customers; ++c) row.emplace_back(serve[f][c], demand[c]);
    p.AddRow("capacity" + std::to_string(f), std::move(row), RowSense::kLe, 0.0);
  }
  return p;
}

MipProblem GenerateSmallInteger(uint64_t seed, int max_vars, int max_rows) {
  SplitMix64 rng(seed);
  MipProblem p;
  p.name = "small_" + std::to_string(seed);
  p.sense = ObjSense::kMaximize;
  const int n = static_cast<int>(rng.NextInt(1, max_vars));
  const int m = static_cast<int>(rng.NextInt(1, max_rows));
  std::vector<double> anchor(n);
  for (int j = 0; j < n; ++j) {
    const double lb = static_cast<double>(rng.NextInt(0, 2));
    const double ub = static_cast<double>(rng.NextInt(static_cast<int64_t>(lb), 3));
    const VarKind kind =
        (lb == 0.0 && ub == 1.0) ? VarKind::kBinary : VarKind::kInteger;
    p.AddVariable("x" + std::to_string(j),
                  static_cast<double>(rng.NextInt(-10, 10)), lb, ub, kind);
    anchor[j] = static_cast<double>(
        rng.NextInt(static_cast<int64_t>(lb), static_cast<int64_t>(ub)));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> row;
    double activity = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = static_cast<double>(rng.NextInt(-10, 10));
      if (a == 0.0) continue;
      row.emplace_back(j, a);
      activity += a * anchor[j];
    }
    const double slack = static_cast<double>(rng.NextInt(0, 6));
    const uint64_t kind = rng.NextIndex(8);
    // The anchor point satisfies every row, so the instance is feasible.
    if (kind == 0) {
      p.AddRow("r" + std::to_string(i), std::move(row), RowSense::kEq, activity);
    } else if (kind < 4) {
      p.AddRow("r" + std::to_string(i), std::move(row), RowSense::kGe,
               activity - slack);
    } else {
      p.AddRow("r" + std::to_string(i), std::move(row), RowSense::kLe,
               activity + slack);
    }
  }
  return p;
}

std::optional<MipProblem> GenerateFamily(std::string_view family, uint64_t seed) {
  SplitMix64 rng(MixSeed(seed, HashString(family)));
  if (family == "knapsack") {
    return GenerateKnapsack(static_cast<int>(rng.NextInt(25, 40)), seed);
  }
  if (family == "intknap") {
    return GenerateIntegerKnapsack(static_cast<int>(rng.NextInt(12, 20)),
                                   static_cast<int>(rng.NextInt(2, 4)), seed);
  }
  if (family == "setcover") {
    return GenerateSetCover(static_cast<int>(rng.NextInt(15, 25)),
                            static_cast<int>(rng.NextInt(25, 40)), 0.15, seed);
  }
  if (family == "lotsizing") {
    return GenerateLotSizing(static_cast<int>(rng.NextInt(8, 14)), seed);
  }
  if (family == "binpacking") {
    return GenerateBinPacking(static_cast<int>(rng.NextInt(7, 9)), seed);
  }
  if (family == "facility") {
    return GenerateFacilityLocation(static_cast<int>(rng.NextInt(8, 10)),
                                    static_cast<int>(rng.NextInt(12, 16)), seed);
  }
  if (family == "small") return GenerateSmallInteger(seed);
  return std::nullopt;
}

}  // namespace dash
