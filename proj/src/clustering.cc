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

#include "dash/clustering.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include <Eigen/Dense>

#include "dash/mip_problem.h"
#include "dash/random.h"

namespace dash {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  DASH_CHECK(a.size() == b.size(), "dimension mismatch: " +
                                       std::to_string(a.size()) + " vs " +
                                       std::to_string(b.size()));
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

int NearestCenter(std::span<const double> x, std::span<const Point> centers) {
  DASH_CHECK(!centers.empty(), "no centers");
  int best = 0;
  double best_d = SquaredDistance(x, centers[0]);
  for (int c = 1; c < static_cast<int>(centers.size()); ++c) {
    const double d = SquaredDistance(x, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

namespace {

double Assign(std::span<const Point> points, std::span<const Point> centers,
              std::vector<int>& assignment) {
  assignment.resize(points.size());
  double total = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    assignment[i] = NearestCenter(points[i], centers);
    total += SquaredDistance(points[i], centers[assignment[i]]);
  }
  return total;
}

std::vector<Point> DistinctPoints(std::span<const Point> points) {
  std::vector<Point> distinct;
  for (const Point& p : points) {
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) {
      distinct.push_back(p);
    }
  }
  return distinct;
}

Point Mean(std::span<const Point> points, const std::vector<int>& members) {
  Point mean(points[members.front()].size(), 0.0);
  for (int i : members) {
    for (size_t d = 0; d < mean.size(); ++d) mean[d] += points[i][d];
  }
  for (double& v : mean) v /= static_cast<double>(members.size());
  return mean;
}

std::vector<Point> PlusPlusSeeds(std::span<const Point> points, int k,
                                 uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Point> centers;
  centers.push_back(points[rng.NextIndex(points.size())]);
  std::vector<double> d2(points.size());
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
      d2[i] = SquaredDistance(points[i], centers[NearestCenter(points[i], centers)]);
      total += d2[i];
    }
    if (total <= 0.0) break;
    const double target = rng.NextDouble() * total;
    double acc = 0.0;
    size_t pick = points.size() - 1;
    for (size_t i = 0; i < points.size(); ++i) {
      acc += d2[i];
      if (acc > target && d2[i] > 0.0) {
        pick = i;
        break;
      }
    }
    centers.push_back(points[pick]);
  }
  return centers;
}

// Starting centers mean +- v * sqrt(2 * lambda / pi) along the principal
// axis v with eigenvalue lambda; empty when the points have no spread.
std::vector<Point> PrincipalSplit(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  const int dim = static_cast<int>(points.front().size());
  Eigen::MatrixXd x(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < dim; ++d) x(i, d) = points[i][d];
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  const Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double lambda = eig.eigenvalues()(dim - 1);
  if (!(lambda > 0.0)) return {};
  const Eigen::VectorXd offset =
      eig.eigenvectors().col(dim - 1) * std::sqrt(2.0 * lambda / std::numbers::pi);
  Point a(dim), b(dim);
  for (int d = 0; d < dim; ++d) {
    a[d] = mean(d) + offset(d);
    b[d] = mean(d) - offset(d);
  }
  return {a, b};
}

// Runs 2-means on a random half of the cluster and tests the other half,
// projected on the inter-center axis, for normality. Returns the two child
// centers when gaussianity is rejected, nothing otherwise.
std::vector<Point> TrySplit(const std::vector<Point>& members,
                            const GMeansOptions& options, uint64_t seed) {
  std::vector<int> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.NextIndex(i)]);
  }
  std::vector<Point> fit, held;
  for (size_t k = 0; k < order.size(); ++k) {
    (k % 2 == 0 ? fit : held).push_back(members[order[k]]);
  }
  std::vector<Point> init = PrincipalSplit(fit);
  if (init.empty()) return {};
  KMeansResult two = KMeansFrom(fit, std::move(init));
  Point axis(two.centers[0].size());
  double norm2 = 0.0;
  for (size_t d = 0; d < axis.size(); ++d) {
    axis[d] = two.centers[0][d] - two.centers[1][d];
    norm2 += axis[d] * axis[d];
  }
  if (norm2 <= 0.0) return {};
  std::vector<double> projection(held.size());
  for (size_t i = 0; i < held.size(); ++i) {
    double dot = 0.0;
    for (size_t d = 0; d < axis.size(); ++d) dot += held[i][d] * axis[d];
    projection[i] = dot / norm2;
  }
  double mean = 0.0;
  for (double p : projection) mean += p;
  mean /= static_cast<double>(projection.size());
  double var = 0.0;
  for (double p : projection) var += (p - mean) * (p - mean);
  var /= static_cast<double>(projection.size());
  if (var <= 0.0) return {};
  const double sd = std::sqrt(var);
  for (double& p : projection) p = (p - mean) / sd;
  if (AndersonDarlingStatistic(projection) <= options.critical_value) return {};
  KMeansResult full = KMeansFrom(members, std::move(two.centers));
  if (full.centers[0] == full.centers[1]) return {};
  return full.centers;
}

}  // namespace

KMeansResult KMeansFrom(std::span<const Point> points,
                        std::vector<Point> initial_centers) {
  DASH_CHECK(!points.empty(), "k-means needs points");
  DASH_CHECK(!initial_centers.empty(), "k-means needs at least one center");
  KMeansResult result;
  result.centers = std::move(initial_centers);
  const int k = static_cast<int>(result.centers.size());
  for (int it = 0; it < kKMeansMaxIterations; ++it) {
    result.objective_trace.push_back(
        Assign(points, result.centers, result.assignment));
    result.iterations = it + 1;
    std::vector<std::vector<int>> members(k);
    for (size_t i = 0; i < points.size(); ++i) {
      members[result.assignment[i]].push_back(static_cast<int>(i));
    }
    double movement = 0.0;
    for (int c = 0; c < k; ++c) {
      Point next;
      if (!members[c].empty()) {
        next = Mean(points, members[c]);
      } else {
        // Re-seed from the point farthest from its own center.
        size_t far = 0;
        double far_d = -1.0;
        for (size_t i = 0; i < points.size(); ++i) {
          const double d =
              SquaredDistance(points[i], result.centers[result.assignment[i]]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        next = points[far];
      }
      movement = std::max(movement, std::sqrt(SquaredDistance(next, result.centers[c])));
      result.centers[c] = std::move(next);
    }
    if (movement < kKMeansTolerance) break;
  }
  result.objective_trace.push_back(
      Assign(points, result.centers, result.assignment));
  return result;
}

KMeansResult KMeans(std::span<const Point> points, int k, uint64_t seed) {
  DASH_CHECK(!points.empty(), "k-means needs points");
  DASH_CHECK(k >= 1, "k must be at least 1");
  std::vector<Point> distinct = DistinctPoints(points);
  if (static_cast<int>(distinct.size()) <= k) {
    KMeansResult result;
    result.centers = std::move(distinct);
    result.objective_trace.push_back(
        Assign(points, result.centers, result.assignment));
    return result;
  }
  KMeansResult best;
  for (int r = 0; r < kKMeansRestarts; ++r) {
    KMeansResult run = KMeansFrom(points, PlusPlusSeeds(points, k, MixSeed(seed, r)));
    if (r == 0 || run.objective_trace.back() < best.objective_trace.back()) {
      best = std::move(run);
    }
  }
  return best;
}

double AndersonDarlingStatistic(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  DASH_CHECK(n >= kMinAndersonDarlingSamples,
             "Anderson-Darling needs at least 8 samples, got " + std::to_string(n));
  std::vector<double> z(samples.begin(), samples.end());
  std::sort(z.begin(), z.end());
  // log of the standard normal cdf, accurate in both tails.
  auto log_cdf = [](double v) {
    const double p = 0.5 * std::erfc(-v / std::sqrt(2.0));
    return std::log(std::max(p, 1e-300));
  };
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += (2.0 * (i + 1) - 1.0) * (log_cdf(z[i]) + log_cdf(-z[n - 1 - i]));
  }
  const double a2 = -n - sum / n;
  const double nd = static_cast<double>(n);
  return a2 * (1.0 + 4.0 / nd - 25.0 / (nd * nd));
}

ClusterModel GMeans(std::span<const Point> points, const GMeansOptions& options) {
  DASH_CHECK(!points.empty(), "g-means needs points");
  const int count = static_cast<int>(points.size());
  std::vector<int> all(count);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Point> centers = {Mean(points, all)};
  std::vector<int> assignment(count, 0);

  for (int round = 0;; ++round) {
    std::vector<std::vector<int>> members(centers.size());
    for (int i = 0; i < count; ++i) members[assignment[i]].push_back(i);
    std::vector<int> order(centers.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return members[a].size() > members[b].size();
    });

    std::vector<Point> next;
    int budget = options.max_clusters - static_cast<int>(centers.size());
    bool split_any = false;
    for (int c : order) {
      const std::vector<int>& group = members[c];
      if (budget <= 0 ||
          static_cast<int>(group.size()) < 2 * kMinAndersonDarlingSamples) {
        next.push_back(centers[c]);
        continue;
      }
      std::vector<Point> subset;
      subset.reserve(group.size());
      for (int i : group) subset.push_back(points[i]);
      std::vector<Point> split = TrySplit(
          subset, options,
          MixSeed(options.seed, static_cast<uint64_t>(round) * 100003u + c));
      if (split.empty()) {
        next.push_back(centers[c]);
      } else {
        next.push_back(std::move(split[0]));
        next.push_back(std::move(split[1]));
        --budget;
        split_any = true;
      }
    }
    if (!split_any) break;
    KMeansResult refined = KMeansFrom(points, std::move(next));
    centers = std::move(refined.centers);
    assignment = std::move(refined.assignment);
  }

  // Absorb clusters below the size threshold into their nearest neighbours.
  while (true) {
    Assign(points, centers, assignment);
    std::vector<int> sizes(centers.size(), 0);
    for (int a : assignment) ++sizes[a];
    int smallest = static_cast<int>(
        std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
    if (centers.size() == 1 || sizes[smallest] >= options.min_cluster_size) {
      ClusterModel model;
      model.centers = std::move(centers);
      model.min_cluster_size = options.min_cluster_size;
      model.sizes = std::move(sizes);
      return model;
    }
    centers.erase(centers.begin() + smallest);
    Assign(points, centers, assignment);
    std::vector<std::vector<int>> members(centers.size());
    for (int i = 0; i < count; ++i) members[assignment[i]].push_back(i);
    for (size_t c = 0; c < centers.size(); ++c) {
      if (!members[c].empty()) centers[c] = Mean(points, members[c]);
    }
  }
}

}  // namespace dash
