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
#include <set>
#include <vector>

#include "dash/mip_problem.h"
#include "dash/random.h"
#include "gtest/gtest.h"

namespace dash {
namespace {

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Inverse by bisection; plenty for quantile fixtures.
double NormalQuantile(double p) {
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (NormalCdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// A^2 written per observation: sum over sorted z_i of
// (2i-1) ln F(z_i) + (2(n-i)+1) ln(1 - F(z_i)), then the small-sample factor.
double ReferenceAndersonDarling(std::vector<double> z) {
  std::sort(z.begin(), z.end());
  const double n = static_cast<double>(z.size());
  double s = 0.0;
  for (size_t k = 0; k < z.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    const double f = NormalCdf(z[k]);
    s += (2.0 * i - 1.0) * std::log(f) + (2.0 * (n - i) + 1.0) * std::log(1.0 - f);
  }
  const double a2 = -n - s / n;
  return a2 * (1.0 + 4.0 / n - 25.0 / (n * n));
}

std::vector<double> Standardized(std::vector<double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / static_cast<double>(v.size()));
  for (double& x : v) x = (x - mean) / sd;
  return v;
}

std::vector<Point> Gaussian(SplitMix64& rng, int n, int dim, const Point& center) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    Point p(dim);
    for (int d = 0; d < dim; ++d) p[d] = center[d] + rng.NextGaussian();
    out.push_back(std::move(p));
  }
  return out;
}

TEST(KMeansTest, TwoPointsTwoCenters) {
  const std::vector<Point> pts = {{0.0}, {10.0}};
  const KMeansResult r = KMeans(pts, 2, 1);
  std::set<double> centers;
  for (const Point& c : r.centers) centers.insert(c[0]);
  EXPECT_EQ(centers, (std::set<double>{0.0, 10.0}));
  EXPECT_NE(r.assignment[0], r.assignment[1]);
}

TEST(KMeansTest, IdenticalPointsCollapse) {
  const std::vector<Point> pts(6, Point{3.0, -1.0});
  const KMeansResult r = KMeans(pts, 2, 4);
  ASSERT_EQ(r.centers.size(), 1u);
  EXPECT_EQ(r.centers[0], (Point{3.0, -1.0}));
}

TEST(KMeansTest, SquareSplitsIntoOppositeSides) {
  const std::vector<Point> pts = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const std::set<Point> vertical = {{0.0, 0.5}, {1.0, 0.5}};
  const std::set<Point> horizontal = {{0.5, 0.0}, {0.5, 1.0}};
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const KMeansResult r = KMeans(pts, 2, seed);
    const std::set<Point> got(r.centers.begin(), r.centers.end());
    EXPECT_TRUE(got == vertical || got == horizontal) << "seed " << seed;
    EXPECT_DOUBLE_EQ(r.objective_trace.back(), 1.0);
  }
}

TEST(KMeansPropertyTest, ObjectiveNeverIncreases) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point> pts;
    const int k = static_cast<int>(rng.NextInt(2, 6));
    for (int c = 0; c < k; ++c) {
      Point center(5);
      for (double& x : center) x = 6.0 * rng.NextGaussian();
      const auto g = Gaussian(rng, 30, 5, center);
      pts.insert(pts.end(), g.begin(), g.end());
    }
    const KMeansResult r = KMeans(pts, k, trial);
    for (size_t i = 1; i < r.objective_trace.size(); ++i) {
      EXPECT_LE(r.objective_trace[i], r.objective_trace[i - 1] + 1e-9);
    }
    EXPECT_EQ(KMeans(pts, k, trial).centers, r.centers);
  }
}

TEST(AndersonDarlingTest, NormalQuantilesAreBelowCritical) {
  std::vector<double> z;
  for (int i = 0; i < 50; ++i) z.push_back(NormalQuantile((i + 0.5) / 50.0));
  z = Standardized(z);
  const double stat = AndersonDarlingStatistic(z);
  EXPECT_NEAR(stat, ReferenceAndersonDarling(z), 1e-9);
  EXPECT_LT(stat, GMeansOptions{}.critical_value);
}

TEST(AndersonDarlingTest, MatchesReferenceOnRandomSamples) {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(static_cast<size_t>(rng.NextInt(8, 300)));
    for (double& x : v) x = rng.NextGaussian() + (trial % 3) * rng.NextDouble();
    v = Standardized(v);
    EXPECT_NEAR(AndersonDarlingStatistic(v), ReferenceAndersonDarling(v), 1e-8);
  }
}

TEST(AndersonDarlingTest, UniformIsAboveCritical) {
  SplitMix64 rng(77);
  std::vector<double> v(200);
  for (double& x : v) x = -1.7 + 3.4 * rng.NextDouble();
  EXPECT_GT(AndersonDarlingStatistic(Standardized(v)), GMeansOptions{}.critical_value);
}

TEST(AndersonDarlingTest, SevenSamplesAreRefused) {
  const std::vector<double> v = {-1, -0.5, 0, 0.5, 1, 1.5, 2};
  EXPECT_THROW(AndersonDarlingStatistic(v), ContractViolation);
}

TEST(GMeansTest, OneGaussianStaysOneCluster) {
  SplitMix64 rng(3);
  const auto pts = Gaussian(rng, 200, 40, Point(40, 0.0));
  GMeansOptions options;
  options.seed = 3;
  EXPECT_EQ(GMeans(pts, options).num_clusters(), 1);
}

TEST(GMeansTest, TwoFarGaussiansGiveTwoClusters) {
  SplitMix64 rng(4);
  Point far(40, 0.0);
  far[0] = 20.0;
  auto pts = Gaussian(rng, 100, 40, Point(40, 0.0));
  const auto second = Gaussian(rng, 100, 40, far);
  pts.insert(pts.end(), second.begin(), second.end());
  GMeansOptions options;
  options.seed = 4;
  const ClusterModel m = GMeans(pts, options);
  ASSERT_EQ(m.num_clusters(), 2);
  EXPECT_EQ(m.sizes[0] + m.sizes[1], 200);
  EXPECT_EQ(m.sizes[0], 100);
}

TEST(GMeansTest, TinyInputIsOneCluster) {
  const std::vector<Point> pts = {{0, 0}, {100, 0}, {0, 100}};
  GMeansOptions options;
  options.min_cluster_size = 5;
  EXPECT_EQ(GMeans(pts, options).num_clusters(), 1);
}

TEST(GMeansPropertyTest, ReproducibleAndAbsorbed) {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> pts;
    const int groups = static_cast<int>(rng.NextInt(1, 5));
    for (int g = 0; g < groups; ++g) {
      Point center(6);
      for (double& x : center) x = 15.0 * rng.NextGaussian();
      const auto part = Gaussian(rng, static_cast<int>(rng.NextInt(3, 60)), 6, center);
      pts.insert(pts.end(), part.begin(), part.end());
    }
    GMeansOptions options;
    options.seed = static_cast<uint64_t>(trial);
    options.min_cluster_size = 8;
    const ClusterModel m = GMeans(pts, options);
    const ClusterModel again = GMeans(pts, options);
    EXPECT_EQ(m.centers, again.centers);
    ASSERT_GE(m.num_clusters(), 1);

    std::vector<int> counts(m.num_clusters(), 0);
    for (const Point& p : pts) ++counts[NearestCenter(p, m.centers)];
    EXPECT_EQ(counts, m.sizes);
    for (int c : counts) {
      EXPECT_GE(c, std::min<int>(options.min_cluster_size, static_cast<int>(pts.size())));
    }
    for (int c = 0; c < m.num_clusters(); ++c) {
      EXPECT_EQ(NearestCenter(m.centers[c], m.centers), c);
    }
  }
}

TEST(NearestCenterTest, Examples) {
  const std::vector<Point> centers = {{0, 0}, {10, 0}, {5, 5}};
  EXPECT_EQ(NearestCenter(Point{5, 5}, centers), 2);
  EXPECT_EQ(NearestCenter(Point{4, 0}, centers), 0);
  EXPECT_EQ(NearestCenter(Point{5, 0}, std::vector<Point>{{0, 0}, {10, 0}}), 0);
  EXPECT_EQ(NearestCenter(Point{5, -5}, centers), 0);
}

TEST(NearestCenterTest, DimensionMismatchIsAContractViolation) {
  const std::vector<Point> centers = {{0, 0}};
  EXPECT_THROW(NearestCenter(Point{1, 2, 3}, centers), ContractViolation);
}

}  // namespace
}  // namespace dash
