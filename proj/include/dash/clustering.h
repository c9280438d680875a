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

// k-means (k-means++ seeding, Lloyd iterations) and g-means, which grows the
// number of clusters until every cluster looks gaussian along its 2-means
// split axis under the Anderson-Darling test.
//
// The split axis is fitted on a seeded random half of the cluster and the
// test runs on the other half. Testing the same points the axis was fitted
// on rejects far too often in high dimension.

#ifndef DASH_CLUSTERING_H_
#define DASH_CLUSTERING_H_

#include <cstdint>
#include <span>
#include <vector>

namespace dash {

using Point = std::vector<double>;

double SquaredDistance(std::span<const double> a, std::span<const double> b);

// Index of the Euclidean-nearest center; ties go to the lowest index.
int NearestCenter(std::span<const double> x, std::span<const Point> centers);

struct KMeansResult {
  std::vector<Point> centers;
  std::vector<int> assignment;
  int iterations = 0;
  // Sum of squared distances after each assignment step.
  std::vector<double> objective_trace;
};

inline constexpr int kKMeansMaxIterations = 200;
inline constexpr double kKMeansTolerance = 1e-9;
// Seeded k-means++ restarts; the lowest final objective wins.
inline constexpr int kKMeansRestarts = 10;

// Lloyd's algorithm from k-means++ seeds drawn with `seed`. When there are at
// most k distinct points, the distinct points themselves are the centers.
KMeansResult KMeans(std::span<const Point> points, int k, uint64_t seed);

// Lloyd's algorithm from the given starting centers.
KMeansResult KMeansFrom(std::span<const Point> points,
                        std::vector<Point> initial_centers);

// Anderson-Darling A^2 of samples against N(0, 1), with the small-sample
// correction A^2 * (1 + 4/n - 25/n^2). Samples must already be standardized;
// at least kMinAndersonDarlingSamples are required.
inline constexpr int kMinAndersonDarlingSamples = 8;
double AndersonDarlingStatistic(std::span<const double> samples);

struct GMeansOptions {
  int min_cluster_size = 5;
  // Critical value at significance 1e-4.
  double critical_value = 1.8692;
  uint64_t seed = 0;
  int max_clusters = 64;
};

struct ClusterModel {
  std::vector<Point> centers;
  int min_cluster_size = 5;
  // Training points nearest to each center at fit time.
  std::vector<int> sizes;

  int num_clusters() const { return static_cast<int>(centers.size()); }
};

ClusterModel GMeans(std::span<const Point> points, const GMeansOptions& options);

}  // namespace dash

#endif  // DASH_CLUSTERING_H_
