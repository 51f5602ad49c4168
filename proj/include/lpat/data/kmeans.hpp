// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpat/data/types.hpp"

namespace lpat::data {

struct KMeansOptions {
  int max_iterations = 100;
};

struct KMeansResult {
  Matrix centroids;             // k x dims
  std::vector<int> assignment;  // cluster of each point
  /// Sum of squared distances to the assigned centroid, recorded after each
  /// assignment step. Lloyd's method makes this non-increasing.
  std::vector<double> objective;
  int iterations = 0;
  bool converged = false;
};

/// Lloyd's k-means on the rows of `points`.
///
/// Seeding is greedy farthest-point: the first centroid is a point drawn
/// with `seed`, each further centroid the point farthest from its nearest
/// chosen centroid (lowest index on ties). Iterates until assignments stop
/// changing or `max_iterations` is hit. A cluster that loses all its points
/// keeps its previous centroid. Throws InvalidArgument when k < 1 or k
/// exceeds the number of points.
KMeansResult kmeans(const Matrix &points, int k, std::uint64_t seed,
                    const KMeansOptions &options = {});

/// Number of members kept from a cluster of `size`: ceil(keep_frac * size),
/// computed so that exact products such as 0.3 * 10 do not round up.
std::size_t keep_count(double keep_frac, std::size_t size);

/// Rows kept when retaining, per cluster, the ceil(keep_frac * size) points
/// nearest to the centroid. Returned in ascending order.
std::vector<std::size_t> representative_rows(const Matrix &points, int k, double keep_frac,
                                             std::uint64_t seed);

/// One summary row per drive: the per-attribute mean of its records.
Matrix drive_summaries(std::span<const DriveTimeline> timelines);

/// Selects a representative subset of healthy drives. Drives are min-max
/// scaled over the given set, summarised with drive_summaries, clustered
/// into k groups, and the nearest ceil(keep_frac * size) of each cluster
/// kept. Order of the input is preserved.
std::vector<DriveTimeline> kmeans_representative_subset(std::span<const DriveTimeline> healthy,
                                                        int k, double keep_frac,
                                                        std::uint64_t seed);

}  // namespace lpat::data
