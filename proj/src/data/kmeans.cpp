// SPDX-License-Identifier: Apache-2.0

#include "lpat/data/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "lpat/data/preprocess.hpp"
#include "lpat/errors.hpp"

namespace lpat::data {

namespace {

Matrix farthest_point_seeds(const Matrix &points, int k, std::uint64_t seed) {
  const Index n = points.rows();
  Matrix centroids(k, points.cols());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  centroids.row(0) = points.row(pick(rng));
  Vector nearest = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    Index far = 0;
    nearest.maxCoeff(&far);  // first maximum
    centroids.row(c) = points.row(far);
    nearest = nearest.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

}  // namespace

KMeansResult kmeans(const Matrix &points, int k, std::uint64_t seed,
                    const KMeansOptions &options) {
  const Index n = points.rows();
  if (k < 1) throw InvalidArgument("k-means needs at least one cluster");
  if (k > n)
    throw InvalidArgument("k-means: " + std::to_string(k) + " clusters requested for " +
                          std::to_string(n) + " points");

  KMeansResult res;
  res.centroids = farthest_point_seeds(points, k, seed);
  res.assignment.assign(static_cast<std::size_t>(n), -1);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      const double d = (res.centroids.rowwise() - points.row(i)).rowwise().squaredNorm().minCoeff(&best);
      objective += d;
      if (res.assignment[i] != static_cast<int>(best)) {
        res.assignment[i] = static_cast<int>(best);
        changed = true;
      }
    }
    res.objective.push_back(objective);
    res.iterations = iter + 1;
    if (!changed) {
      res.converged = true;
      break;
    }
    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(res.assignment[i]) += points.row(i);
      ++counts[res.assignment[i]];
    }
    for (int c = 0; c < k; ++c)
      if (counts[c] > 0) res.centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
  }
  return res;
}

std::size_t keep_count(double keep_frac, std::size_t size) {
  if (!(keep_frac > 0.0 && keep_frac <= 1.0))
    throw InvalidArgument("keep fraction must lie in (0, 1]");
  const double exact = keep_frac * static_cast<double>(size);
  const auto kept = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::min(kept, size);
}

std::vector<std::size_t> representative_rows(const Matrix &points, int k, double keep_frac,
                                             std::uint64_t seed) {
  keep_count(keep_frac, 0);  // validates keep_frac
  const KMeansResult res = kmeans(points, k, seed);
  std::vector<std::size_t> kept;
  for (int c = 0; c < k; ++c) {
    std::vector<std::pair<double, std::size_t>> members;
    for (std::size_t i = 0; i < res.assignment.size(); ++i)
      if (res.assignment[i] == c)
        members.emplace_back((points.row(static_cast<Index>(i)) - res.centroids.row(c)).squaredNorm(), i);
    std::sort(members.begin(), members.end());
    const std::size_t take = keep_count(keep_frac, members.size());
    for (std::size_t j = 0; j < take; ++j) kept.push_back(members[j].second);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

Matrix drive_summaries(std::span<const DriveTimeline> timelines) {
  if (timelines.empty()) return Matrix(0, 0);
  const std::size_t n = timelines.front().records.empty()
                            ? 0
                            : timelines.front().records.front().attrs.size();
  Matrix out = Matrix::Zero(static_cast<Index>(timelines.size()), static_cast<Index>(n));
  for (std::size_t d = 0; d < timelines.size(); ++d) {
    const auto &recs = timelines[d].records;
    if (recs.empty()) throw InvalidArgument("drive " + timelines[d].serial + " has no records");
    for (const auto &r : recs) {
      if (r.attrs.size() != n) throw ShapeError("drive_summaries: inconsistent attribute count");
      for (std::size_t a = 0; a < n; ++a) out(static_cast<Index>(d), static_cast<Index>(a)) += r.attrs[a].value_or(0.0);
    }
    out.row(static_cast<Index>(d)) /= static_cast<double>(recs.size());
  }
  return out;
}

std::vector<DriveTimeline> kmeans_representative_subset(std::span<const DriveTimeline> healthy,
                                                        int k, double keep_frac,
                                                        std::uint64_t seed) {
  if (healthy.empty()) {
    if (k > 0) throw InvalidArgument("k-means: no drives to cluster");
    return {};
  }
  const auto scaled = scale_timelines(healthy, minmax_fit(healthy));
  const auto rows = representative_rows(drive_summaries(scaled), k, keep_frac, seed);
  std::vector<DriveTimeline> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(healthy[r]);
  return out;
}

}  // namespace lpat::data
