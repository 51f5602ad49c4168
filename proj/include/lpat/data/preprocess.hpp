// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lpat/data/types.hpp"

namespace lpat::data {

/// Days beyond the window a drive must have been observed to be kept.
inline constexpr long kMinExtraDays = 15;

struct CleaningReport {
  std::size_t duplicate_rows = 0;
  std::size_t removed_missing = 0;  // drives with a missing requested value
  std::size_t removed_short = 0;    // drives with fewer than w + 15 records
  std::size_t removed_healthy = 0;
  std::size_t removed_failed = 0;

  std::size_t removed() const { return removed_missing + removed_short; }
};

struct CleaningResult {
  std::vector<DriveTimeline> timelines;
  CleaningReport report;
};

/// Collapses same-day duplicates to the last occurrence, then drops drives
/// with any missing attribute value or fewer than `window + 15` days of
/// records. A drive failing both rules is counted as missing.
CleaningResult clean_and_aggregate(std::vector<DriveTimeline> timelines, Index window);

/// Per-attribute extrema over every record of the given drives. Throws
/// InvalidArgument if there are no records.
ScalingParams minmax_fit(std::span<const DriveTimeline> timelines);

/// (v - v_min) / (v_max - v_min) clipped to [0, 1]; 0 for a constant
/// attribute.
double minmax_apply(double v, double v_min, double v_max);
double minmax_apply(double v, const ScalingParams &params, std::size_t attribute);

/// Copies of the timelines with every attribute value scaled. Missing
/// values are left missing.
std::vector<DriveTimeline> scale_timelines(std::span<const DriveTimeline> timelines,
                                           const ScalingParams &params);

/// Health degree of a window whose last day lies `residual_days` before the
/// drive's failure:
///   healthy drive               -> Healthy
///   failed, residual < 5        -> RedAlert
///   failed, 5 <= residual <= 15 -> GoingToFail
///   failed, residual > 15       -> unlabeled
std::optional<HealthDegree> label_for(bool failed, long residual_days);

struct WindowedSamples {
  std::vector<Sample> labeled;
  std::vector<Sample> unlabeled;
};

/// Slides a window of `window` consecutive records (stride 1) over every
/// cleaned, scaled drive and labels each window by the residual life at
/// its last day.
WindowedSamples window_and_label(std::span<const DriveTimeline> timelines, Index window);

enum class SplitPart { Train, Valid, Test };

struct SplitFractions {
  /// Share of drives used for training (train + valid); the rest is test.
  double train = 0.8;
  /// Share of the training drives held out for validation.
  double valid = 0.2;
};

struct DriveKey {
  std::string serial;
  bool failed = false;
};

/// Assigns whole drives to train/valid/test. With n drives, test gets
/// n - round(train * n), valid gets round(valid * (n - test)), train the
/// rest. Healthy and failed drives are interleaved before cutting so both
/// appear in each part in roughly their overall proportion. Throws
/// InvalidArgument if any part would be empty.
std::map<std::string, SplitPart> assign_splits(std::vector<DriveKey> drives,
                                               const SplitFractions &fractions,
                                               std::uint64_t seed);

/// Routes samples by drive. Drives with at least one labeled window are
/// assigned with assign_splits; unlabeled windows are kept only for drives
/// on the training side (including drives that have no labeled window).
/// The returned split's window/attributes/scaling are left for the caller.
DatasetSplit split_dataset(WindowedSamples samples, const SplitFractions &fractions,
                           std::uint64_t seed);

/// The drives that window_and_label would give a labeled window, with their
/// failure flag; this is the population split_dataset assigns.
std::vector<DriveKey> labeled_drives(std::span<const DriveTimeline> timelines, Index window);

}  // namespace lpat::data
