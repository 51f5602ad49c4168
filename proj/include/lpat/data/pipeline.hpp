// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpat/data/preprocess.hpp"
#include "lpat/data/types.hpp"

namespace lpat::data {

struct PrepConfig {
  std::vector<std::string> attributes;  // empty means default_attributes()
  int clusters = 10;
  double keep_frac = 0.3;
  Index window = 20;
  SplitFractions fractions;
  std::uint64_t seed = 1;
};

struct DriveCounts {
  std::size_t healthy = 0;
  std::size_t failed = 0;
};

/// Drive and sample counts at each stage of preparation.
struct PrepSummary {
  DriveCounts ingested;
  DriveCounts cleaned;
  DriveCounts selected;  // after the healthy subset
  CleaningReport cleaning;
  std::size_t skipped_rows = 0;
  /// Labeled windows per class (RedAlert, GoingToFail, Healthy).
  std::array<std::size_t, kClassCount> train{};
  std::array<std::size_t, kClassCount> valid{};
  std::array<std::size_t, kClassCount> test{};
  std::size_t unlabeled = 0;
};

struct PrepResult {
  DatasetSplit split;
  PrepSummary summary;
};

/// clean -> k-means healthy subset -> scale -> window/label -> split.
/// Scaling is fitted on the drives assigned to train and valid. Throws
/// InvalidArgument("no samples produced") when no labeled window exists.
PrepResult prepare_dataset(std::vector<DriveTimeline> timelines, const PrepConfig &config);

void print_summary(std::ostream &os, const PrepSummary &summary);

}  // namespace lpat::data
