// SPDX-License-Identifier: Apache-2.0

#include "lpat/data/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "lpat/data/csv.hpp"
#include "lpat/data/kmeans.hpp"
#include "lpat/errors.hpp"

namespace lpat::data {

namespace {

DriveCounts count_drives(std::span<const DriveTimeline> timelines) {
  DriveCounts c;
  for (const auto &t : timelines) (t.failed() ? c.failed : c.healthy) += 1;
  return c;
}

std::array<std::size_t, kClassCount> count_classes(const std::vector<Sample> &samples) {
  std::array<std::size_t, kClassCount> c{};
  for (const auto &s : samples)
    if (s.label) ++c[static_cast<std::size_t>(class_index(*s.label))];
  return c;
}

}  // namespace

PrepResult prepare_dataset(std::vector<DriveTimeline> timelines, const PrepConfig &config) {
  if (config.window < 1) throw InvalidArgument("window must be at least 1");
  PrepResult out;
  out.summary.ingested = count_drives(timelines);

  auto cleaned = clean_and_aggregate(std::move(timelines), config.window);
  out.summary.cleaning = cleaned.report;
  out.summary.cleaned = count_drives(cleaned.timelines);

  std::vector<DriveTimeline> healthy, failed;
  for (auto &t : cleaned.timelines) (t.failed() ? failed : healthy).push_back(std::move(t));
  std::vector<DriveTimeline> selected;
  if (!healthy.empty()) {
    const int k = std::min<int>(config.clusters, static_cast<int>(healthy.size()));
    selected = kmeans_representative_subset(healthy, k, config.keep_frac, config.seed);
  }
  for (auto &t : failed) selected.push_back(std::move(t));
  std::sort(selected.begin(), selected.end(),
            [](const DriveTimeline &a, const DriveTimeline &b) { return a.serial < b.serial; });
  out.summary.selected = count_drives(selected);

  const auto keys = labeled_drives(selected, config.window);
  if (keys.empty()) throw InvalidArgument("no samples produced");
  const auto parts = assign_splits(keys, config.fractions, config.seed);

  std::vector<DriveTimeline> fit_set;
  for (const auto &t : selected) {
    const auto it = parts.find(t.serial);
    if (it == parts.end() || it->second != SplitPart::Test) fit_set.push_back(t);
  }
  const ScalingParams scaling = minmax_fit(fit_set);
  const auto scaled = scale_timelines(selected, scaling);

  out.split = split_dataset(window_and_label(scaled, config.window), config.fractions, config.seed);
  out.split.window = config.window;
  out.split.attributes = config.attributes.empty() ? default_attributes() : config.attributes;
  out.split.scaling = scaling;

  out.summary.train = count_classes(out.split.train_labeled);
  out.summary.valid = count_classes(out.split.valid);
  out.summary.test = count_classes(out.split.test);
  out.summary.unlabeled = out.split.train_unlabeled.size();
  return out;
}

void print_summary(std::ostream &os, const PrepSummary &s) {
  char line[160];
  os << "stage        healthy   failed\n";
  auto drives = [&](const char *name, const DriveCounts &c) {
    std::snprintf(line, sizeof line, "%-10s %9zu %8zu\n", name, c.healthy, c.failed);
    os << line;
  };
  drives("ingested", s.ingested);
  drives("cleaned", s.cleaned);
  drives("selected", s.selected);
  std::snprintf(line, sizeof line, "removed drives: %zu (missing %zu, short %zu)\n",
                s.cleaning.removed(), s.cleaning.removed_missing, s.cleaning.removed_short);
  os << line;
  os << "split        class0   class1   class2\n";
  auto split = [&](const char *name, const std::array<std::size_t, kClassCount> &c) {
    std::snprintf(line, sizeof line, "%-10s %8zu %8zu %8zu\n", name, c[0], c[1], c[2]);
    os << line;
  };
  split("train", s.train);
  split("valid", s.valid);
  split("test", s.test);
  std::snprintf(line, sizeof line, "unlabeled  %8zu\n", s.unlabeled);
  os << line;
}

}  // namespace lpat::data
