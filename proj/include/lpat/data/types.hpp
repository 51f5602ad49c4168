// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpat/tensor.hpp"

namespace lpat::data {

using Date = std::chrono::sys_days;

/// Parses YYYY-MM-DD; returns nullopt for malformed or impossible dates.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

/// Days from `from` to `to` (positive when `to` is later).
inline long days_between(Date from, Date to) { return (to - from).count(); }

/// One day of SMART readings for a drive. `attrs` follows the configured
/// attribute list; an empty optional is a missing cell.
struct SmartRecord {
  std::string serial;
  Date date;
  std::string model;
  bool failure = false;
  std::vector<std::optional<double>> attrs;
};

/// A drive's records in date order, with its failure day if it failed.
struct DriveTimeline {
  std::string serial;
  std::vector<SmartRecord> records;
  std::optional<Date> fail_date;

  bool failed() const { return fail_date.has_value(); }
};

/// The health degree predicted for a window.
enum class HealthDegree : int {
  RedAlert = 0,     // residual life under 5 days
  GoingToFail = 1,  // residual life 5 to 15 days
  Healthy = 2,
};

inline constexpr int kClassCount = 3;

constexpr int class_index(HealthDegree h) { return static_cast<int>(h); }
std::string_view meaning_of(HealthDegree h);

/// A w x n window of scaled readings. An empty label marks a window the
/// training loop may only use without supervision.
struct Sample {
  Matrix features;  // w x n, entries in [0, 1]
  std::optional<HealthDegree> label;
  std::string serial;
  Date window_end;

  bool labeled() const { return label.has_value(); }
};

struct ScalingParams {
  std::vector<double> v_min;
  std::vector<double> v_max;

  std::size_t size() const { return v_min.size(); }
  bool operator==(const ScalingParams &) const = default;
};

struct DatasetSplit {
  Index window = 0;
  std::vector<std::string> attributes;
  ScalingParams scaling;
  std::vector<Sample> train_labeled;
  std::vector<Sample> train_unlabeled;
  std::vector<Sample> valid;
  std::vector<Sample> test;
};

}  // namespace lpat::data
