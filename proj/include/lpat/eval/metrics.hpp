// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lpat/data/types.hpp"
#include "lpat/model/network.hpp"

namespace lpat::eval {

inline constexpr int kClasses = data::kClassCount;

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, kClasses>, kClasses> counts{};

  void add(int truth, int predicted);
  std::size_t total() const;
  std::size_t trace() const;
  bool operator==(const ConfusionMatrix &) const = default;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct MetricsReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  std::array<ClassScores, kClasses> per_class{};
  /// Means over the classes present in the ground truth.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;

  bool operator==(const MetricsReport &) const;
};

/// Throws InvalidArgument on empty input, mismatched lengths or a class
/// index outside [0, 3).
MetricsReport compute_metrics(std::span<const int> truth, std::span<const int> predicted);
MetricsReport compute_metrics(const ConfusionMatrix &confusion);

/// Plain forward pass over labeled samples. Throws InvalidArgument when
/// `samples` is empty or holds an unlabeled window.
MetricsReport evaluate(const model::Network &net, std::span<const data::Sample> samples);

struct HorizonRow {
  std::string horizon;  // "<=5" or "<=15"
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Class 0 ("<=5" days) and class 1 ("<=15" days) scores.
std::array<HorizonRow, 2> per_horizon_breakdown(const MetricsReport &report);

/// Key-value metrics file. Lines starting with '#' are comments; every other
/// line is `<key> <value>`. Values are written with round-trip precision,
/// followed by commented percentage tables.
void write_metrics(std::ostream &os, const MetricsReport &report, const std::string &title = {});
void save_metrics(const MetricsReport &report, const std::filesystem::path &path,
                  const std::string &title = {});
/// Throws FormatError on unknown keys, bad values or missing keys.
MetricsReport read_metrics(std::istream &is);
MetricsReport load_metrics(const std::filesystem::path &path);

/// Overall table (Accuracy, Precision, Recall, Macro-F1) and the horizon
/// table, in percent with one decimal place.
void print_tables(std::ostream &os, const MetricsReport &report);

}  // namespace lpat::eval
