// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "lpat/eval/metrics.hpp"
#include "lpat/training/trainer.hpp"
#include "test_support.hpp"

namespace lpat::eval {
namespace {

TEST(Metrics, PerfectPredictions) {
  const std::vector<int> y{0, 1, 2, 2, 1, 0};
  const auto r = compute_metrics(y, y);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.macro_f1, 1.0);
  for (const auto &row : per_horizon_breakdown(r)) {
    EXPECT_EQ(row.precision, 1.0);
    EXPECT_EQ(row.recall, 1.0);
    EXPECT_EQ(row.f1, 1.0);
  }
}

TEST(Metrics, HandCountedExample) {
  const auto r = compute_metrics(std::vector{0, 0, 1, 2}, std::vector{0, 1, 1, 2});
  EXPECT_EQ(r.accuracy, 0.75);
  EXPECT_EQ(r.confusion.counts[0][0], 1u);
  EXPECT_EQ(r.confusion.counts[0][1], 1u);
  EXPECT_EQ(r.per_class[0].precision, 1.0);
  EXPECT_EQ(r.per_class[0].recall, 0.5);
  EXPECT_NEAR(r.per_class[0].f1, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(r.per_class[1].precision, 0.5);
  EXPECT_EQ(r.per_class[1].recall, 1.0);
  const auto rows = per_horizon_breakdown(r);
  EXPECT_EQ(rows[0].horizon, "<=5");
  EXPECT_EQ(rows[1].horizon, "<=15");
  EXPECT_EQ(rows[0].precision, 1.0);
  EXPECT_EQ(rows[0].recall, 0.5);
  EXPECT_NEAR(rows[0].f1, 0.667, 5e-4);
  EXPECT_NEAR(r.macro_f1, (2.0 / 3.0 + 2.0 / 3.0 + 1.0) / 3.0, 1e-12);
}

TEST(Metrics, NeverPredictedClassScoresZero) {
  const auto r = compute_metrics(std::vector{0, 1, 2, 0}, std::vector{1, 1, 2, 2});
  EXPECT_EQ(r.per_class[0].recall, 0.0);
  EXPECT_EQ(r.per_class[0].precision, 0.0);
  EXPECT_EQ(r.per_class[0].f1, 0.0);
}

TEST(Metrics, MacroAveragesOnlyPresentClasses) {
  const auto r = compute_metrics(std::vector{1, 2, 2}, std::vector{1, 2, 2});
  EXPECT_EQ(r.per_class[0].support, 0u);
  EXPECT_EQ(r.macro_f1, 1.0);
}

TEST(Metrics, ConstantClassifierBelowHalf) {
  std::vector<int> y;
  for (int i = 0; i < 30; ++i) y.push_back(i % 3);
  for (int c = 0; c < 3; ++c) {
    const std::vector<int> p(y.size(), c);
    EXPECT_LT(compute_metrics(y, p).macro_f1, 0.5);
  }
}

TEST(Metrics, AccuracyIsTraceOverTotalAndValuesInRange) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> y(1 + trial % 17), p(y.size());
    for (auto &v : y) v = pick(rng);
    for (auto &v : p) v = pick(rng);
    const auto r = compute_metrics(y, p);
    EXPECT_EQ(r.confusion.total(), y.size());
    EXPECT_EQ(r.accuracy, static_cast<double>(r.confusion.trace()) / static_cast<double>(y.size()));
    for (const auto &c : r.per_class)
      for (double v : {c.precision, c.recall, c.f1}) EXPECT_TRUE(v >= 0.0 && v <= 1.0);
    EXPECT_TRUE(r.macro_f1 >= 0.0 && r.macro_f1 <= 1.0);
    EXPECT_EQ(compute_metrics(r.confusion), r);
  }
}

TEST(Metrics, PermutationInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<int> y(50), p(50), order(50);
  for (auto &v : y) v = pick(rng);
  for (auto &v : p) v = pick(rng);
  std::iota(order.begin(), order.end(), 0);
  const auto base = compute_metrics(y, p);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> ys, ps;
    for (int i : order) ys.push_back(y[i]), ps.push_back(p[i]);
    EXPECT_EQ(compute_metrics(ys, ps), base);
  }
}

TEST(Metrics, RejectsBadInput) {
  EXPECT_THROW(compute_metrics(std::vector<int>{}, std::vector<int>{}), InvalidArgument);
  EXPECT_THROW(compute_metrics(std::vector{0, 1}, std::vector{0}), InvalidArgument);
  EXPECT_THROW(compute_metrics(std::vector{3}, std::vector{0}), InvalidArgument);
}

TEST(Metrics, EvaluateUsesPlainForward) {
  const auto split = test::separable_split(5, 3, 0, 1);
  const auto net = test::random_network(test::tiny_architecture(), 3);
  std::vector<int> truth, predicted;
  for (const auto &s : split.valid) {
    truth.push_back(data::class_index(*s.label));
    predicted.push_back(training::predict(net, s).label);
  }
  EXPECT_EQ(evaluate(net, split.valid), compute_metrics(truth, predicted));
  EXPECT_THROW(evaluate(net, std::vector<data::Sample>{}), InvalidArgument);
  auto unlabeled = split.valid;
  unlabeled[0].label.reset();
  EXPECT_THROW(evaluate(net, unlabeled), InvalidArgument);
}

TEST(MetricsFile, RoundTripIsExact) {
  const auto r = compute_metrics(std::vector{0, 0, 1, 2, 2, 1, 0}, std::vector{0, 1, 1, 2, 0, 1, 2});
  std::stringstream ss;
  write_metrics(ss, r, "split=test");
  EXPECT_EQ(read_metrics(ss), r);
}

TEST(MetricsFile, RejectsUnknownKey) {
  const auto r = compute_metrics(std::vector{0, 1, 2}, std::vector{0, 1, 2});
  std::stringstream ss;
  write_metrics(ss, r);
  std::stringstream extra(ss.str() + "bogus 1\n");
  EXPECT_THROW(read_metrics(extra), FormatError);
  std::stringstream cut("accuracy 1\n");
  EXPECT_THROW(read_metrics(cut), FormatError);
}

TEST(MetricsFile, TablesUseOneDecimalPercent) {
  const auto r = compute_metrics(std::vector{0, 0, 1, 2}, std::vector{0, 1, 1, 2});
  std::ostringstream os;
  print_tables(os, r);
  const auto text = os.str();
  EXPECT_NE(text.find("75.0"), std::string::npos);
  EXPECT_NE(text.find("66.7"), std::string::npos);
  EXPECT_NE(text.find("<=5"), std::string::npos);
  EXPECT_NE(text.find("<=15"), std::string::npos);
}

}  // namespace
}  // namespace lpat::eval
