// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "lpat/data/batch.hpp"
#include "lpat/data/cache.hpp"
#include "lpat/data/csv.hpp"
#include "lpat/data/kmeans.hpp"
#include "lpat/data/pipeline.hpp"
#include "lpat/data/preprocess.hpp"
#include "lpat/data/synthetic.hpp"
#include "test_support.hpp"

namespace lpat::data {
namespace {

Date day(int offset) { return Date{std::chrono::year{2020} / 1 / 1} + std::chrono::days{offset}; }

DriveTimeline drive(const std::string &serial, int days, std::size_t attrs, bool failed, double value = 1.0) {
  DriveTimeline d;
  d.serial = serial;
  for (int i = 0; i < days; ++i) {
    SmartRecord r;
    r.serial = serial;
    r.date = day(i);
    r.model = "M";
    r.attrs.assign(attrs, value + i);
    d.records.push_back(r);
  }
  if (failed) {
    d.records.back().failure = true;
    d.fail_date = d.records.back().date;
  }
  return d;
}

const std::string kHeader =
    "date,serial_number,model,capacity_bytes,failure,smart_5_raw,smart_9_raw\n";
const std::vector<std::string> kTwoAttrs{"smart_5_raw", "smart_9_raw"};

IngestResult read_text(const std::string &text, bool lenient = false) {
  std::istringstream is(text);
  return read_smart_csv(is, kTwoAttrs, {lenient});
}

// ---- ingest ----------------------------------------------------------------

TEST(Ingest, FixtureHasThreeDrivesOneFailed) {
  const auto r = ingest_csv(test::fixture("pipeline_50.csv"), default_attributes());
  ASSERT_EQ(r.timelines.size(), 3u);
  std::size_t failed = 0, rows = 0;
  for (const auto &t : r.timelines) {
    failed += t.failed();
    rows += t.records.size();
    for (std::size_t i = 1; i < t.records.size(); ++i) EXPECT_LT(t.records[i - 1].date, t.records[i].date);
  }
  EXPECT_EQ(failed, 1u);
  EXPECT_EQ(rows, 50u);
  EXPECT_EQ(format_date(*r.timelines[2].fail_date), "2019-03-16");
}

TEST(Ingest, EmptyFileWithHeaderGivesNoTimelines) {
  EXPECT_TRUE(read_text(kHeader).timelines.empty());
}

TEST(Ingest, MissingColumnNamesIt) {
  std::istringstream is("date,serial_number,model,failure,smart_9_raw\n");
  try {
    read_smart_csv(is, kTwoAttrs);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError &e) {
    EXPECT_NE(std::string(e.what()).find("smart_5_raw"), std::string::npos);
  }
}

TEST(Ingest, BadRowReportsLineNumber) {
  const std::string text = kHeader + "2020-01-01,S1,M,1,0,1,2\n2020-01-02,S1,M,1,0,abc,2\n";
  try {
    read_text(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  const auto r = read_text(text, true);
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].line, 3u);
  ASSERT_EQ(r.timelines.size(), 1u);
  EXPECT_EQ(r.timelines[0].records.size(), 1u);
}

TEST(Ingest, EmptyCellIsMissingAndRowsSortByDate) {
  const auto r = read_text(kHeader + "2020-01-03,S1,M,1,0,,2\n2020-01-01,S1,M,1,0,4,5\n");
  ASSERT_EQ(r.timelines.size(), 1u);
  const auto &recs = r.timelines[0].records;
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(format_date(recs[0].date), "2020-01-01");
  EXPECT_FALSE(recs[1].attrs[0].has_value());
  EXPECT_DOUBLE_EQ(*recs[1].attrs[1], 2.0);
}

TEST(Ingest, RowsAfterFailureAreDropped) {
  const auto r = read_text(kHeader + "2020-01-01,S1,M,1,0,1,1\n2020-01-02,S1,M,1,1,1,1\n2020-01-03,S1,M,1,0,1,1\n");
  ASSERT_EQ(r.timelines.size(), 1u);
  EXPECT_EQ(r.timelines[0].records.size(), 2u);
  EXPECT_EQ(format_date(*r.timelines[0].fail_date), "2020-01-02");
}

TEST(Ingest, WriteThenReadRoundTrips) {
  std::vector<DriveTimeline> drives{drive("A", 3, 2, false, 0.25), drive("B", 4, 2, true, 3.5)};
  drives[0].records[1].attrs[1].reset();
  std::ostringstream os;
  write_smart_csv(os, drives, kTwoAttrs);
  const auto back = read_text(os.str());
  ASSERT_EQ(back.timelines.size(), 2u);
  for (std::size_t d = 0; d < 2; ++d) {
    ASSERT_EQ(back.timelines[d].records.size(), drives[d].records.size());
    EXPECT_EQ(back.timelines[d].fail_date, drives[d].fail_date);
    for (std::size_t i = 0; i < drives[d].records.size(); ++i)
      EXPECT_EQ(back.timelines[d].records[i].attrs, drives[d].records[i].attrs);
  }
}

// ---- cleaning --------------------------------------------------------------

TEST(Cleaning, SameDayDuplicateKeepsLast) {
  auto d = drive("A", 20, 1, false);
  SmartRecord dup = d.records[5];
  dup.attrs[0] = 99.0;
  d.records.insert(d.records.begin() + 6, dup);
  const auto r = clean_and_aggregate({d}, 1);
  ASSERT_EQ(r.timelines.size(), 1u);
  EXPECT_EQ(r.timelines[0].records.size(), 20u);
  EXPECT_DOUBLE_EQ(*r.timelines[0].records[5].attrs[0], 99.0);
  EXPECT_EQ(r.report.duplicate_rows, 1u);
}

TEST(Cleaning, ShortDriveIsRemoved) {
  const auto r = clean_and_aggregate({drive("A", 10, 1, false)}, 20);
  EXPECT_TRUE(r.timelines.empty());
  EXPECT_EQ(r.report.removed_short, 1u);
}

TEST(Cleaning, LengthThresholdIsWindowPlusFifteen) {
  const auto r = clean_and_aggregate({drive("A", 34, 1, false), drive("B", 35, 1, true)}, 20);
  ASSERT_EQ(r.timelines.size(), 1u);
  EXPECT_EQ(r.timelines[0].serial, "B");
  EXPECT_EQ(r.report.removed_healthy, 1u);
}

TEST(Cleaning, FixtureDropsOneHealthyDrive) {
  auto in = ingest_csv(test::fixture("cleaning_missing.csv"), default_attributes()).timelines;
  const auto healthy_before = std::count_if(in.begin(), in.end(), [](const auto &t) { return !t.failed(); });
  const auto r = clean_and_aggregate(std::move(in), 1);
  const auto healthy_after =
      std::count_if(r.timelines.begin(), r.timelines.end(), [](const auto &t) { return !t.failed(); });
  EXPECT_EQ(healthy_before, 3);
  EXPECT_EQ(healthy_after, 2);
  EXPECT_EQ(r.report.removed(), 1u);
  EXPECT_EQ(r.report.removed_missing, 1u);
}

// ---- scaling ---------------------------------------------------------------

TEST(Scaling, FitFindsExtremaPerAttribute) {
  DriveTimeline d = drive("A", 3, 2, false);
  d.records[0].attrs = {0.0, 7.0};
  d.records[1].attrs = {5.0, 7.0};
  d.records[2].attrs = {10.0, 7.0};
  const auto p = minmax_fit(std::vector{d});
  EXPECT_EQ(p.v_min, (std::vector{0.0, 7.0}));
  EXPECT_EQ(p.v_max, (std::vector{10.0, 7.0}));
}

TEST(Scaling, ApplyExamples) {
  EXPECT_DOUBLE_EQ(minmax_apply(5.0, 0.0, 10.0), 0.5);
  EXPECT_DOUBLE_EQ(minmax_apply(0.0, 0.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(minmax_apply(15.0, 0.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(minmax_apply(-3.0, 0.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(minmax_apply(7.0, 7.0, 7.0), 0.0);
}

TEST(Scaling, FitWithoutRecordsThrows) {
  EXPECT_THROW(minmax_fit(std::vector<DriveTimeline>{}), InvalidArgument);
}

TEST(Scaling, ScaledValuesStayInUnitInterval) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 100.0);
  std::vector<DriveTimeline> fit{drive("A", 30, 3, false)}, other{drive("B", 30, 3, false)};
  for (auto *set : {&fit, &other})
    for (auto &r : (*set)[0].records)
      for (auto &a : r.attrs) a = n(rng);
  const auto p = minmax_fit(fit);
  for (const auto &t : scale_timelines(other, p))
    for (const auto &r : t.records)
      for (const auto &a : r.attrs) {
        EXPECT_GE(*a, 0.0);
        EXPECT_LE(*a, 1.0);
      }
}

// ---- k-means ---------------------------------------------------------------

TEST(KMeans, IdenticalDrivesKeptWithSharedCentroid) {
  Matrix pts(2, 3);
  pts << 1, 2, 3, 1, 2, 3;
  const auto r = kmeans(pts, 1, 5);
  EXPECT_TRUE(r.centroids.row(0).isApprox(pts.row(0)));
  EXPECT_EQ(representative_rows(pts, 1, 1.0, 5), (std::vector<std::size_t>{0, 1}));
}

TEST(KMeans, TwoBlobsMatchBruteForceAssignment) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 0.1);
  Matrix pts(10, 2);
  for (Index i = 0; i < 10; ++i) {
    const double cx = i < 5 ? 0.0 : 10.0;
    pts(i, 0) = cx + n(rng);
    pts(i, 1) = cx + n(rng);
  }
  const auto r = kmeans(pts, 2, 1);
  // Oracle: every labeling of 10 points into 2 nonempty groups, scored by
  // within-cluster squared distance to the group mean.
  double best = std::numeric_limits<double>::infinity();
  unsigned best_mask = 0;
  for (unsigned mask = 1; mask + 1 < (1u << 10); ++mask) {
    double cost = 0.0;
    for (unsigned g = 0; g < 2; ++g) {
      Vector mean = Vector::Zero(2);
      int count = 0;
      for (Index i = 0; i < 10; ++i)
        if (((mask >> i) & 1u) == g) mean += pts.row(i).transpose(), ++count;
      mean /= count;
      for (Index i = 0; i < 10; ++i)
        if (((mask >> i) & 1u) == g) cost += (pts.row(i).transpose() - mean).squaredNorm();
    }
    if (cost < best) best = cost, best_mask = mask;
  }
  for (Index i = 0; i < 10; ++i)
    for (Index j = 0; j < 10; ++j) {
      const bool same_oracle = ((best_mask >> i) & 1u) == ((best_mask >> j) & 1u);
      EXPECT_EQ(r.assignment[i] == r.assignment[j], same_oracle);
    }
  for (Index i = 0; i < 10; ++i) {
    Index nearest = 0;
    (r.centroids.rowwise() - pts.row(i)).rowwise().squaredNorm().minCoeff(&nearest);
    EXPECT_EQ(r.assignment[i], nearest);
  }
}

TEST(KMeans, KeepCountCeiling) {
  EXPECT_EQ(keep_count(0.3, 10), 3u);
  EXPECT_EQ(keep_count(0.3, 11), 4u);
  EXPECT_EQ(keep_count(0.3, 1), 1u);
  EXPECT_EQ(keep_count(1.0, 7), 7u);
}

TEST(KMeans, TooManyClustersThrows) {
  EXPECT_THROW(kmeans(Matrix::Zero(3, 2), 4, 1), InvalidArgument);
  EXPECT_THROW(kmeans(Matrix::Zero(3, 2), 0, 1), InvalidArgument);
}

TEST(KMeans, ObjectiveNeverIncreases) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix pts(60, 3);
    for (Index i = 0; i < pts.size(); ++i) pts.data()[i] = u(rng);
    const auto r = kmeans(pts, 5, seed);
    for (std::size_t i = 1; i < r.objective.size(); ++i) EXPECT_LE(r.objective[i], r.objective[i - 1] + 1e-12);
  }
}

TEST(KMeans, SubsetIsDeterministic) {
  std::vector<DriveTimeline> healthy;
  for (int i = 0; i < 30; ++i) healthy.push_back(drive("H" + std::to_string(i), 5, 2, false, i * 0.37));
  const auto a = kmeans_representative_subset(healthy, 4, 0.3, 9);
  const auto b = kmeans_representative_subset(healthy, 4, 0.3, 9);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].serial, b[i].serial);
  EXPECT_LT(a.size(), healthy.size());
}

// ---- windowing -------------------------------------------------------------

TEST(Windowing, ResidualLifeLabels) {
  EXPECT_EQ(label_for(true, 3), HealthDegree::RedAlert);
  EXPECT_EQ(label_for(true, 0), HealthDegree::RedAlert);
  EXPECT_EQ(label_for(true, 4), HealthDegree::RedAlert);
  EXPECT_EQ(label_for(true, 5), HealthDegree::GoingToFail);
  EXPECT_EQ(label_for(true, 10), HealthDegree::GoingToFail);
  EXPECT_EQ(label_for(true, 15), HealthDegree::GoingToFail);
  EXPECT_EQ(label_for(true, 16), std::nullopt);
  EXPECT_EQ(label_for(true, 20), std::nullopt);
  EXPECT_EQ(label_for(false, 3), HealthDegree::Healthy);
}

TEST(Windowing, EveryWindowGetsExactlyOneLabel) {
  const auto failed = drive("F", 40, 2, true);
  const auto healthy = drive("H", 40, 2, false);
  const auto w = window_and_label(std::vector{failed, healthy}, 5);
  EXPECT_EQ(w.labeled.size() + w.unlabeled.size(), 2u * 36u);
  std::array<int, 3> counts{};
  for (const auto &s : w.labeled) ++counts[class_index(*s.label)];
  EXPECT_EQ(counts[0], 5);
  EXPECT_EQ(counts[1], 11);
  EXPECT_EQ(counts[2], 36);
  EXPECT_EQ(w.unlabeled.size(), 20u);
  for (const auto &s : w.unlabeled) {
    EXPECT_FALSE(s.labeled());
    EXPECT_GT(days_between(s.window_end, *failed.fail_date), 15);
  }
}

TEST(Windowing, WindowRowsFollowRecords) {
  const auto w = window_and_label(std::vector{drive("H", 10, 2, false, 0.0)}, 4);
  ASSERT_EQ(w.labeled.size(), 7u);
  const auto &s = w.labeled[2];
  EXPECT_EQ(s.features.rows(), 4);
  EXPECT_EQ(s.features.cols(), 2);
  EXPECT_DOUBLE_EQ(s.features(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(s.features(3, 1), 5.0);
  EXPECT_EQ(s.window_end, day(5));
}

// ---- split -----------------------------------------------------------------

std::vector<DriveKey> keys(int healthy, int failed) {
  std::vector<DriveKey> k;
  for (int i = 0; i < healthy; ++i) k.push_back({"H" + std::to_string(i), false});
  for (int i = 0; i < failed; ++i) k.push_back({"F" + std::to_string(i), true});
  return k;
}

TEST(Split, HundredDrivesGive64_16_20) {
  const auto m = assign_splits(keys(90, 10), {0.8, 0.2}, 1);
  std::array<int, 3> counts{};
  for (const auto &[serial, part] : m) ++counts[static_cast<int>(part)];
  EXPECT_EQ(counts[0], 64);
  EXPECT_EQ(counts[1], 16);
  EXPECT_EQ(counts[2], 20);
}

TEST(Split, SameSeedSameMembership) {
  EXPECT_EQ(assign_splits(keys(40, 8), {}, 7), assign_splits(keys(40, 8), {}, 7));
  EXPECT_NE(assign_splits(keys(40, 8), {}, 7), assign_splits(keys(40, 8), {}, 8));
}

TEST(Split, TooFewDrivesThrows) {
  EXPECT_THROW(assign_splits(keys(2, 0), {}, 1), InvalidArgument);
  EXPECT_THROW(assign_splits(keys(10, 0), {1.0, 0.2}, 1), InvalidArgument);
}

TEST(Split, SerialsAreDisjointAndUnlabeledStayInTrain) {
  std::vector<DriveTimeline> drives;
  for (int i = 0; i < 20; ++i) drives.push_back(drive("H" + std::to_string(i), 25, 2, false));
  for (int i = 0; i < 6; ++i) drives.push_back(drive("F" + std::to_string(i), 30, 2, true));
  const auto split = split_dataset(window_and_label(drives, 5), {}, 3);
  std::set<std::string> train, valid, test;
  for (const auto &s : split.train_labeled) train.insert(s.serial);
  for (const auto &s : split.valid) valid.insert(s.serial);
  for (const auto &s : split.test) test.insert(s.serial);
  for (const auto &s : train) EXPECT_FALSE(valid.count(s) || test.count(s)) << s;
  for (const auto &s : valid) EXPECT_FALSE(test.count(s)) << s;
  for (const auto &s : split.train_unlabeled) {
    EXPECT_FALSE(s.labeled());
    EXPECT_FALSE(valid.count(s.serial) || test.count(s.serial));
  }
  EXPECT_FALSE(split.train_unlabeled.empty());
}

// ---- synthetic -------------------------------------------------------------

TEST(Synthetic, SingleFailedDrive) {
  SyntheticConfig c;
  c.healthy = 0;
  c.failed = 1;
  const auto d = generate_synthetic(c);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_TRUE(d[0].failed());
  EXPECT_EQ(*d[0].fail_date, d[0].records.back().date);
}

TEST(Synthetic, SameSeedByteIdentical) {
  SyntheticConfig c;
  c.healthy = 5;
  c.failed = 2;
  const auto names = synthetic_attribute_names(c.attributes);
  std::ostringstream a, b;
  write_smart_csv(a, generate_synthetic(c), names);
  write_smart_csv(b, generate_synthetic(c), names);
  EXPECT_EQ(a.str(), b.str());
  c.seed = 2;
  std::ostringstream other;
  write_smart_csv(other, generate_synthetic(c), names);
  EXPECT_NE(a.str(), other.str());
}

TEST(Synthetic, FailingDrivesDriftByHalfTheMagnitude) {
  SyntheticConfig c;
  c.healthy = 0;
  c.failed = 25;
  const auto drives = generate_synthetic(c);
  const auto healthy_days = c.days - static_cast<std::size_t>(c.ramp_days);
  for (const auto &d : drives) {
    ASSERT_TRUE(d.failed());
    for (std::size_t a = 0; a < c.attributes; ++a) {
      if (!is_drifting_attribute(a)) continue;
      double base = 0.0, tail = 0.0;
      for (std::size_t i = 0; i < healthy_days; ++i) base += *d.records[i].attrs[a];
      for (std::size_t i = d.records.size() - 5; i < d.records.size(); ++i) tail += *d.records[i].attrs[a];
      EXPECT_GE(tail / 5.0 - base / static_cast<double>(healthy_days), 0.5 * c.drift_magnitude)
          << d.serial << " attr " << a;
    }
  }
}

TEST(Synthetic, SurvivesCleaningIntact) {
  SyntheticConfig c;
  c.healthy = 8;
  c.failed = 3;
  const auto r = clean_and_aggregate(generate_synthetic(c), 20);
  EXPECT_EQ(r.timelines.size(), 11u);
  EXPECT_EQ(r.report.removed(), 0u);
}

// ---- cache and batches -----------------------------------------------------

DatasetSplit small_split() {
  PrepConfig cfg;
  cfg.attributes = default_attributes();
  cfg.window = 1;
  cfg.fractions = {0.67, 0.5};
  return prepare_dataset(ingest_csv(test::fixture("pipeline_50.csv"), cfg.attributes).timelines, cfg).split;
}

void expect_same_samples(const std::vector<Sample> &a, const std::vector<Sample> &b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].serial, b[i].serial);
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_EQ(a[i].window_end, b[i].window_end);
    EXPECT_TRUE(a[i].features == b[i].features);
  }
}

TEST(Cache, RoundTripIsExact) {
  auto split = small_split();
  split.train_unlabeled.push_back(split.train_labeled.front());
  split.train_unlabeled.back().label.reset();
  split.train_labeled.front().features(0, 0) = 0.1 + 0.2;
  std::stringstream ss;
  write_dataset(ss, split);
  const auto back = read_dataset(ss);
  EXPECT_EQ(back.window, split.window);
  EXPECT_EQ(back.attributes, split.attributes);
  EXPECT_EQ(back.scaling, split.scaling);
  expect_same_samples(back.train_labeled, split.train_labeled);
  expect_same_samples(back.train_unlabeled, split.train_unlabeled);
  expect_same_samples(back.valid, split.valid);
  expect_same_samples(back.test, split.test);
}

TEST(Cache, RejectsBadInput) {
  std::stringstream bad("NOT-A-CACHE\n");
  EXPECT_THROW(read_dataset(bad), FormatError);
  std::stringstream version("LPAT-DATA v9\n");
  EXPECT_THROW(read_dataset(version), VersionError);
  std::stringstream full;
  write_dataset(full, small_split());
  const auto text = full.str();
  std::stringstream cut(text.substr(0, text.size() / 2));
  EXPECT_THROW(read_dataset(cut), FormatError);
}

TEST(Batch, StepMajorLayout) {
  std::vector<Sample> s(2);
  s[0].features = Matrix{{1, 2}, {3, 4}, {5, 6}};
  s[1].features = Matrix{{7, 8}, {9, 10}, {11, 12}};
  s[0].label = HealthDegree::GoingToFail;
  const auto b = make_batch(s);
  EXPECT_EQ(b.batch, 2);
  EXPECT_EQ(b.steps, 3);
  ASSERT_EQ(b.values.cols(), 6);
  EXPECT_DOUBLE_EQ(b.values(0, 2 * 2 + 1), 11.0);
  EXPECT_DOUBLE_EQ(b.values(1, 1 * 2 + 0), 4.0);
  std::vector<const Sample *> ptrs{&s[0], &s[1]};
  EXPECT_EQ(labels_of(ptrs), (std::vector<int>{1, -1}));
  s[1].features.resize(2, 2);
  EXPECT_THROW(make_batch(s), ShapeError);
}

// ---- pipeline --------------------------------------------------------------

TEST(Pipeline, FixtureCounts) {
  PrepConfig cfg;
  cfg.attributes = default_attributes();
  cfg.window = 1;
  cfg.fractions = {0.67, 0.5};
  const auto r = prepare_dataset(ingest_csv(test::fixture("pipeline_50.csv"), cfg.attributes).timelines, cfg);
  EXPECT_EQ(r.summary.ingested.healthy, 2u);
  EXPECT_EQ(r.summary.ingested.failed, 1u);
  EXPECT_EQ(r.summary.selected.healthy, 2u);
  std::array<std::size_t, 3> total{};
  for (int c = 0; c < 3; ++c) total[c] = r.summary.train[c] + r.summary.valid[c] + r.summary.test[c];
  EXPECT_EQ(total, (std::array<std::size_t, 3>{5, 11, 34}));
  EXPECT_EQ(r.summary.unlabeled, 0u);
  EXPECT_FALSE(r.split.train_labeled.empty());
  EXPECT_FALSE(r.split.valid.empty());
  EXPECT_FALSE(r.split.test.empty());
  for (const auto *part : {&r.split.train_labeled, &r.split.valid, &r.split.test})
    for (const auto &s : *part) {
      EXPECT_GE(s.features.minCoeff(), 0.0);
      EXPECT_LE(s.features.maxCoeff(), 1.0);
    }
}

TEST(Pipeline, DeterministicUnderSeed) {
  std::stringstream a, b;
  write_dataset(a, small_split());
  write_dataset(b, small_split());
  EXPECT_EQ(a.str(), b.str());
}

TEST(Pipeline, OversizedWindowProducesNothing) {
  PrepConfig cfg;
  cfg.attributes = default_attributes();
  cfg.window = 20;
  try {
    prepare_dataset(ingest_csv(test::fixture("pipeline_50.csv"), cfg.attributes).timelines, cfg);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument &e) {
    EXPECT_NE(std::string(e.what()).find("no samples produced"), std::string::npos);
  }
}

}  // namespace
}  // namespace lpat::data
