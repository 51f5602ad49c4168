// SPDX-License-Identifier: Apache-2.0

#include "lpat/data/preprocess.hpp"
#include "lpat/errors.hpp"

namespace lpat::data {

namespace {
constexpr long kRedAlertDays = 5;
constexpr long kGoingToFailDays = 15;
}  // namespace

std::optional<HealthDegree> label_for(bool failed, long residual_days) {
  if (!failed) return HealthDegree::Healthy;
  if (residual_days < kRedAlertDays) return HealthDegree::RedAlert;
  if (residual_days <= kGoingToFailDays) return HealthDegree::GoingToFail;
  return std::nullopt;
}

WindowedSamples window_and_label(std::span<const DriveTimeline> timelines, Index window) {
  if (window <= 0) throw InvalidArgument("window length must be positive");
  WindowedSamples out;
  for (const auto &drive : timelines) {
    const auto &recs = drive.records;
    const Index count = static_cast<Index>(recs.size());
    for (Index end = window - 1; end < count; ++end) {
      Sample s;
      s.serial = drive.serial;
      s.window_end = recs[end].date;
      const Index n = static_cast<Index>(recs[end].attrs.size());
      s.features.resize(window, n);
      for (Index r = 0; r < window; ++r) {
        const auto &rec = recs[end - window + 1 + r];
        if (static_cast<Index>(rec.attrs.size()) != n)
          throw ShapeError("window_and_label: inconsistent attribute count");
        for (Index a = 0; a < n; ++a) {
          if (!rec.attrs[a]) throw InvalidArgument("window_and_label: drive " + drive.serial +
                                                   " has a missing value; clean first");
          s.features(r, a) = *rec.attrs[a];
        }
      }
      const long residual =
          drive.fail_date ? days_between(s.window_end, *drive.fail_date) : 0;
      s.label = label_for(drive.failed(), residual);
      (s.label ? out.labeled : out.unlabeled).push_back(std::move(s));
    }
  }
  return out;
}

std::vector<DriveKey> labeled_drives(std::span<const DriveTimeline> timelines, Index window) {
  std::vector<DriveKey> out;
  for (const auto &drive : timelines) {
    if (static_cast<Index>(drive.records.size()) < window) continue;
    if (drive.failed()) {
      const long residual = days_between(drive.records.back().date, *drive.fail_date);
      if (!label_for(true, residual)) continue;
    }
    out.push_back({drive.serial, drive.failed()});
  }
  return out;
}

}  // namespace lpat::data
