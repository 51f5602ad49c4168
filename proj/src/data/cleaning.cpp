// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "lpat/data/preprocess.hpp"

namespace lpat::data {

CleaningResult clean_and_aggregate(std::vector<DriveTimeline> timelines, Index window) {
  CleaningResult out;
  for (auto &drive : timelines) {
    auto &recs = drive.records;
    std::stable_sort(recs.begin(), recs.end(),
                     [](const SmartRecord &a, const SmartRecord &b) { return a.date < b.date; });
    // Keep the last row of each run of equal dates.
    std::vector<SmartRecord> kept;
    kept.reserve(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (i + 1 < recs.size() && recs[i + 1].date == recs[i].date) {
        ++out.report.duplicate_rows;
        continue;
      }
      kept.push_back(std::move(recs[i]));
    }
    recs = std::move(kept);

    const bool missing = std::any_of(recs.begin(), recs.end(), [](const SmartRecord &r) {
      return std::any_of(r.attrs.begin(), r.attrs.end(),
                         [](const std::optional<double> &v) { return !v.has_value(); });
    });
    const bool too_short = static_cast<long>(recs.size()) < static_cast<long>(window) + kMinExtraDays;
    if (missing || too_short) {
      if (missing)
        ++out.report.removed_missing;
      else
        ++out.report.removed_short;
      if (drive.failed())
        ++out.report.removed_failed;
      else
        ++out.report.removed_healthy;
      continue;
    }
    out.timelines.push_back(std::move(drive));
  }
  return out;
}

}  // namespace lpat::data
