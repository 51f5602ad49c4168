// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <limits>

#include "lpat/data/preprocess.hpp"
#include "lpat/errors.hpp"

namespace lpat::data {

ScalingParams minmax_fit(std::span<const DriveTimeline> timelines) {
  ScalingParams p;
  bool any = false;
  for (const auto &drive : timelines) {
    for (const auto &rec : drive.records) {
      if (!any) {
        p.v_min.assign(rec.attrs.size(), std::numeric_limits<double>::infinity());
        p.v_max.assign(rec.attrs.size(), -std::numeric_limits<double>::infinity());
        any = true;
      }
      if (rec.attrs.size() != p.size())
        throw ShapeError("minmax_fit: records disagree on attribute count");
      for (std::size_t a = 0; a < rec.attrs.size(); ++a) {
        if (!rec.attrs[a]) continue;
        p.v_min[a] = std::min(p.v_min[a], *rec.attrs[a]);
        p.v_max[a] = std::max(p.v_max[a], *rec.attrs[a]);
      }
    }
  }
  if (!any) throw InvalidArgument("minmax_fit: no records to fit");
  // An attribute that was missing everywhere scales to 0.
  for (std::size_t a = 0; a < p.size(); ++a)
    if (p.v_min[a] > p.v_max[a]) p.v_min[a] = p.v_max[a] = 0.0;
  return p;
}

double minmax_apply(double v, double v_min, double v_max) {
  if (!(v_max > v_min)) return 0.0;
  return std::clamp((v - v_min) / (v_max - v_min), 0.0, 1.0);
}

double minmax_apply(double v, const ScalingParams &params, std::size_t attribute) {
  return minmax_apply(v, params.v_min.at(attribute), params.v_max.at(attribute));
}

std::vector<DriveTimeline> scale_timelines(std::span<const DriveTimeline> timelines,
                                           const ScalingParams &params) {
  std::vector<DriveTimeline> out(timelines.begin(), timelines.end());
  for (auto &drive : out)
    for (auto &rec : drive.records) {
      if (rec.attrs.size() != params.size())
        throw ShapeError("scale_timelines: attribute count does not match scaling");
      for (std::size_t a = 0; a < rec.attrs.size(); ++a)
        if (rec.attrs[a]) rec.attrs[a] = minmax_apply(*rec.attrs[a], params, a);
    }
  return out;
}

}  // namespace lpat::data
