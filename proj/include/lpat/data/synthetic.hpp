// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpat/data/types.hpp"

namespace lpat::data {

/// Generator settings for SMART-like drive histories.
///
/// Every drive reads `baseline + offset + noise` per attribute, where the
/// baseline is shared across drives, the offset is drawn once per drive
/// (spread `drive_spread`) and the noise daily (scale `noise_scale`,
/// truncated at 3 sigma). A failing drive additionally ramps the drifting
/// attributes (every even-indexed one) linearly up over its final
/// `ramp_days` days, reaching `severity * drift_magnitude` on the failure
/// day; severity is drawn per drive from [0.8, 1.2].
struct SyntheticConfig {
  std::size_t healthy = 100;
  std::size_t failed = 10;
  std::size_t attributes = 8;
  std::size_t days = 60;
  double drift_magnitude = 10.0;
  double noise_scale = 1.0;
  double drive_spread = 2.0;
  long ramp_days = 30;
  std::uint64_t seed = 1;
  std::string model = "SYN4000";
  Date start = Date{std::chrono::year{2016} / 1 / 1};
};

/// Column names for `count` raw SMART attributes: the default attribute
/// list first, then further `smart_<id>_raw` ids.
std::vector<std::string> synthetic_attribute_names(std::size_t count);

/// Deterministic for a given config. Failing drives fail on their last day.
/// Serials are `SYN-H<nnnnn>` / `SYN-F<nnnnn>`.
std::vector<DriveTimeline> generate_synthetic(const SyntheticConfig &config);

/// True for attributes the failure ramp acts on.
constexpr bool is_drifting_attribute(std::size_t attribute) { return attribute % 2 == 0; }

}  // namespace lpat::data
