// SPDX-License-Identifier: Apache-2.0

#include "lpat/data/synthetic.hpp"

#include <cstdio>
#include <random>

#include "lpat/data/csv.hpp"
#include "lpat/errors.hpp"

namespace lpat::data {

namespace {

double truncated_normal(std::mt19937_64 &rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double z = normal(rng);
  while (z < -3.0 || z > 3.0) z = normal(rng);
  return z * scale;
}

DriveTimeline make_drive(const SyntheticConfig &cfg, const std::vector<double> &baselines,
                         std::string serial, bool failing, std::uint64_t stream) {
  std::mt19937_64 rng(stream);
  std::uniform_real_distribution<double> severity_dist(0.8, 1.2);
  const double severity = failing ? severity_dist(rng) : 0.0;
  std::vector<double> offsets(cfg.attributes);
  for (auto &o : offsets) o = truncated_normal(rng, cfg.drive_spread);

  DriveTimeline drive;
  drive.serial = std::move(serial);
  drive.records.reserve(cfg.days);
  for (std::size_t day = 0; day < cfg.days; ++day) {
    SmartRecord rec;
    rec.serial = drive.serial;
    rec.model = cfg.model;
    rec.date = cfg.start + std::chrono::days{static_cast<long>(day)};
    const long residual = static_cast<long>(cfg.days - 1 - day);
    rec.failure = failing && residual == 0;
    rec.attrs.resize(cfg.attributes);
    for (std::size_t a = 0; a < cfg.attributes; ++a) {
      double v = baselines[a] + offsets[a] + truncated_normal(rng, cfg.noise_scale);
      if (failing && is_drifting_attribute(a) && residual < cfg.ramp_days)
        v += severity * cfg.drift_magnitude * static_cast<double>(cfg.ramp_days - residual) /
             static_cast<double>(cfg.ramp_days);
      rec.attrs[a] = v;
    }
    drive.records.push_back(std::move(rec));
  }
  if (failing) drive.fail_date = drive.records.back().date;
  return drive;
}

}  // namespace

std::vector<std::string> synthetic_attribute_names(std::size_t count) {
  std::vector<std::string> names;
  const auto &defaults = default_attributes();
  for (std::size_t i = 0; i < count; ++i)
    names.push_back(i < defaults.size() ? defaults[i]
                                        : "smart_" + std::to_string(200 + i) + "_raw");
  return names;
}

std::vector<DriveTimeline> generate_synthetic(const SyntheticConfig &cfg) {
  if (cfg.attributes == 0) throw InvalidArgument("synthetic data needs at least one attribute");
  if (cfg.ramp_days <= 0) throw InvalidArgument("ramp length must be positive");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> baseline_dist(20.0, 80.0);
  std::vector<double> baselines(cfg.attributes);
  for (auto &b : baselines) b = baseline_dist(rng);

  std::vector<DriveTimeline> out;
  out.reserve(cfg.healthy + cfg.failed);
  char serial[32];
  for (std::size_t i = 0; i < cfg.healthy; ++i) {
    std::snprintf(serial, sizeof serial, "SYN-H%05zu", i);
    out.push_back(make_drive(cfg, baselines, serial, false, mix_seed(cfg.seed, 2 * i)));
  }
  for (std::size_t i = 0; i < cfg.failed; ++i) {
    std::snprintf(serial, sizeof serial, "SYN-F%05zu", i);
    out.push_back(make_drive(cfg, baselines, serial, true, mix_seed(cfg.seed, 2 * i + 1)));
  }
  return out;
}

}  // namespace lpat::data
