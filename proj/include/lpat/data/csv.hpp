// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lpat/data/types.hpp"

namespace lpat::data {

/// Attribute columns used when none are given: a small set of raw SMART
/// counters commonly associated with failure (reallocated and pending
/// sectors, uncorrectable errors, power-on hours, temperature, ...).
const std::vector<std::string> &default_attributes();

struct IngestOptions {
  /// Skip unparseable rows (recording them) instead of failing.
  bool lenient = false;
};

struct RowIssue {
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<DriveTimeline> timelines;  // sorted by serial
  std::vector<RowIssue> skipped;         // only populated when lenient
};

/// Reads a Backblaze-schema CSV (`date,serial_number,model,...,failure,
/// smart_<id>_normalized,smart_<id>_raw,...`). One timeline per serial,
/// records date-sorted (stable, so same-day duplicates keep file order).
/// A drive's fail_date is its first day flagged failure=1; any later rows
/// for that drive are discarded.
///
/// Throws SchemaError for a missing column and ParseError (with the line
/// number) for a malformed row unless `options.lenient` is set.
IngestResult read_smart_csv(std::istream &is, std::span<const std::string> attributes,
                            const IngestOptions &options = {});
IngestResult ingest_csv(const std::filesystem::path &path,
                        std::span<const std::string> attributes,
                        const IngestOptions &options = {});

/// Writes timelines in the Backblaze schema, rows ordered by (date, serial).
/// Raw attribute values are written in shortest round-trip form; missing
/// values become empty cells.
void write_smart_csv(std::ostream &os, std::span<const DriveTimeline> timelines,
                     std::span<const std::string> attributes);

}  // namespace lpat::data
