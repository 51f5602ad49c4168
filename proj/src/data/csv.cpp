// SPDX-License-Identifier: Apache-2.0

#include "lpat/data/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>

#include "lpat/errors.hpp"

namespace lpat::data {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

bool parse_double(std::string_view s, double &out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto parse = [](std::string_view s, auto &v) {
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    return r.ec == std::errc() && r.ptr == s.data() + s.size();
  };
  if (!parse(text.substr(0, 4), y) || !parse(text.substr(5, 2), m) ||
      !parse(text.substr(8, 2), d))
    return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string_view meaning_of(HealthDegree h) {
  switch (h) {
    case HealthDegree::RedAlert:
      return "red alert";
    case HealthDegree::GoingToFail:
      return "going to fail";
    case HealthDegree::Healthy:
      return "healthy";
  }
  return "?";
}

const std::vector<std::string> &default_attributes() {
  static const std::vector<std::string> attrs = {
      "smart_5_raw",   "smart_9_raw",   "smart_12_raw",  "smart_187_raw",
      "smart_188_raw", "smart_193_raw", "smart_194_raw", "smart_197_raw"};
  return attrs;
}

IngestResult read_smart_csv(std::istream &is, std::span<const std::string> attributes,
                            const IngestOptions &options) {
  std::string line;
  if (!std::getline(is, line)) throw SchemaError("date");
  const auto header = split_fields(trim(line));
  std::map<std::string, std::size_t, std::less<>> column;
  for (std::size_t i = 0; i < header.size(); ++i) column.emplace(std::string(trim(header[i])), i);
  auto require = [&](const std::string &name) {
    const auto it = column.find(name);
    if (it == column.end()) throw SchemaError(name);
    return it->second;
  };
  const std::size_t c_date = require("date");
  const std::size_t c_serial = require("serial_number");
  const std::size_t c_model = require("model");
  const std::size_t c_failure = require("failure");
  std::vector<std::size_t> c_attrs;
  for (const auto &a : attributes) c_attrs.push_back(require(a));

  IngestResult result;
  std::map<std::string, DriveTimeline> drives;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    try {
      const auto fields = split_fields(row);
      if (fields.size() != header.size())
        throw ParseError(line_no, "expected " + std::to_string(header.size()) +
                                      " fields, found " + std::to_string(fields.size()));
      SmartRecord rec;
      const auto date = parse_date(trim(fields[c_date]));
      if (!date) throw ParseError(line_no, "invalid date '" + std::string(fields[c_date]) + "'");
      rec.date = *date;
      rec.serial = std::string(trim(fields[c_serial]));
      if (rec.serial.empty()) throw ParseError(line_no, "empty serial_number");
      rec.model = std::string(trim(fields[c_model]));
      const auto flag = trim(fields[c_failure]);
      if (flag == "1")
        rec.failure = true;
      else if (flag != "0")
        throw ParseError(line_no, "failure flag must be 0 or 1, found '" + std::string(flag) + "'");
      rec.attrs.reserve(c_attrs.size());
      for (std::size_t a = 0; a < c_attrs.size(); ++a) {
        const auto cell = trim(fields[c_attrs[a]]);
        if (cell.empty()) {
          rec.attrs.emplace_back();
          continue;
        }
        double v = 0.0;
        if (!parse_double(cell, v))
          throw ParseError(line_no, "non-numeric value '" + std::string(cell) + "' in column " +
                                        attributes[a]);
        rec.attrs.emplace_back(v);
      }
      auto &drive = drives[rec.serial];
      drive.serial = rec.serial;
      drive.records.push_back(std::move(rec));
    } catch (const ParseError &e) {
      if (!options.lenient) throw;
      result.skipped.push_back({line_no, e.what()});
    }
  }

  result.timelines.reserve(drives.size());
  for (auto &[serial, drive] : drives) {
    auto &recs = drive.records;
    std::stable_sort(recs.begin(), recs.end(),
                     [](const SmartRecord &a, const SmartRecord &b) { return a.date < b.date; });
    for (const auto &r : recs)
      if (r.failure) {
        drive.fail_date = r.date;
        break;
      }
    if (drive.fail_date) {
      const Date fail = *drive.fail_date;
      std::erase_if(recs, [fail](const SmartRecord &r) { return r.date > fail; });
    }
    result.timelines.push_back(std::move(drive));
  }
  return result;
}

IngestResult ingest_csv(const std::filesystem::path &path,
                        std::span<const std::string> attributes, const IngestOptions &options) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path.string() + "'");
  return read_smart_csv(is, attributes, options);
}

void write_smart_csv(std::ostream &os, std::span<const DriveTimeline> timelines,
                     std::span<const std::string> attributes) {
  os << "date,serial_number,model,capacity_bytes,failure";
  for (const auto &a : attributes) os << ',' << a;
  os << '\n';

  std::vector<const SmartRecord *> rows;
  for (const auto &t : timelines)
    for (const auto &r : t.records) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const SmartRecord *a, const SmartRecord *b) {
    return std::tie(a->date, a->serial) < std::tie(b->date, b->serial);
  });
  for (const SmartRecord *r : rows) {
    os << format_date(r->date) << ',' << r->serial << ',' << r->model << ",4000787030016,"
       << (r->failure ? 1 : 0);
    for (const auto &v : r->attrs) {
      os << ',';
      if (v) os << format_double(*v);
    }
    os << '\n';
  }
}

}  // namespace lpat::data
