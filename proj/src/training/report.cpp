// SPDX-License-Identifier: Apache-2.0

#include "lpat/training/report.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "lpat/errors.hpp"

namespace lpat::training {

namespace {

constexpr const char *kColumns =
    "epoch train_loss train_nll train_lap valid_loss valid_accuracy valid_macro_f1";

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
T parse(const std::string &token, std::size_t line) {
  T v{};
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw FormatError("report line " + std::to_string(line) + ": bad value '" + token + "'");
  return v;
}

}  // namespace

void write_report(std::ostream &os, const TrainReport &report, const std::string &comment) {
  os << "# LPAT training report v1\n";
  if (!comment.empty()) {
    std::istringstream lines(comment);
    for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
  }
  os << "best_epoch " << report.best_epoch << '\n';
  os << kColumns << '\n';
  for (const auto &e : report.epochs)
    os << e.epoch << ' ' << num(e.train_loss) << ' ' << num(e.train_nll) << ' ' << num(e.train_lap) << ' '
       << num(e.valid_loss) << ' ' << num(e.valid_accuracy) << ' ' << num(e.valid_macro_f1) << '\n';
}

void save_report(const TrainReport &report, const std::filesystem::path &path, const std::string &comment) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_report(os, report, comment);
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

TrainReport read_report(std::istream &is) {
  TrainReport report;
  bool have_best = false, have_columns = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!have_best) {
      std::istringstream ls(line);
      std::string key, value;
      if (!(ls >> key >> value) || key != "best_epoch")
        throw FormatError("report line " + std::to_string(line_no) + ": expected best_epoch");
      report.best_epoch = parse<std::size_t>(value, line_no);
      have_best = true;
      continue;
    }
    if (!have_columns) {
      if (line != kColumns) throw FormatError("report line " + std::to_string(line_no) + ": unexpected column header");
      have_columns = true;
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> f;
    for (std::string t; ls >> t;) f.push_back(t);
    if (f.size() != 7) throw FormatError("report line " + std::to_string(line_no) + ": expected 7 columns");
    EpochRecord e;
    e.epoch = parse<std::size_t>(f[0], line_no);
    e.train_loss = parse<double>(f[1], line_no);
    e.train_nll = parse<double>(f[2], line_no);
    e.train_lap = parse<double>(f[3], line_no);
    e.valid_loss = parse<double>(f[4], line_no);
    e.valid_accuracy = parse<double>(f[5], line_no);
    e.valid_macro_f1 = parse<double>(f[6], line_no);
    report.epochs.push_back(e);
  }
  if (!have_columns) throw FormatError("report is missing its header");
  if (report.best_epoch > report.epochs.size()) throw FormatError("report best_epoch out of range");
  return report;
}

TrainReport load_report(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open report '" + path.string() + "'");
  return read_report(is);
}

}  // namespace lpat::training
