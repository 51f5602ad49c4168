// SPDX-License-Identifier: Apache-2.0

#include "lpat/eval/metrics.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "lpat/data/batch.hpp"
#include "lpat/errors.hpp"
#include "lpat/training/trainer.hpp"

namespace lpat::eval {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * v);
  return buf;
}

}  // namespace

void ConfusionMatrix::add(int truth, int predicted) {
  if (truth < 0 || truth >= kClasses || predicted < 0 || predicted >= kClasses)
    throw InvalidArgument("class index out of range");
  ++counts[truth][predicted];
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto &row : counts)
    for (auto c : row) t += c;
  return t;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (int c = 0; c < kClasses; ++c) t += counts[c][c];
  return t;
}

bool MetricsReport::operator==(const MetricsReport &o) const {
  if (!(confusion == o.confusion) || accuracy != o.accuracy || macro_precision != o.macro_precision ||
      macro_recall != o.macro_recall || macro_f1 != o.macro_f1)
    return false;
  for (int c = 0; c < kClasses; ++c) {
    const auto &a = per_class[c];
    const auto &b = o.per_class[c];
    if (a.precision != b.precision || a.recall != b.recall || a.f1 != b.f1 || a.support != b.support)
      return false;
  }
  return true;
}

MetricsReport compute_metrics(const ConfusionMatrix &cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw InvalidArgument("cannot compute metrics for an empty sample set");
  MetricsReport r;
  r.confusion = cm;
  r.accuracy = ratio(cm.trace(), total);
  int present = 0;
  for (int c = 0; c < kClasses; ++c) {
    std::size_t predicted = 0, actual = 0;
    for (int k = 0; k < kClasses; ++k) {
      predicted += cm.counts[k][c];
      actual += cm.counts[c][k];
    }
    auto &s = r.per_class[c];
    const std::size_t tp = cm.counts[c][c];
    s.precision = ratio(tp, predicted);
    s.recall = ratio(tp, actual);
    s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    s.support = actual;
    if (actual > 0) {
      ++present;
      r.macro_precision += s.precision;
      r.macro_recall += s.recall;
      r.macro_f1 += s.f1;
    }
  }
  r.macro_precision /= present;
  r.macro_recall /= present;
  r.macro_f1 /= present;
  return r;
}

MetricsReport compute_metrics(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) throw InvalidArgument("truth and predictions differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) cm.add(truth[i], predicted[i]);
  return compute_metrics(cm);
}

MetricsReport evaluate(const model::Network &net, std::span<const data::Sample> samples) {
  if (samples.empty()) throw InvalidArgument("cannot evaluate an empty sample set");
  std::vector<int> truth;
  truth.reserve(samples.size());
  for (const auto &s : samples) {
    if (!s.label) throw InvalidArgument("evaluate: sample " + s.serial + " is unlabeled");
    truth.push_back(data::class_index(*s.label));
  }
  std::vector<int> predicted;
  for (const auto &p : training::predict_all(net, samples)) predicted.push_back(p.label);
  return compute_metrics(truth, predicted);
}

std::array<HorizonRow, 2> per_horizon_breakdown(const MetricsReport &r) {
  const auto &c0 = r.per_class[0];
  const auto &c1 = r.per_class[1];
  return {HorizonRow{"<=5", c0.precision, c0.recall, c0.f1},
          HorizonRow{"<=15", c1.precision, c1.recall, c1.f1}};
}

void write_metrics(std::ostream &os, const MetricsReport &r, const std::string &title) {
  os << "# LPAT metrics v1\n";
  if (!title.empty()) os << "# " << title << '\n';
  os << "samples " << r.confusion.total() << '\n';
  os << "accuracy " << num(r.accuracy) << '\n';
  os << "macro_precision " << num(r.macro_precision) << '\n';
  os << "macro_recall " << num(r.macro_recall) << '\n';
  os << "macro_f1 " << num(r.macro_f1) << '\n';
  for (int c = 0; c < kClasses; ++c) {
    const auto &s = r.per_class[c];
    const std::string k = std::to_string(c);
    os << "precision_" << k << ' ' << num(s.precision) << '\n';
    os << "recall_" << k << ' ' << num(s.recall) << '\n';
    os << "f1_" << k << ' ' << num(s.f1) << '\n';
    os << "support_" << k << ' ' << s.support << '\n';
  }
  for (int t = 0; t < kClasses; ++t)
    for (int p = 0; p < kClasses; ++p)
      os << "confusion_" << t << '_' << p << ' ' << r.confusion.counts[t][p] << '\n';
  std::ostringstream tables;
  print_tables(tables, r);
  std::istringstream lines(tables.str());
  for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
}

void save_metrics(const MetricsReport &r, const std::filesystem::path &path, const std::string &title) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_metrics(os, r, title);
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

MetricsReport read_metrics(std::istream &is) {
  std::map<std::string, std::string> kv;
  std::size_t line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key, value, extra;
    if (!(ls >> key >> value) || (ls >> extra))
      throw FormatError("metrics line " + std::to_string(line_no) + ": expected '<key> <value>'");
    if (!kv.emplace(key, value).second)
      throw FormatError("metrics line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  auto take = [&](const std::string &key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw FormatError("metrics file lacks '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto real = [&](const std::string &key) {
    const std::string v = take(key);
    double d = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), d);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
      throw FormatError("metrics: bad value for '" + key + "'");
    return d;
  };
  auto whole = [&](const std::string &key) {
    const std::string v = take(key);
    std::size_t n = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
      throw FormatError("metrics: bad count for '" + key + "'");
    return n;
  };

  MetricsReport r;
  const std::size_t samples = whole("samples");
  r.accuracy = real("accuracy");
  r.macro_precision = real("macro_precision");
  r.macro_recall = real("macro_recall");
  r.macro_f1 = real("macro_f1");
  for (int c = 0; c < kClasses; ++c) {
    const std::string k = std::to_string(c);
    r.per_class[c].precision = real("precision_" + k);
    r.per_class[c].recall = real("recall_" + k);
    r.per_class[c].f1 = real("f1_" + k);
    r.per_class[c].support = whole("support_" + k);
  }
  for (int t = 0; t < kClasses; ++t)
    for (int p = 0; p < kClasses; ++p)
      r.confusion.counts[t][p] = whole("confusion_" + std::to_string(t) + '_' + std::to_string(p));
  if (!kv.empty()) throw FormatError("metrics: unknown key '" + kv.begin()->first + "'");
  if (r.confusion.total() != samples) throw FormatError("metrics: confusion counts do not sum to samples");
  return r;
}

MetricsReport load_metrics(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open metrics file '" + path.string() + "'");
  return read_metrics(is);
}

void print_tables(std::ostream &os, const MetricsReport &r) {
  char line[128];
  std::snprintf(line, sizeof line, "%-9s %-9s %-9s %s\n", "Accuracy", "Precision", "Recall", "Macro-F1");
  os << line;
  std::snprintf(line, sizeof line, "%-9s %-9s %-9s %s\n", pct(r.accuracy).c_str(),
                pct(r.macro_precision).c_str(), pct(r.macro_recall).c_str(), pct(r.macro_f1).c_str());
  os << line;
  std::snprintf(line, sizeof line, "%-8s %-9s %-9s %s\n", "Horizon", "Precision", "Recall", "Macro-F1");
  os << line;
  for (const auto &row : per_horizon_breakdown(r)) {
    std::snprintf(line, sizeof line, "%-8s %-9s %-9s %s\n", row.horizon.c_str(), pct(row.precision).c_str(),
                  pct(row.recall).c_str(), pct(row.f1).c_str());
    os << line;
  }
}

}  // namespace lpat::eval
