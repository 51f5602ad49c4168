// SPDX-License-Identifier: Apache-2.0

#include "lpat/data/cache.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lpat/errors.hpp"

namespace lpat::data {

namespace {

constexpr const char *kMagic = "LPAT-DATA";
constexpr const char *kVersion = "v1";

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_num(const std::string &token, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw FormatError("dataset cache line " + std::to_string(line) + ": bad number '" + token + "'");
  return v;
}

class Lines {
 public:
  explicit Lines(std::istream &is) : is_(is) {}
  std::istringstream next(const char *what) {
    std::string line;
    if (!std::getline(is_, line))
      throw TruncatedError(std::string("dataset cache truncated: expected ") + what);
    ++no_;
    return std::istringstream(line);
  }
  std::size_t line() const { return no_; }

 private:
  std::istream &is_;
  std::size_t no_ = 0;
};

void keyword(std::istringstream &ls, const char *want, std::size_t line) {
  std::string got;
  ls >> got;
  if (got != want)
    throw FormatError("dataset cache line " + std::to_string(line) + ": expected '" + want +
                      "', found '" + got + "'");
}

long count(std::istringstream &ls, std::size_t line) {
  long v = -1;
  if (!(ls >> v) || v < 0)
    throw FormatError("dataset cache line " + std::to_string(line) + ": bad count");
  return v;
}

}  // namespace

void write_dataset(std::ostream &os, const DatasetSplit &split) {
  os << kMagic << ' ' << kVersion << '\n';
  os << "window " << split.window << '\n';
  os << "attributes " << split.attributes.size();
  for (const auto &a : split.attributes) os << ' ' << a;
  os << '\n';
  os << "scaling " << split.scaling.size() << '\n';
  for (std::size_t a = 0; a < split.scaling.size(); ++a)
    os << num(split.scaling.v_min[a]) << ' ' << num(split.scaling.v_max[a]) << '\n';

  const std::size_t total = split.train_labeled.size() + split.train_unlabeled.size() +
                            split.valid.size() + split.test.size();
  os << "samples " << total << '\n';
  auto emit = [&](const char *part, const std::vector<Sample> &samples) {
    for (const auto &s : samples) {
      os << "sample " << part << ' ' << s.serial << ' ' << format_date(s.window_end) << ' ';
      if (s.label)
        os << class_index(*s.label);
      else
        os << 'U';
      os << '\n';
      for (Index r = 0; r < s.features.rows(); ++r) {
        for (Index c = 0; c < s.features.cols(); ++c) os << (c ? " " : "") << num(s.features(r, c));
        os << '\n';
      }
    }
  };
  emit("train", split.train_labeled);
  emit("unlabeled", split.train_unlabeled);
  emit("valid", split.valid);
  emit("test", split.test);
  os << "end\n";
}

void save_dataset(const DatasetSplit &split, const std::filesystem::path &path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_dataset(os, split);
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

DatasetSplit read_dataset(std::istream &is) {
  Lines in(is);
  DatasetSplit split;
  {
    auto ls = in.next("magic line");
    std::string magic, version;
    ls >> magic >> version;
    if (magic != kMagic) throw FormatError("not an LPAT dataset cache (bad magic tag)");
    if (version != kVersion) throw VersionError("unsupported dataset cache version '" + version + "'");
  }
  {
    auto ls = in.next("window");
    keyword(ls, "window", in.line());
    split.window = count(ls, in.line());
  }
  {
    auto ls = in.next("attributes");
    keyword(ls, "attributes", in.line());
    const long n = count(ls, in.line());
    for (long i = 0; i < n; ++i) {
      std::string name;
      if (!(ls >> name)) throw FormatError("dataset cache: attribute list is short");
      split.attributes.push_back(name);
    }
  }
  {
    auto ls = in.next("scaling");
    keyword(ls, "scaling", in.line());
    const long n = count(ls, in.line());
    for (long i = 0; i < n; ++i) {
      auto row = in.next("scaling row");
      std::string lo, hi;
      if (!(row >> lo >> hi)) throw FormatError("dataset cache: bad scaling row");
      split.scaling.v_min.push_back(parse_num(lo, in.line()));
      split.scaling.v_max.push_back(parse_num(hi, in.line()));
    }
  }
  const Index w = split.window;
  const auto n_attr = static_cast<Index>(split.attributes.size());
  long total = 0;
  {
    auto ls = in.next("sample count");
    keyword(ls, "samples", in.line());
    total = count(ls, in.line());
  }
  for (long k = 0; k < total; ++k) {
    auto ls = in.next("sample header");
    keyword(ls, "sample", in.line());
    std::string part, serial, date, label;
    if (!(ls >> part >> serial >> date >> label))
      throw FormatError("dataset cache line " + std::to_string(in.line()) + ": bad sample header");
    Sample s;
    s.serial = serial;
    const auto d = parse_date(date);
    if (!d) throw FormatError("dataset cache: bad date '" + date + "'");
    s.window_end = *d;
    if (label == "0" || label == "1" || label == "2")
      s.label = static_cast<HealthDegree>(label[0] - '0');
    else if (label != "U")
      throw FormatError("dataset cache: bad label '" + label + "'");
    s.features.resize(w, n_attr);
    for (Index r = 0; r < w; ++r) {
      auto row = in.next("sample row");
      for (Index c = 0; c < n_attr; ++c) {
        std::string token;
        if (!(row >> token)) throw TruncatedError("dataset cache truncated inside a sample");
        s.features(r, c) = parse_num(token, in.line());
      }
    }
    if (part == "train" && s.label)
      split.train_labeled.push_back(std::move(s));
    else if (part == "unlabeled" && !s.label)
      split.train_unlabeled.push_back(std::move(s));
    else if (part == "valid" && s.label)
      split.valid.push_back(std::move(s));
    else if (part == "test" && s.label)
      split.test.push_back(std::move(s));
    else
      throw FormatError("dataset cache: sample part '" + part + "' does not fit label '" + label + "'");
  }
  {
    auto ls = in.next("end marker");
    keyword(ls, "end", in.line());
  }
  return split;
}

DatasetSplit load_dataset(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open dataset cache '" + path.string() + "'");
  return read_dataset(is);
}

}  // namespace lpat::data
