// SPDX-License-Identifier: Apache-2.0

#include "lpat/model/checkpoint.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lpat/errors.hpp"

namespace lpat::model {

namespace {

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hex(const std::string &token) {
  errno = 0;
  char *end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE)
    throw FormatError("checkpoint: bad floating-point literal '" + token + "'");
  return v;
}

class LineReader {
 public:
  explicit LineReader(std::istream &is) : is_(is) {}

  std::istringstream next(const char *what) {
    std::string line;
    if (!std::getline(is_, line))
      throw TruncatedError(std::string("checkpoint truncated: expected ") + what);
    ++line_;
    return std::istringstream(line);
  }

  std::size_t line() const { return line_; }

 private:
  std::istream &is_;
  std::size_t line_ = 0;
};

void expect_keyword(std::istringstream &ls, const std::string &keyword) {
  std::string got;
  ls >> got;
  if (got != keyword)
    throw FormatError("checkpoint: expected '" + keyword + "', found '" + got + "'");
}

Index read_index(std::istringstream &ls, const char *what) {
  long long v = -1;
  if (!(ls >> v) || v < 0)
    throw FormatError(std::string("checkpoint: bad value for ") + what);
  return static_cast<Index>(v);
}

}  // namespace

void write_checkpoint(std::ostream &os, const Checkpoint &ckpt) {
  const Architecture &a = ckpt.network.architecture();
  os << kCheckpointMagic << " v" << kCheckpointVersion << '\n';
  os << "architecture " << a.describe() << '\n';
  os << "window " << ckpt.input.window << '\n';
  os << "attributes " << ckpt.input.attributes.size();
  for (const auto &name : ckpt.input.attributes) os << ' ' << name;
  os << '\n';
  os << "scaling " << ckpt.input.v_min.size() << '\n';
  for (std::size_t i = 0; i < ckpt.input.v_min.size(); ++i)
    os << hex(ckpt.input.v_min[i]) << ' ' << hex(ckpt.input.v_max[i]) << '\n';

  auto write_matrix = [&](const char *name, const auto &m) {
    os << "block " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Index r = 0; r < m.rows(); ++r) {
      for (Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << hex(m(r, c));
      os << '\n';
    }
  };
  const Parameters &p = ckpt.network.parameters();
  const auto &names = Parameters::block_names();
  write_matrix(names[0], p.dense1.weight);
  write_matrix(names[1], p.dense1.bias);
  write_matrix(names[2], p.dense2.weight);
  write_matrix(names[3], p.dense2.bias);
  write_matrix(names[4], p.lstm.input_weight);
  write_matrix(names[5], p.lstm.recurrent_weight);
  write_matrix(names[6], p.lstm.bias);
  write_matrix(names[7], p.output.weight);
  write_matrix(names[8], p.output.bias);
  os << "end\n";
}

void checkpoint_save(const Checkpoint &ckpt, const std::filesystem::path &path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_checkpoint(os, ckpt);
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

Checkpoint read_checkpoint(std::istream &is, const std::optional<Architecture> &expected) {
  LineReader in(is);
  {
    auto ls = in.next("magic line");
    std::string magic, version;
    ls >> magic >> version;
    if (magic != kCheckpointMagic) throw FormatError("not an LPAT checkpoint (bad magic tag)");
    if (version != "v" + std::to_string(kCheckpointVersion))
      throw VersionError("unsupported checkpoint version '" + version + "'");
  }

  Architecture arch;
  {
    auto ls = in.next("architecture");
    expect_keyword(ls, "architecture");
    expect_keyword(ls, "inputs");
    arch.inputs = read_index(ls, "inputs");
    expect_keyword(ls, "dense1");
    arch.dense1 = read_index(ls, "dense1");
    expect_keyword(ls, "dense2");
    arch.dense2 = read_index(ls, "dense2");
    expect_keyword(ls, "lstm");
    arch.lstm = read_index(ls, "lstm");
    expect_keyword(ls, "classes");
    arch.classes = read_index(ls, "classes");
  }
  if (expected && !(*expected == arch))
    throw ArchitectureError("checkpoint architecture (" + arch.describe() +
                            ") does not match expected (" + expected->describe() + ")");

  Checkpoint ckpt;
  {
    auto ls = in.next("window");
    expect_keyword(ls, "window");
    ckpt.input.window = read_index(ls, "window");
  }
  {
    auto ls = in.next("attributes");
    expect_keyword(ls, "attributes");
    const Index n = read_index(ls, "attribute count");
    for (Index i = 0; i < n; ++i) {
      std::string name;
      if (!(ls >> name)) throw FormatError("checkpoint: attribute list is short");
      ckpt.input.attributes.push_back(name);
    }
  }
  {
    auto ls = in.next("scaling");
    expect_keyword(ls, "scaling");
    const Index n = read_index(ls, "scaling count");
    for (Index i = 0; i < n; ++i) {
      auto row = in.next("scaling row");
      std::string lo, hi;
      if (!(row >> lo >> hi)) throw FormatError("checkpoint: bad scaling row");
      ckpt.input.v_min.push_back(parse_hex(lo));
      ckpt.input.v_max.push_back(parse_hex(hi));
    }
  }

  Parameters p = Parameters::zeros(arch);
  auto read_block = [&](const char *name, auto &m) {
    auto ls = in.next(name);
    expect_keyword(ls, "block");
    expect_keyword(ls, name);
    const Index rows = read_index(ls, "rows");
    const Index cols = read_index(ls, "cols");
    if (rows != m.rows() || cols != m.cols())
      throw ArchitectureError(std::string("checkpoint block ") + name +
                              " has the wrong shape");
    for (Index r = 0; r < rows; ++r) {
      auto row = in.next(name);
      for (Index c = 0; c < cols; ++c) {
        std::string token;
        if (!(row >> token))
          throw TruncatedError(std::string("checkpoint truncated inside ") + name);
        m(r, c) = parse_hex(token);
      }
    }
  };
  const auto &names = Parameters::block_names();
  read_block(names[0], p.dense1.weight);
  read_block(names[1], p.dense1.bias);
  read_block(names[2], p.dense2.weight);
  read_block(names[3], p.dense2.bias);
  read_block(names[4], p.lstm.input_weight);
  read_block(names[5], p.lstm.recurrent_weight);
  read_block(names[6], p.lstm.bias);
  read_block(names[7], p.output.weight);
  read_block(names[8], p.output.bias);
  {
    auto ls = in.next("end marker");
    expect_keyword(ls, "end");
  }
  ckpt.network = Network(arch, std::move(p));
  return ckpt;
}

Checkpoint checkpoint_load(const std::filesystem::path &path,
                           const std::optional<Architecture> &expected) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open checkpoint '" + path.string() + "'");
  return read_checkpoint(is, expected);
}

}  // namespace lpat::model
