// SPDX-License-Identifier: Apache-2.0

#include "lpat/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "lpat/errors.hpp"

namespace lpat::cli {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string &k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

}  // namespace

ConfigEntries parse_config(std::istream &is) {
  ConfigEntries out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ParseError(line_no, "bad key '" + key + "'");
    if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
    std::string norm = key;
    std::replace(norm.begin(), norm.end(), '_', '-');
    if (!seen.insert(norm).second) throw ParseError(line_no, "duplicate key '" + key + "'");
    out.emplace_back(key, value);
  }
  return out;
}

ConfigEntries load_config(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open config file '" + path.string() + "'");
  return parse_config(is);
}

void write_config(std::ostream &os, const ConfigEntries &entries) {
  for (const auto &[k, v] : entries) os << k << " = " << v << '\n';
}

std::vector<std::string> config_to_args(const ConfigEntries &entries) {
  std::vector<std::string> args;
  for (auto [k, v] : entries) {
    std::replace(k.begin(), k.end(), '_', '-');
    args.push_back("--" + k + "=" + v);
  }
  return args;
}

}  // namespace lpat::cli
