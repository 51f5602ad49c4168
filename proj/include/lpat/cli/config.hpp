// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lpat::cli {

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Flat `key = value` file: one key per line, `#` starts a comment, blank
/// lines ignored. Keys are [a-z0-9-_]+ and may not repeat. Throws ParseError
/// with the line number.
ConfigEntries parse_config(std::istream &is);
ConfigEntries load_config(const std::filesystem::path &path);

/// Inverse of parse_config, one `key = value` line per entry.
void write_config(std::ostream &os, const ConfigEntries &entries);

/// `--key=value` tokens, with '_' in keys mapped to '-'.
std::vector<std::string> config_to_args(const ConfigEntries &entries);

}  // namespace lpat::cli
