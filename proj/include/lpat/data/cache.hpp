// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>

#include "lpat/data/types.hpp"

namespace lpat::data {

/// Dataset cache, a line-oriented text file:
///
///   LPAT-DATA v1
///   window <w>
///   attributes <n> <name>...
///   scaling <n>
///   <v_min> <v_max>                       (n lines)
///   samples <count>
///   sample <part> <serial> <YYYY-MM-DD> <label>
///   <n values>                            (w lines)
///   ...
///   end
///
/// <part> is one of train, unlabeled, valid, test; <label> is 0, 1, 2 or U.
/// Numbers use the shortest decimal form that reads back to the same double.
void write_dataset(std::ostream &os, const DatasetSplit &split);
void save_dataset(const DatasetSplit &split, const std::filesystem::path &path);

/// Throws FormatError, VersionError or TruncatedError.
DatasetSplit read_dataset(std::istream &is);
DatasetSplit load_dataset(const std::filesystem::path &path);

}  // namespace lpat::data
