// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lpat/training/trainer.hpp"

namespace lpat::training {

/// Training report file:
///
///   # LPAT training report v1
///   # <free-form comment lines>
///   best_epoch <n>
///   epoch train_loss train_nll train_lap valid_loss valid_accuracy valid_macro_f1
///   <one row per epoch>
///
/// Values use round-trip decimal precision.
void write_report(std::ostream &os, const TrainReport &report, const std::string &comment = {});
void save_report(const TrainReport &report, const std::filesystem::path &path,
                 const std::string &comment = {});

/// Throws FormatError.
TrainReport read_report(std::istream &is);
TrainReport load_report(const std::filesystem::path &path);

}  // namespace lpat::training
