// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpat/model/network.hpp"

namespace lpat::model {

/// What a checkpoint needs to turn raw SMART rows back into network input.
struct InputSpec {
  Index window = 0;
  std::vector<std::string> attributes;
  std::vector<double> v_min;
  std::vector<double> v_max;

  bool operator==(const InputSpec &) const = default;
};

struct Checkpoint {
  Network network;
  InputSpec input;
};

inline constexpr const char *kCheckpointMagic = "LPAT-CKPT";
inline constexpr int kCheckpointVersion = 1;

/// Writes the text checkpoint. Parameters are stored row-major as hex
/// floating-point literals, so a load reproduces them bit for bit.
void write_checkpoint(std::ostream &os, const Checkpoint &ckpt);
void checkpoint_save(const Checkpoint &ckpt, const std::filesystem::path &path);

/// Throws FormatError (bad magic), VersionError, ArchitectureError (when
/// `expected` is given and differs) or TruncatedError.
Checkpoint read_checkpoint(std::istream &is,
                           const std::optional<Architecture> &expected = std::nullopt);
Checkpoint checkpoint_load(const std::filesystem::path &path,
                           const std::optional<Architecture> &expected = std::nullopt);

}  // namespace lpat::model
