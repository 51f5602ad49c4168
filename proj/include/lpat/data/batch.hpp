// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "lpat/data/types.hpp"

namespace lpat::data {

/// Packs windows into the network's step-major layout: row t of sample i
/// becomes column t * batch + i. Throws ShapeError on mismatched windows.
SequenceBatch make_batch(std::span<const Sample *const> samples);
SequenceBatch make_batch(std::span<const Sample> samples);

/// Class indices of labeled samples; -1 for unlabeled ones.
std::vector<int> labels_of(std::span<const Sample *const> samples);

}  // namespace lpat::data
