// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "lpat/tensor.hpp"

namespace lpat::training {

/// -(1/N) sum ln p(y_i), probabilities floored at 1e-12. Throws
/// InvalidArgument if any label is negative (unlabeled).
double nll_loss(const Matrix &probs, std::span<const int> labels);

/// (1/N') sum KL(reference_i || perturbed_i) over every column.
double lap_loss(const Matrix &reference, const Matrix &perturbed);

inline double total_loss(double nll, double lap, double lambda) { return nll + lambda * lap; }

}  // namespace lpat::training
