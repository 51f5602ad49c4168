// SPDX-License-Identifier: Apache-2.0

#include "lpat/training/loss.hpp"

#include <algorithm>
#include <cmath>

#include "lpat/errors.hpp"
#include "lpat/perturbation.hpp"

namespace lpat::training {

double nll_loss(const Matrix &probs, std::span<const int> labels) {
  if (static_cast<Index>(labels.size()) != probs.cols())
    throw ShapeError("nll_loss: one label per column expected");
  if (labels.empty()) throw InvalidArgument("nll_loss: no samples");
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int y = labels[i];
    if (y < 0) throw InvalidArgument("nll_loss: unlabeled sample present");
    if (y >= probs.rows()) throw InvalidArgument("nll_loss: label out of range");
    sum -= std::log(std::max(probs(y, static_cast<Index>(i)), perturbation::kProbabilityFloor));
  }
  return sum / static_cast<double>(labels.size());
}

double lap_loss(const Matrix &reference, const Matrix &perturbed) {
  if (reference.cols() == 0) return 0.0;
  return perturbation::kl_columns(reference, perturbed).mean();
}

}  // namespace lpat::training
