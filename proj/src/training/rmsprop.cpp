// SPDX-License-Identifier: Apache-2.0

#include "lpat/training/rmsprop.hpp"

#include "lpat/errors.hpp"

namespace lpat::training {

RmsProp::RmsProp(const model::Architecture &arch, RmsPropSettings settings)
    : settings_(settings), acc_(model::Parameters::zeros(arch)) {
  if (!(settings.learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
  if (!(settings.rho >= 0.0 && settings.rho < 1.0)) throw InvalidArgument("rho must lie in [0, 1)");
  if (!(settings.delta > 0.0)) throw InvalidArgument("delta must be positive");
}

void RmsProp::step(model::Parameters &params, const model::Parameters &grads) {
  auto p = params.blocks();
  const auto g = grads.blocks();
  auto a = acc_.blocks();
  for (std::size_t b = 0; b < model::kParameterBlockCount; ++b) {
    if (p[b].size() != g[b].size() || p[b].size() != a[b].size())
      throw ShapeError("rmsprop: gradient does not match parameters");
    for (std::size_t i = 0; i < p[b].size(); ++i) rmsprop_update(p[b][i], a[b][i], g[b][i], settings_);
  }
}

}  // namespace lpat::training
