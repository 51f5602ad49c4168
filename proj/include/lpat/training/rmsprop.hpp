// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "lpat/model/network.hpp"

namespace lpat::training {

struct RmsPropSettings {
  double learning_rate = 1e-3;
  double rho = 0.9;
  double delta = 1e-8;
};

/// acc <- rho * acc + (1 - rho) * g^2;  theta <- theta - lr * g / (sqrt(acc) + delta)
inline void rmsprop_update(double &theta, double &acc, double g, const RmsPropSettings &s) {
  acc = s.rho * acc + (1.0 - s.rho) * g * g;
  theta -= s.learning_rate * g / (std::sqrt(acc) + s.delta);
}

class RmsProp {
 public:
  RmsProp(const model::Architecture &arch, RmsPropSettings settings);

  void step(model::Parameters &params, const model::Parameters &grads);

  const model::Parameters &accumulators() const { return acc_; }
  const RmsPropSettings &settings() const { return settings_; }

 private:
  RmsPropSettings settings_;
  model::Parameters acc_;
};

}  // namespace lpat::training
