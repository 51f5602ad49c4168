// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lpat/data/types.hpp"
#include "lpat/model/network.hpp"
#include "lpat/perturbation.hpp"

namespace lpat::training {

struct TrainConfig {
  /// Hidden widths; `inputs` is taken from the dataset.
  model::Architecture architecture;
  double learning_rate = 1e-3;
  std::size_t batch_size = 128;
  std::size_t epochs = 210;
  /// Share of the unlabeled pool drawn into batches, in [0, 1].
  double unlabeled_fraction = 1.0;
  std::uint64_t seed = 1;

  /// Throws InvalidArgument.
  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_nll = 0.0;
  double train_lap = 0.0;
  double valid_loss = 0.0;
  double valid_accuracy = 0.0;
  double valid_macro_f1 = 0.0;

  bool operator==(const EpochRecord &) const = default;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;  // 1-based, earliest maximum of valid_macro_f1

  const EpochRecord &best() const;
  bool operator==(const TrainReport &) const = default;
};

struct TrainResult {
  model::Network best;
  model::Network last;
  TrainReport report;
};

struct TrainHooks {
  /// Called after every parameter update with the 1-based step count.
  std::function<void(std::size_t step, const model::Network &)> on_step;
  std::function<void(const EpochRecord &)> on_epoch;
};

/// Per batch: clean forward, perturbations per mode, perturbed forward, one
/// combined backward of L = nll + lambda * lap, RMSProp step. The lap term
/// measures KL(clean || perturbed) in virtual mode and the perturbed NLL in
/// supervised mode. Batches hold labeled and unlabeled windows in
/// proportion to the pool sizes; the labeled pool is reshuffled every epoch
/// and unlabeled windows are drawn with replacement.
///
/// Throws InvalidArgument for an empty training or validation set or for
/// supervised mode with unlabeled windows in use.
TrainResult train(const data::DatasetSplit &dataset, const TrainConfig &config,
                  const perturbation::PerturbationConfig &perturbation, const TrainHooks &hooks = {});

struct Prediction {
  int label = 0;
  Vector probs;
};

/// Argmax of the softmax, ties to the lowest class. Throws ShapeError if the
/// window does not fit the network.
Prediction predict(const model::Network &net, const Matrix &window);
Prediction predict(const model::Network &net, const data::Sample &sample);
std::vector<Prediction> predict_all(const model::Network &net, std::span<const data::Sample> samples);

/// Lowest index among the maximal entries.
int argmax_lowest(const Vector &probs);

}  // namespace lpat::training
