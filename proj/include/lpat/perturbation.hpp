// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpat/errors.hpp"
#include "lpat/tensor.hpp"

namespace lpat::perturbation {

enum class Mode { None, SupervisedAt, VirtualAt };
enum class LayerSelection { Input, Bottom, Top, All };

std::string_view name_of(Mode mode);
std::string_view name_of(LayerSelection layers);
/// Throws InvalidArgument listing the accepted names.
LayerSelection parse_layers(std::string_view text);

/// input -> {0}, bottom -> {1, 2}, top -> {3, 4}, all -> {0, ..., 4}.
std::vector<InjectionPoint> points_of(LayerSelection layers);

struct PerturbationConfig {
  Mode mode = Mode::None;
  LayerSelection layers = LayerSelection::All;
  std::array<double, kInjectionPointCount> epsilon{20.0, 20.0, 20.0, 20.0, 20.0};
  double xi = 10.0;
  double lambda = 1.0;

  void set_epsilon(double eps) { epsilon.fill(eps); }
  double epsilon_at(InjectionPoint m) const { return epsilon[index_of(m)]; }
  /// Selected points; empty when mode is None.
  std::vector<InjectionPoint> points() const;
  /// Throws InvalidArgument on a negative epsilon or lambda or xi <= 0.
  void validate() const;
};

/// Identifies the random draws of one batch.
struct NoiseKey {
  std::uint64_t seed = 0;
  std::uint64_t epoch = 0;
  std::uint64_t batch = 0;

  std::uint64_t stream(InjectionPoint m) const;
};

inline constexpr double kGradientFloor = 1e-12;
inline constexpr double kProbabilityFloor = 1e-12;

/// -eps * g / ||g|| over the whole tensor, where g is a log-likelihood
/// gradient. Zero when ||g|| < 1e-12.
Matrix supervised_perturbation(const Matrix &g, double eps);

/// eps * g_i / ||g_i|| for each sample's slice of a step-major tensor, zero
/// for slices with ||g_i|| < 1e-12.
Matrix normalize_per_sample(const Matrix &g, Index batch, double eps);

/// sum_i p_i ln(p_i / q_i) with both arguments floored at 1e-12.
double kl_divergence(const Vector &p, const Vector &q);
/// kl_divergence of each column pair.
Vector kl_columns(const Matrix &p, const Matrix &q);

/// Gradient of sum_i KL(reference_i || softmax(z_i)) w.r.t. the logits z,
/// with the reference held constant.
inline Matrix kl_logit_gradient(const Matrix &reference, const Matrix &probs) {
  return probs - reference;
}

/// Gradient of sum_i -ln softmax(z_i)[y_i] w.r.t. the logits. Columns with
/// label < 0 are zero.
Matrix nll_logit_gradient(const Matrix &probs, std::span<const int> labels);

/// Supervised perturbations from NLL gradients at each injection point (as
/// returned by a backward pass seeded with nll_logit_gradient).
PerturbationSet supervised_perturbations(const std::array<Matrix, kInjectionPointCount> &nll_grads,
                                         Index batch, const PerturbationConfig &config);

/// One finite-difference power-iteration step per sample. A unit Gaussian
/// direction e_m is drawn for every selected point, xi * e_m is added at all
/// of them in one probe pass, and the gradient of KL(clean || probe) w.r.t.
/// each point is rescaled to eps_m per sample.
///
/// `Model` needs forward(input, PerturbationSet) returning a cache with
/// `probs` and activation(m), and backward(cache, logit_grad, false)
/// returning gradients with at(m).
template <class Model, class Cache>
PerturbationSet virtual_perturbation(const Model &model, const SequenceBatch &input,
                                     const Cache &clean, const PerturbationConfig &config,
                                     const NoiseKey &key) {
  const auto points = points_of(config.layers);
  const Index batch = input.batch;
  PerturbationSet probe;
  for (InjectionPoint m : points) {
    const Matrix &a = clean.activation(m);
    Matrix e(a.rows(), a.cols());
    fill_gaussian_per_sample(e, batch, key.stream(m));
    probe.set(m, normalize_per_sample(e, batch, config.xi));
  }
  const auto probed = model.forward(input, probe);
  const auto grads = model.backward(probed, kl_logit_gradient(clean.probs, probed.probs), false);
  PerturbationSet out;
  for (InjectionPoint m : points)
    out.set(m, normalize_per_sample(grads.at(m), batch, config.epsilon_at(m)));
  return out;
}

/// Dispatches on the mode. `labels` holds a class index per sample or -1
/// for unlabeled samples; supervised mode throws InvalidArgument if any
/// sample is unlabeled.
template <class Model, class Cache>
PerturbationSet compute_perturbations(const Model &model, const SequenceBatch &input,
                                      const Cache &clean, std::span<const int> labels,
                                      const PerturbationConfig &config, const NoiseKey &key) {
  switch (config.mode) {
    case Mode::None:
      return {};
    case Mode::SupervisedAt: {
      for (int y : labels)
        if (y < 0) throw InvalidArgument("supervised adversarial training needs labels for every sample");
      const auto grads = model.backward(clean, nll_logit_gradient(clean.probs, labels), false);
      std::array<Matrix, kInjectionPointCount> g;
      for (InjectionPoint m : points_of(config.layers)) g[index_of(m)] = grads.at(m);
      return supervised_perturbations(g, input.batch, config);
    }
    case Mode::VirtualAt:
      return virtual_perturbation(model, input, clean, config, key);
  }
  return {};
}

}  // namespace lpat::perturbation
