// SPDX-License-Identifier: Apache-2.0

#include "lpat/perturbation.hpp"

#include <algorithm>
#include <cmath>

namespace lpat::perturbation {

std::string_view name_of(Mode mode) {
  switch (mode) {
    case Mode::None:
      return "none";
    case Mode::SupervisedAt:
      return "supervised_at";
    case Mode::VirtualAt:
      return "virtual_at";
  }
  return "?";
}

std::string_view name_of(LayerSelection layers) {
  switch (layers) {
    case LayerSelection::Input:
      return "input";
    case LayerSelection::Bottom:
      return "bottom";
    case LayerSelection::Top:
      return "top";
    case LayerSelection::All:
      return "all";
  }
  return "?";
}

LayerSelection parse_layers(std::string_view text) {
  for (auto l : {LayerSelection::Input, LayerSelection::Bottom, LayerSelection::Top,
                 LayerSelection::All})
    if (text == name_of(l)) return l;
  throw InvalidArgument("unknown layer selection '" + std::string(text) +
                        "' (expected input, bottom, top or all)");
}

std::vector<InjectionPoint> points_of(LayerSelection layers) {
  using P = InjectionPoint;
  switch (layers) {
    case LayerSelection::Input:
      return {P::Input};
    case LayerSelection::Bottom:
      return {P::Dense1, P::Dense2};
    case LayerSelection::Top:
      return {P::Lstm, P::Logits};
    case LayerSelection::All:
      return {kAllInjectionPoints.begin(), kAllInjectionPoints.end()};
  }
  return {};
}

std::vector<InjectionPoint> PerturbationConfig::points() const {
  if (mode == Mode::None) return {};
  return points_of(layers);
}

void PerturbationConfig::validate() const {
  for (double e : epsilon)
    if (!(e >= 0.0)) throw InvalidArgument("epsilon must be non-negative");
  if (!(xi > 0.0)) throw InvalidArgument("xi must be positive");
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be non-negative");
}

std::uint64_t NoiseKey::stream(InjectionPoint m) const {
  return mix_seed(mix_seed(mix_seed(seed, epoch), batch), static_cast<std::uint64_t>(index_of(m)));
}

Matrix supervised_perturbation(const Matrix &g, double eps) {
  const double norm = g.norm();
  if (norm < kGradientFloor) return Matrix::Zero(g.rows(), g.cols());
  return (-eps / norm) * g;
}

Matrix normalize_per_sample(const Matrix &g, Index batch, double eps) {
  const Vector norms = per_sample_norms(g, batch);
  Vector factors(batch);
  for (Index i = 0; i < batch; ++i)
    factors(i) = norms(i) < kGradientFloor ? 0.0 : eps / norms(i);
  Matrix out = g;
  scale_per_sample(out, batch, factors);
  return out;
}

double kl_divergence(const Vector &p, const Vector &q) {
  if (p.size() != q.size()) throw ShapeError("kl_divergence: size mismatch");
  double kl = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    const double pi = std::max(p(i), kProbabilityFloor);
    const double qi = std::max(q(i), kProbabilityFloor);
    kl += pi * std::log(pi / qi);
  }
  return std::max(kl, 0.0);
}

Vector kl_columns(const Matrix &p, const Matrix &q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) throw ShapeError("kl_columns: shape mismatch");
  Vector out(p.cols());
  for (Index c = 0; c < p.cols(); ++c) out(c) = kl_divergence(p.col(c), q.col(c));
  return out;
}

Matrix nll_logit_gradient(const Matrix &probs, std::span<const int> labels) {
  if (static_cast<Index>(labels.size()) != probs.cols())
    throw ShapeError("nll_logit_gradient: one label per column expected");
  Matrix g = probs;
  for (Index c = 0; c < probs.cols(); ++c) {
    const int y = labels[static_cast<std::size_t>(c)];
    if (y < 0) {
      g.col(c).setZero();
      continue;
    }
    if (y >= probs.rows()) throw InvalidArgument("label out of range");
    g(y, c) -= 1.0;
  }
  return g;
}

PerturbationSet supervised_perturbations(const std::array<Matrix, kInjectionPointCount> &nll_grads,
                                         Index batch, const PerturbationConfig &config) {
  PerturbationSet out;
  for (InjectionPoint m : points_of(config.layers)) {
    const Matrix &g = nll_grads[index_of(m)];
    if (g.size() == 0) throw InvalidArgument("missing gradient at " + std::string(lpat::name_of(m)));
    // Ascending the NLL is descending the log-likelihood.
    out.set(m, normalize_per_sample(g, batch, config.epsilon_at(m)));
  }
  return out;
}

}  // namespace lpat::perturbation
