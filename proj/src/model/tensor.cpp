// SPDX-License-Identifier: Apache-2.0

#include "lpat/tensor.hpp"

#include <cmath>
#include <random>

#include "lpat/errors.hpp"

namespace lpat {

std::string_view name_of(InjectionPoint m) {
  switch (m) {
    case InjectionPoint::Input:
      return "input";
    case InjectionPoint::Dense1:
      return "dense1";
    case InjectionPoint::Dense2:
      return "dense2";
    case InjectionPoint::Lstm:
      return "lstm";
    case InjectionPoint::Logits:
      return "logits";
  }
  return "?";
}

Vector per_sample_norms(const Matrix &tensor, Index batch) {
  if (batch <= 0 || tensor.cols() % batch != 0)
    throw ShapeError("tensor columns are not a multiple of the batch size");
  const Index steps = tensor.cols() / batch;
  Vector sq = Vector::Zero(batch);
  for (Index t = 0; t < steps; ++t)
    sq += tensor.middleCols(t * batch, batch).colwise().squaredNorm().transpose();
  return sq.cwiseSqrt();
}

void scale_per_sample(Matrix &tensor, Index batch, const Vector &factors) {
  if (factors.size() != batch || tensor.cols() % batch != 0)
    throw ShapeError("per-sample scale factors do not match the batch");
  const Index steps = tensor.cols() / batch;
  for (Index t = 0; t < steps; ++t)
    tensor.middleCols(t * batch, batch) *= factors.asDiagonal();
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void fill_gaussian_per_sample(Matrix &tensor, Index batch,
                              std::uint64_t stream_key) {
  const Index steps = tensor.cols() / batch;
  for (Index i = 0; i < batch; ++i) {
    std::mt19937_64 rng(mix_seed(stream_key, static_cast<std::uint64_t>(i)));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index t = 0; t < steps; ++t)
      for (Index r = 0; r < tensor.rows(); ++r)
        tensor(r, t * batch + i) = normal(rng);
  }
}

bool PerturbationSet::empty() const {
  for (bool p : present_)
    if (p) return false;
  return true;
}

const Matrix &PerturbationSet::at(InjectionPoint m) const {
  if (!has(m))
    throw InvalidArgument("no perturbation at " + std::string(name_of(m)));
  return tensors_[index_of(m)];
}

Matrix &PerturbationSet::at(InjectionPoint m) {
  if (!has(m))
    throw InvalidArgument("no perturbation at " + std::string(name_of(m)));
  return tensors_[index_of(m)];
}

void PerturbationSet::set(InjectionPoint m, Matrix r) {
  tensors_[index_of(m)] = std::move(r);
  present_[index_of(m)] = true;
}

void PerturbationSet::erase(InjectionPoint m) {
  tensors_[index_of(m)].resize(0, 0);
  present_[index_of(m)] = false;
}

}  // namespace lpat
