// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace lpat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Points in the network where a perturbation may be added. The numeric
/// value is the layer index m: 0 is the raw input, 4 the pre-softmax logits.
enum class InjectionPoint : int {
  Input = 0,
  Dense1 = 1,
  Dense2 = 2,
  Lstm = 3,
  Logits = 4,
};

inline constexpr int kInjectionPointCount = 5;

inline constexpr std::array<InjectionPoint, kInjectionPointCount>
    kAllInjectionPoints = {InjectionPoint::Input, InjectionPoint::Dense1,
                           InjectionPoint::Dense2, InjectionPoint::Lstm,
                           InjectionPoint::Logits};

constexpr int index_of(InjectionPoint m) { return static_cast<int>(m); }

/// Sequence-shaped points carry one column per (time step, sample).
constexpr bool is_sequence_point(InjectionPoint m) {
  return index_of(m) <= index_of(InjectionPoint::Dense2);
}

std::string_view name_of(InjectionPoint m);

/// A batch of equal-length sequences.
///
/// `values` is features x (steps * batch). The columns of time step t form
/// the contiguous block [t * batch, (t + 1) * batch), so sample i at step t
/// lives in column t * batch + i. Every activation tensor in the network
/// uses the same layout; non-sequence tensors simply have steps == 1.
struct SequenceBatch {
  Matrix values;
  Index batch = 0;
  Index steps = 0;
};

/// L2 norm of each sample's slice of a step-major tensor.
Vector per_sample_norms(const Matrix &tensor, Index batch);

/// Scales each sample's slice of `tensor` by `factors(i)`.
void scale_per_sample(Matrix &tensor, Index batch, const Vector &factors);

/// Fills `tensor` with iid standard normal draws. Each sample's entries come
/// from its own stream derived from (stream_key, sample index), so a
/// sample's draw does not depend on the batch it is part of.
void fill_gaussian_per_sample(Matrix &tensor, Index batch,
                              std::uint64_t stream_key);

/// splitmix64 finaliser; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Per-injection-point perturbation tensors for a batch. An absent entry
/// means the point is left untouched.
class PerturbationSet {
 public:
  bool empty() const;
  bool has(InjectionPoint m) const { return present_[index_of(m)]; }
  const Matrix &at(InjectionPoint m) const;
  Matrix &at(InjectionPoint m);
  void set(InjectionPoint m, Matrix r);
  void erase(InjectionPoint m);

 private:
  std::array<Matrix, kInjectionPointCount> tensors_;
  std::array<bool, kInjectionPointCount> present_{};
};

}  // namespace lpat
