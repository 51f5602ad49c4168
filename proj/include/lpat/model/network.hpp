// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "lpat/tensor.hpp"

namespace lpat::model {

/// Widths of the fixed Dense -> Dense -> LSTM -> Dense stack.
struct Architecture {
  Index inputs = 8;
  Index dense1 = 128;
  Index dense2 = 128;
  Index lstm = 200;
  Index classes = 3;

  bool operator==(const Architecture &) const = default;
  std::string describe() const;
};

struct DenseParams {
  Matrix weight;  // out x in
  Vector bias;    // out
};

/// LSTM gates in the row order used by the stacked parameter blocks.
enum class Gate : int { Input = 0, Forget = 1, Output = 2, Update = 3 };

/// The four gates' W, U and b stacked row-wise: rows [g*q, (g+1)*q) belong
/// to gate g.
struct LstmParams {
  Matrix input_weight;      // 4q x d
  Matrix recurrent_weight;  // 4q x q
  Vector bias;              // 4q

  Index width() const { return recurrent_weight.cols(); }
  auto input_weight_of(Gate g) {
    return input_weight.middleRows(static_cast<int>(g) * width(), width());
  }
  auto recurrent_weight_of(Gate g) {
    return recurrent_weight.middleRows(static_cast<int>(g) * width(), width());
  }
  auto bias_of(Gate g) {
    return bias.segment(static_cast<int>(g) * width(), width());
  }
};

inline constexpr std::size_t kParameterBlockCount = 9;

struct Parameters {
  DenseParams dense1;
  DenseParams dense2;
  LstmParams lstm;
  DenseParams output;

  static Parameters zeros(const Architecture &arch);

  /// Every parameter tensor as a flat view, in a fixed order.
  std::array<std::span<double>, kParameterBlockCount> blocks();
  std::array<std::span<const double>, kParameterBlockCount> blocks() const;
  static const std::array<const char *, kParameterBlockCount> &block_names();

  Parameters &operator+=(const Parameters &other);
};

/// Everything the backward pass needs from a forward evaluation.
struct ForwardCache {
  Index batch = 0;
  Index steps = 0;
  /// Activation fed to the next layer at each injection point, i.e. the
  /// layer output plus any perturbation applied there.
  std::array<Matrix, kInjectionPointCount> points;
  Matrix gates;      // 4q x (steps*batch), post-nonlinearity i, f, o, j
  Matrix cells;      // q x (steps*batch)
  Matrix cell_tanh;  // q x (steps*batch)
  Matrix hidden;     // q x (steps*batch)
  Matrix probs;      // classes x batch

  const Matrix &activation(InjectionPoint m) const {
    return points[index_of(m)];
  }
};

struct Gradients {
  Parameters params;
  /// Gradient of the objective w.r.t. each injection point's activation.
  std::array<Matrix, kInjectionPointCount> points;

  const Matrix &at(InjectionPoint m) const { return points[index_of(m)]; }
};

Vector dense_forward(const Vector &x, const DenseParams &params);

struct LstmState {
  Vector hidden;
  Vector cell;
};

LstmState lstm_step(const Vector &x, const Vector &hidden_prev,
                    const Vector &cell_prev, const LstmParams &params);

/// Column-wise numerically stable softmax.
Matrix softmax_columns(const Matrix &logits);

class Network {
 public:
  Network() = default;
  Network(Architecture arch, Parameters params);

  /// Glorot-uniform dense and LSTM weights, zero biases except the LSTM
  /// forget gate, which starts at 1.
  static Network initialize(const Architecture &arch, std::uint64_t seed);

  const Architecture &architecture() const { return arch_; }
  const Parameters &parameters() const { return params_; }
  Parameters &parameters() { return params_; }

  /// Evaluates the stack. Each perturbation present in `perturbations` is
  /// added to its injection point's activation before the next layer.
  ForwardCache forward(const SequenceBatch &input,
                       const PerturbationSet &perturbations = {}) const;

  /// Reverse-mode pass for a scalar objective whose gradient w.r.t. the
  /// (perturbed) logits is `logit_grad` (classes x batch). Always returns
  /// the injection-point gradients; parameter gradients only on request.
  Gradients backward(const ForwardCache &cache, const Matrix &logit_grad,
                     bool parameter_grads = true) const;

 private:
  void check_input(const SequenceBatch &input,
                   const PerturbationSet &perturbations) const;

  Architecture arch_;
  Parameters params_;
};

/// Expected shape of an injection-point tensor for a batch.
std::pair<Index, Index> point_shape(const Architecture &arch, InjectionPoint m,
                                    Index batch, Index steps);

}  // namespace lpat::model
