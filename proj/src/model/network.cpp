// SPDX-License-Identifier: Apache-2.0

#include "lpat/model/network.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "lpat/errors.hpp"

namespace lpat::model {

namespace {

Eigen::ArrayXXd sigmoid(const Eigen::ArrayXXd &x) {
  return 1.0 / (1.0 + (-x).exp());
}

std::span<double> flat(Matrix &m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<double> flat(Vector &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<const double> flat(const Matrix &m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}
std::span<const double> flat(const Vector &v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void glorot(Matrix &w, std::mt19937_64 &rng) {
  const double s = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
  std::uniform_real_distribution<double> uniform(-s, s);
  for (Index c = 0; c < w.cols(); ++c)
    for (Index r = 0; r < w.rows(); ++r) w(r, c) = uniform(rng);
}

}  // namespace

std::string Architecture::describe() const {
  std::ostringstream os;
  os << "inputs " << inputs << " dense1 " << dense1 << " dense2 " << dense2
     << " lstm " << lstm << " classes " << classes;
  return os.str();
}

Parameters Parameters::zeros(const Architecture &a) {
  Parameters p;
  p.dense1 = {Matrix::Zero(a.dense1, a.inputs), Vector::Zero(a.dense1)};
  p.dense2 = {Matrix::Zero(a.dense2, a.dense1), Vector::Zero(a.dense2)};
  p.lstm = {Matrix::Zero(4 * a.lstm, a.dense2), Matrix::Zero(4 * a.lstm, a.lstm),
            Vector::Zero(4 * a.lstm)};
  p.output = {Matrix::Zero(a.classes, a.lstm), Vector::Zero(a.classes)};
  return p;
}

std::array<std::span<double>, kParameterBlockCount> Parameters::blocks() {
  return {flat(dense1.weight),      flat(dense1.bias),
          flat(dense2.weight),      flat(dense2.bias),
          flat(lstm.input_weight),  flat(lstm.recurrent_weight),
          flat(lstm.bias),          flat(output.weight),
          flat(output.bias)};
}

std::array<std::span<const double>, kParameterBlockCount> Parameters::blocks()
    const {
  return {flat(dense1.weight),      flat(dense1.bias),
          flat(dense2.weight),      flat(dense2.bias),
          flat(lstm.input_weight),  flat(lstm.recurrent_weight),
          flat(lstm.bias),          flat(output.weight),
          flat(output.bias)};
}

const std::array<const char *, kParameterBlockCount> &Parameters::block_names() {
  static const std::array<const char *, kParameterBlockCount> names = {
      "dense1.weight", "dense1.bias",  "dense2.weight",
      "dense2.bias",   "lstm.input_weight", "lstm.recurrent_weight",
      "lstm.bias",     "output.weight", "output.bias"};
  return names;
}

Parameters &Parameters::operator+=(const Parameters &o) {
  dense1.weight += o.dense1.weight;
  dense1.bias += o.dense1.bias;
  dense2.weight += o.dense2.weight;
  dense2.bias += o.dense2.bias;
  lstm.input_weight += o.lstm.input_weight;
  lstm.recurrent_weight += o.lstm.recurrent_weight;
  lstm.bias += o.lstm.bias;
  output.weight += o.output.weight;
  output.bias += o.output.bias;
  return *this;
}

Vector dense_forward(const Vector &x, const DenseParams &params) {
  if (params.weight.cols() != x.size() || params.weight.rows() != params.bias.size())
    throw ShapeError("dense_forward: input of size " + std::to_string(x.size()) +
                     " does not match weight " +
                     std::to_string(params.weight.rows()) + "x" +
                     std::to_string(params.weight.cols()));
  return params.weight * x + params.bias;
}

LstmState lstm_step(const Vector &x, const Vector &hidden_prev,
                    const Vector &cell_prev, const LstmParams &params) {
  const Index q = params.width();
  if (params.input_weight.rows() != 4 * q || params.input_weight.cols() != x.size() ||
      params.recurrent_weight.rows() != 4 * q || params.bias.size() != 4 * q ||
      hidden_prev.size() != q || cell_prev.size() != q)
    throw ShapeError("lstm_step: shape mismatch");
  const Vector pre =
      params.input_weight * x + params.recurrent_weight * hidden_prev + params.bias;
  const Eigen::ArrayXd i = sigmoid(pre.segment(0, q).array());
  const Eigen::ArrayXd f = sigmoid(pre.segment(q, q).array());
  const Eigen::ArrayXd o = sigmoid(pre.segment(2 * q, q).array());
  const Eigen::ArrayXd j = pre.segment(3 * q, q).array().tanh();
  LstmState next;
  next.cell = (i * j + f * cell_prev.array()).matrix();
  next.hidden = (o * next.cell.array().tanh()).matrix();
  return next;
}

Matrix softmax_columns(const Matrix &logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Index c = 0; c < logits.cols(); ++c) {
    const double peak = logits.col(c).maxCoeff();
    out.col(c) = (logits.col(c).array() - peak).exp().matrix();
    out.col(c) /= out.col(c).sum();
  }
  return out;
}

std::pair<Index, Index> point_shape(const Architecture &a, InjectionPoint m,
                                    Index batch, Index steps) {
  switch (m) {
    case InjectionPoint::Input:
      return {a.inputs, steps * batch};
    case InjectionPoint::Dense1:
      return {a.dense1, steps * batch};
    case InjectionPoint::Dense2:
      return {a.dense2, steps * batch};
    case InjectionPoint::Lstm:
      return {a.lstm, batch};
    case InjectionPoint::Logits:
      return {a.classes, batch};
  }
  return {0, 0};
}

Network::Network(Architecture arch, Parameters params)
    : arch_(arch), params_(std::move(params)) {
  const Parameters shape = Parameters::zeros(arch_);
  const auto want = shape.blocks();
  const auto have = std::as_const(params_).blocks();
  const auto &names = Parameters::block_names();
  for (std::size_t b = 0; b < kParameterBlockCount; ++b)
    if (want[b].size() != have[b].size())
      throw ShapeError(std::string("parameter block ") + names[b] +
                       " does not match architecture " + arch_.describe());
  if (params_.dense1.weight.rows() != arch_.dense1 ||
      params_.dense2.weight.rows() != arch_.dense2 ||
      params_.lstm.recurrent_weight.cols() != arch_.lstm ||
      params_.output.weight.rows() != arch_.classes)
    throw ShapeError("parameter shapes do not match architecture " + arch_.describe());
}

Network Network::initialize(const Architecture &arch, std::uint64_t seed) {
  if (arch.inputs <= 0 || arch.dense1 <= 0 || arch.dense2 <= 0 || arch.lstm <= 0 ||
      arch.classes <= 0)
    throw InvalidArgument("architecture widths must be positive");
  std::mt19937_64 rng(seed);
  Parameters p = Parameters::zeros(arch);
  glorot(p.dense1.weight, rng);
  glorot(p.dense2.weight, rng);
  for (int g = 0; g < 4; ++g) {
    Matrix w(arch.lstm, arch.dense2);
    glorot(w, rng);
    p.lstm.input_weight_of(static_cast<Gate>(g)) = w;
    Matrix u(arch.lstm, arch.lstm);
    glorot(u, rng);
    p.lstm.recurrent_weight_of(static_cast<Gate>(g)) = u;
  }
  p.lstm.bias_of(Gate::Forget).setOnes();
  glorot(p.output.weight, rng);
  return Network(arch, std::move(p));
}

void Network::check_input(const SequenceBatch &input,
                          const PerturbationSet &perturbations) const {
  if (input.batch <= 0 || input.steps <= 0 ||
      input.values.cols() != input.batch * input.steps)
    throw ShapeError("sequence batch layout is inconsistent");
  if (input.values.rows() != arch_.inputs)
    throw ShapeError("input has " + std::to_string(input.values.rows()) +
                     " features, network expects " + std::to_string(arch_.inputs));
  for (InjectionPoint m : kAllInjectionPoints) {
    if (!perturbations.has(m)) continue;
    const auto [rows, cols] = point_shape(arch_, m, input.batch, input.steps);
    const Matrix &r = perturbations.at(m);
    if (r.rows() != rows || r.cols() != cols)
      throw ShapeError("perturbation at " + std::string(name_of(m)) + " is " +
                       std::to_string(r.rows()) + "x" + std::to_string(r.cols()) +
                       ", expected " + std::to_string(rows) + "x" +
                       std::to_string(cols));
  }
}

ForwardCache Network::forward(const SequenceBatch &input,
                              const PerturbationSet &perturbations) const {
  check_input(input, perturbations);
  const Index batch = input.batch;
  const Index steps = input.steps;
  const Index q = arch_.lstm;

  ForwardCache cache;
  cache.batch = batch;
  cache.steps = steps;
  auto perturb = [&](InjectionPoint m, Matrix &activation) {
    if (perturbations.has(m)) activation += perturbations.at(m);
  };

  Matrix &a0 = cache.points[index_of(InjectionPoint::Input)];
  a0 = input.values;
  perturb(InjectionPoint::Input, a0);

  Matrix &a1 = cache.points[index_of(InjectionPoint::Dense1)];
  a1.noalias() = params_.dense1.weight * a0;
  a1.colwise() += params_.dense1.bias;
  perturb(InjectionPoint::Dense1, a1);

  Matrix &a2 = cache.points[index_of(InjectionPoint::Dense2)];
  a2.noalias() = params_.dense2.weight * a1;
  a2.colwise() += params_.dense2.bias;
  perturb(InjectionPoint::Dense2, a2);

  // Input contributions of all steps in one product.
  Matrix pre(4 * q, steps * batch);
  pre.noalias() = params_.lstm.input_weight * a2;
  pre.colwise() += params_.lstm.bias;

  cache.gates.resize(4 * q, steps * batch);
  cache.cells.resize(q, steps * batch);
  cache.cell_tanh.resize(q, steps * batch);
  cache.hidden.resize(q, steps * batch);

  Matrix h_prev = Matrix::Zero(q, batch);
  Matrix c_prev = Matrix::Zero(q, batch);
  Matrix step_pre(4 * q, batch);
  for (Index t = 0; t < steps; ++t) {
    const Index col = t * batch;
    step_pre = pre.middleCols(col, batch);
    step_pre.noalias() += params_.lstm.recurrent_weight * h_prev;
    auto g = cache.gates.middleCols(col, batch);
    g.topRows(3 * q) = sigmoid(step_pre.topRows(3 * q).array()).matrix();
    g.bottomRows(q) = step_pre.bottomRows(q).array().tanh().matrix();

    const auto i = g.topRows(q).array();
    const auto f = g.middleRows(q, q).array();
    const auto o = g.middleRows(2 * q, q).array();
    const auto j = g.bottomRows(q).array();
    auto c = cache.cells.middleCols(col, batch);
    c = (i * j + f * c_prev.array()).matrix();
    auto ct = cache.cell_tanh.middleCols(col, batch);
    ct = c.array().tanh().matrix();
    auto h = cache.hidden.middleCols(col, batch);
    h = (o * ct.array()).matrix();
    h_prev = h;
    c_prev = c;
  }

  Matrix &a3 = cache.points[index_of(InjectionPoint::Lstm)];
  a3 = h_prev;
  perturb(InjectionPoint::Lstm, a3);

  Matrix &a4 = cache.points[index_of(InjectionPoint::Logits)];
  a4.noalias() = params_.output.weight * a3;
  a4.colwise() += params_.output.bias;
  perturb(InjectionPoint::Logits, a4);

  cache.probs = softmax_columns(a4);
  return cache;
}

Gradients Network::backward(const ForwardCache &cache, const Matrix &logit_grad,
                            bool parameter_grads) const {
  const Index batch = cache.batch;
  const Index steps = cache.steps;
  const Index q = arch_.lstm;
  if (logit_grad.rows() != arch_.classes || logit_grad.cols() != batch)
    throw ShapeError("logit gradient does not match the cached batch");

  Gradients out;
  if (parameter_grads) out.params = Parameters::zeros(arch_);
  Parameters &pg = out.params;
  auto &dp = out.points;

  const Matrix &a0 = cache.activation(InjectionPoint::Input);
  const Matrix &a1 = cache.activation(InjectionPoint::Dense1);
  const Matrix &a2 = cache.activation(InjectionPoint::Dense2);
  const Matrix &a3 = cache.activation(InjectionPoint::Lstm);

  dp[index_of(InjectionPoint::Logits)] = logit_grad;
  if (parameter_grads) {
    pg.output.weight.noalias() = logit_grad * a3.transpose();
    pg.output.bias = logit_grad.rowwise().sum();
  }
  Matrix &da3 = dp[index_of(InjectionPoint::Lstm)];
  da3.noalias() = params_.output.weight.transpose() * logit_grad;

  // Backpropagation through time.
  Matrix dpre(4 * q, steps * batch);
  Matrix dh = da3;
  Eigen::ArrayXXd dc = Eigen::ArrayXXd::Zero(q, batch);
  for (Index t = steps - 1; t >= 0; --t) {
    const Index col = t * batch;
    const auto g = cache.gates.middleCols(col, batch);
    const Eigen::ArrayXXd i = g.topRows(q).array();
    const Eigen::ArrayXXd f = g.middleRows(q, q).array();
    const Eigen::ArrayXXd o = g.middleRows(2 * q, q).array();
    const Eigen::ArrayXXd j = g.bottomRows(q).array();
    const Eigen::ArrayXXd ct = cache.cell_tanh.middleCols(col, batch).array();

    const Eigen::ArrayXXd dha = dh.array();
    dc += dha * o * (1.0 - ct.square());
    auto d = dpre.middleCols(col, batch);
    d.topRows(q) = (dc * j * i * (1.0 - i)).matrix();
    if (t > 0)
      d.middleRows(q, q) =
          (dc * cache.cells.middleCols(col - batch, batch).array() * f * (1.0 - f))
              .matrix();
    else
      d.middleRows(q, q).setZero();
    d.middleRows(2 * q, q) = (dha * ct * o * (1.0 - o)).matrix();
    d.bottomRows(q) = (dc * i * (1.0 - j.square())).matrix();

    dc *= f;
    if (t > 0) {
      dh.noalias() = params_.lstm.recurrent_weight.transpose() * d;
      if (parameter_grads)
        pg.lstm.recurrent_weight.noalias() +=
            d * cache.hidden.middleCols(col - batch, batch).transpose();
    }
  }
  if (parameter_grads) {
    pg.lstm.input_weight.noalias() = dpre * a2.transpose();
    pg.lstm.bias = dpre.rowwise().sum();
  }

  Matrix &da2 = dp[index_of(InjectionPoint::Dense2)];
  da2.noalias() = params_.lstm.input_weight.transpose() * dpre;
  if (parameter_grads) {
    pg.dense2.weight.noalias() = da2 * a1.transpose();
    pg.dense2.bias = da2.rowwise().sum();
  }
  Matrix &da1 = dp[index_of(InjectionPoint::Dense1)];
  da1.noalias() = params_.dense2.weight.transpose() * da2;
  if (parameter_grads) {
    pg.dense1.weight.noalias() = da1 * a0.transpose();
    pg.dense1.bias = da1.rowwise().sum();
  }
  Matrix &da0 = dp[index_of(InjectionPoint::Input)];
  da0.noalias() = params_.dense1.weight.transpose() * da1;
  return out;
}

}  // namespace lpat::model
