// SPDX-License-Identifier: Apache-2.0

#include "lpat/training/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lpat/data/batch.hpp"
#include "lpat/errors.hpp"
#include "lpat/eval/metrics.hpp"
#include "lpat/training/loss.hpp"
#include "lpat/training/rmsprop.hpp"

namespace lpat::training {

namespace {

constexpr std::uint64_t kInitStream = 0x696e6974;  // "init"
constexpr std::uint64_t kDataStream = 0x64617461;  // "data"
constexpr std::uint64_t kNoiseStream = 0x6e6f6973;  // "nois"
constexpr std::size_t kEvalChunk = 256;

Matrix one_hot(std::span<const int> labels, Index classes) {
  Matrix m = Matrix::Zero(classes, static_cast<Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) m(labels[i], static_cast<Index>(i)) = 1.0;
  return m;
}

struct Validation {
  double loss = 0.0;
  eval::MetricsReport metrics;
};

Validation validate(const model::Network &net, std::span<const data::Sample> samples) {
  std::vector<int> truth, predicted;
  double nll_sum = 0.0;
  for (std::size_t start = 0; start < samples.size(); start += kEvalChunk) {
    const auto chunk = samples.subspan(start, std::min(kEvalChunk, samples.size() - start));
    const auto cache = net.forward(data::make_batch(chunk));
    std::vector<int> labels;
    for (const auto &s : chunk) labels.push_back(data::class_index(*s.label));
    nll_sum += nll_loss(cache.probs, labels) * static_cast<double>(chunk.size());
    for (Index c = 0; c < cache.probs.cols(); ++c) predicted.push_back(argmax_lowest(cache.probs.col(c)));
    truth.insert(truth.end(), labels.begin(), labels.end());
  }
  return {nll_sum / static_cast<double>(samples.size()), eval::compute_metrics(truth, predicted)};
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
  if (batch_size < 1) throw InvalidArgument("batch size must be positive");
  if (epochs < 1) throw InvalidArgument("epoch count must be positive");
  if (!(unlabeled_fraction >= 0.0 && unlabeled_fraction <= 1.0))
    throw InvalidArgument("unlabeled fraction must lie in [0, 1]");
  const auto &a = architecture;
  if (a.dense1 < 1 || a.dense2 < 1 || a.lstm < 1) throw InvalidArgument("layer widths must be positive");
}

const EpochRecord &TrainReport::best() const {
  if (best_epoch < 1 || best_epoch > epochs.size()) throw InvalidArgument("report has no best epoch");
  return epochs[best_epoch - 1];
}

TrainResult train(const data::DatasetSplit &dataset, const TrainConfig &config,
                  const perturbation::PerturbationConfig &pcfg, const TrainHooks &hooks) {
  config.validate();
  pcfg.validate();
  const auto &labeled = dataset.train_labeled;
  if (labeled.empty()) throw InvalidArgument("training set has no labeled windows");
  if (dataset.valid.empty()) throw InvalidArgument("validation set is empty");
  for (const auto &s : labeled)
    if (!s.label) throw InvalidArgument("labeled training pool holds an unlabeled window");

  model::Architecture arch = config.architecture;
  arch.inputs = labeled.front().features.cols();
  arch.classes = data::kClassCount;

  std::mt19937_64 data_rng(mix_seed(config.seed, kDataStream));

  std::vector<const data::Sample *> unlabeled;
  {
    std::vector<std::size_t> idx(dataset.train_unlabeled.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), data_rng);
    const auto take = static_cast<std::size_t>(
        std::ceil(config.unlabeled_fraction * static_cast<double>(idx.size()) - 1e-9));
    for (std::size_t i = 0; i < std::min(take, idx.size()); ++i)
      unlabeled.push_back(&dataset.train_unlabeled[idx[i]]);
  }
  if (pcfg.mode == perturbation::Mode::SupervisedAt && !unlabeled.empty())
    throw InvalidArgument("supervised adversarial training cannot use unlabeled windows; "
                          "set the unlabeled fraction to 0");

  const std::size_t n_l = labeled.size();
  const std::size_t n_u = unlabeled.size();
  const std::size_t k = config.batch_size;
  std::size_t k_u = 0;
  if (n_u > 0 && k > 1) {
    k_u = static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * static_cast<double>(n_u) / static_cast<double>(n_l + n_u)));
    k_u = std::min(k_u, k - 1);
  }
  const std::size_t k_l = k - k_u;
  const std::size_t batches = (n_l + k_l - 1) / k_l;

  model::Network net = model::Network::initialize(arch, mix_seed(config.seed, kInitStream));
  RmsProp optimizer(arch, {config.learning_rate});

  TrainResult result;
  result.best = net;
  double best_f1 = -1.0;
  std::vector<std::size_t> order(n_l);
  std::iota(order.begin(), order.end(), 0);
  std::uniform_int_distribution<std::size_t> draw_unlabeled(0, n_u > 0 ? n_u - 1 : 0);
  std::size_t step = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), data_rng);
    double loss_sum = 0.0, nll_sum = 0.0, lap_sum = 0.0;

    for (std::size_t b = 0; b < batches; ++b) {
      std::vector<const data::Sample *> members;
      std::vector<int> labels;
      const std::size_t begin = b * k_l;
      const std::size_t end = std::min(begin + k_l, n_l);
      for (std::size_t i = begin; i < end; ++i) {
        members.push_back(&labeled[order[i]]);
        labels.push_back(data::class_index(*labeled[order[i]].label));
      }
      const auto n_lab = static_cast<Index>(members.size());
      for (std::size_t i = 0; i < k_u; ++i) {
        members.push_back(unlabeled[draw_unlabeled(data_rng)]);
        labels.push_back(-1);
      }

      const SequenceBatch input = data::make_batch(members);
      const auto clean = net.forward(input);
      const double nll = nll_loss(clean.probs.leftCols(n_lab), std::span(labels).first(n_lab));
      Matrix dlogits = perturbation::nll_logit_gradient(clean.probs, labels) / static_cast<double>(n_lab);
      auto grads = net.backward(clean, dlogits, true);

      double lap = 0.0;
      if (pcfg.mode != perturbation::Mode::None) {
        const perturbation::NoiseKey key{mix_seed(config.seed, kNoiseStream), epoch, b};
        const auto perts = perturbation::compute_perturbations(net, input, clean, labels, pcfg, key);
        const auto perturbed = net.forward(input, perts);
        const Matrix reference = pcfg.mode == perturbation::Mode::SupervisedAt
                                     ? one_hot(labels, arch.classes)
                                     : clean.probs;
        lap = lap_loss(reference, perturbed.probs);
        if (pcfg.lambda != 0.0) {
          const Matrix d2 = (pcfg.lambda / static_cast<double>(input.batch)) *
                            perturbation::kl_logit_gradient(reference, perturbed.probs);
          grads.params += net.backward(perturbed, d2, true).params;
        }
      }

      optimizer.step(net.parameters(), grads.params);
      ++step;
      if (hooks.on_step) hooks.on_step(step, net);
      nll_sum += nll;
      lap_sum += lap;
      loss_sum += total_loss(nll, lap, pcfg.mode == perturbation::Mode::None ? 0.0 : pcfg.lambda);
    }

    const Validation v = validate(net, dataset.valid);
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(batches);
    rec.train_nll = nll_sum / static_cast<double>(batches);
    rec.train_lap = lap_sum / static_cast<double>(batches);
    rec.valid_loss = v.loss;
    rec.valid_accuracy = v.metrics.accuracy;
    rec.valid_macro_f1 = v.metrics.macro_f1;
    result.report.epochs.push_back(rec);
    if (rec.valid_macro_f1 > best_f1) {
      best_f1 = rec.valid_macro_f1;
      result.report.best_epoch = epoch;
      result.best = net;
    }
    if (hooks.on_epoch) hooks.on_epoch(rec);
  }
  result.last = std::move(net);
  return result;
}

int argmax_lowest(const Vector &probs) {
  int best = 0;
  for (Index i = 1; i < probs.size(); ++i)
    if (probs(i) > probs(best)) best = static_cast<int>(i);
  return best;
}

Prediction predict(const model::Network &net, const Matrix &window) {
  if (window.cols() != net.architecture().inputs)
    throw ShapeError("window has " + std::to_string(window.cols()) + " attributes, network expects " +
                     std::to_string(net.architecture().inputs));
  if (window.rows() < 1) throw ShapeError("window has no rows");
  SequenceBatch input;
  input.batch = 1;
  input.steps = window.rows();
  input.values = window.transpose();
  const auto cache = net.forward(input);
  return {argmax_lowest(cache.probs.col(0)), cache.probs.col(0)};
}

Prediction predict(const model::Network &net, const data::Sample &sample) {
  return predict(net, sample.features);
}

std::vector<Prediction> predict_all(const model::Network &net, std::span<const data::Sample> samples) {
  std::vector<Prediction> out;
  out.reserve(samples.size());
  for (std::size_t start = 0; start < samples.size(); start += kEvalChunk) {
    const auto chunk = samples.subspan(start, std::min(kEvalChunk, samples.size() - start));
    const auto cache = net.forward(data::make_batch(chunk));
    for (Index c = 0; c < cache.probs.cols(); ++c)
      out.push_back({argmax_lowest(cache.probs.col(c)), cache.probs.col(c)});
  }
  return out;
}

}  // namespace lpat::training
