// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpat/data/pipeline.hpp"
#include "lpat/data/synthetic.hpp"
#include "lpat/perturbation.hpp"
#include "lpat/training/trainer.hpp"

namespace lpat::cli {

/// Raised for flag combinations that are individually valid but not together.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct PrepOptions {
  std::string input;
  std::string out;
  std::vector<std::string> attributes;  // empty: defaults
  int clusters = 10;
  double keep_frac = 0.3;
  long window = 20;
  double train_frac = 0.8;
  double valid_frac = 0.2;
  std::uint64_t seed = 1;
  bool lenient = false;
};

struct SynthOptions {
  std::size_t healthy = 100;
  std::size_t failed = 10;
  std::size_t attributes = 8;
  std::size_t days = 60;
  double drift = 10.0;
  double noise = 1.0;
  double spread = 2.0;
  long ramp_days = 30;
  std::uint64_t seed = 1;
  std::string out;
};

struct TrainOptions {
  std::string data;
  std::string mode = "lpat";  // basic, at, vat, lpat
  std::string layers;         // empty: mode default
  double epsilon = 20.0;
  double lambda = 1.0;
  double xi = 10.0;
  double unlabeled_frac = 1.0;
  std::size_t epochs = 210;
  std::size_t batch = 128;
  double lr = 1e-3;
  std::uint64_t seed = 1;
  long dense1 = 128;
  long dense2 = 128;
  long lstm = 200;
  std::string out;
  std::string report;
};

struct EvalOptions {
  std::string data;
  std::string checkpoint;
  std::string split = "test";
  std::string report;
};

struct PredictOptions {
  std::string checkpoint;
  std::string window;
};

/// basic -> none; at -> supervised (default layers input); vat -> virtual at
/// the input only; lpat -> virtual (default layers all). Throws UsageError.
perturbation::PerturbationConfig perturbation_config(const TrainOptions &options);
training::TrainConfig train_config(const TrainOptions &options);

void cmd_prep(const PrepOptions &options, std::ostream &out);
void cmd_synth(const SynthOptions &options, std::ostream &out);
void cmd_train(const TrainOptions &options, std::ostream &out);
void cmd_eval(const EvalOptions &options, std::ostream &out);
void cmd_predict(const PredictOptions &options, std::ostream &out);

/// Reads a window CSV: a header naming at least the checkpoint's attribute
/// columns, then one row per day. Returns the raw rows (rows x attributes).
Matrix read_window_csv(std::istream &is, const std::vector<std::string> &attributes);

/// Rounds probabilities to thousandths so that the printed values sum to
/// exactly 1.000 (largest remainder).
std::vector<int> round_to_thousandths(const Vector &probs);

}  // namespace lpat::cli
