// SPDX-License-Identifier: Apache-2.0

#include "lpat/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lpat/cli/commands.hpp"
#include "lpat/cli/config.hpp"

namespace lpat::cli {

namespace {

constexpr int kUsageExit = 2;
constexpr int kFailureExit = 1;

const std::vector<std::string> kSubcommands = {"prep", "synth", "train", "eval", "predict"};

/// Moves `--config FILE` / `--config=FILE` out of the argument list and
/// splices the file's entries in right after the subcommand, so later flags
/// take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> rest;
  std::vector<std::string> from_files;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file argument");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    for (auto &a : config_to_args(load_config(path))) from_files.push_back(std::move(a));
  }
  if (from_files.empty()) return rest;
  std::size_t at = 0;
  while (at < rest.size() && std::find(kSubcommands.begin(), kSubcommands.end(), rest[at]) == kSubcommands.end())
    ++at;
  if (at == rest.size()) throw UsageError("--config must accompany a subcommand");
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at) + 1, from_files.begin(), from_files.end());
  return rest;
}

void add_config_flag(CLI::App *app) {
  // Handled before parsing; registered so it shows in --help.
  app->add_option("--config", "flat key = value file; flags given later override it");
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Hard-drive health-degree prediction with layerwise adversarial training", "lpat"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  PrepOptions prep;
  auto *p = app.add_subcommand("prep", "clean, subset, window and split a SMART CSV into a dataset cache");
  p->add_option("--input", prep.input, "SMART CSV file")->required()->check(CLI::ExistingFile);
  p->add_option("--out", prep.out, "dataset cache to write")->required();
  p->add_option("--attrs", prep.attributes, "comma-separated attribute columns")->delimiter(',');
  p->add_option("--clusters", prep.clusters, "k-means clusters for the healthy subset")->capture_default_str();
  p->add_option("--keep-frac", prep.keep_frac, "share of each cluster kept")->capture_default_str();
  p->add_option("--window", prep.window, "window length in days")->capture_default_str();
  p->add_option("--train-frac", prep.train_frac, "share of drives for training and validation")->capture_default_str();
  p->add_option("--valid-frac", prep.valid_frac, "share of training drives held out for validation")
      ->capture_default_str();
  p->add_option("--seed", prep.seed, "random seed")->capture_default_str();
  p->add_flag("--lenient", prep.lenient, "skip malformed rows instead of failing");
  add_config_flag(p);

  SynthOptions synth;
  auto *s = app.add_subcommand("synth", "generate a synthetic SMART CSV");
  s->add_option("--healthy", synth.healthy, "healthy drives")->capture_default_str();
  s->add_option("--failed", synth.failed, "failing drives")->capture_default_str();
  s->add_option("--attrs", synth.attributes, "attribute count")->capture_default_str()->check(CLI::PositiveNumber);
  s->add_option("--days", synth.days, "days of history per drive")->capture_default_str();
  s->add_option("--drift", synth.drift, "failure drift magnitude")->capture_default_str();
  s->add_option("--noise", synth.noise, "daily noise scale")->capture_default_str();
  s->add_option("--spread", synth.spread, "per-drive offset scale")->capture_default_str();
  s->add_option("--ramp-days", synth.ramp_days, "length of the failure ramp")->capture_default_str();
  s->add_option("--seed", synth.seed, "random seed")->capture_default_str();
  s->add_option("--out", synth.out, "CSV file to write")->required();
  add_config_flag(s);

  TrainOptions train;
  auto *t = app.add_subcommand("train", "train a model on a dataset cache");
  t->add_option("--data", train.data, "dataset cache")->required()->check(CLI::ExistingFile);
  t->add_option("--mode", train.mode, "training method")
      ->capture_default_str()
      ->check(CLI::IsMember({"basic", "at", "vat", "lpat"}));
  t->add_option("--layers", train.layers, "perturbed layers (default: input for at, all for lpat)")
      ->check(CLI::IsMember({"input", "bottom", "top", "all"}));
  t->add_option("--epsilon", train.epsilon, "perturbation norm")->capture_default_str();
  t->add_option("--lambda", train.lambda, "adversarial loss weight")->capture_default_str();
  t->add_option("--xi", train.xi, "finite-difference step")->capture_default_str();
  t->add_option("--unlabeled-frac", train.unlabeled_frac, "share of the unlabeled pool used")->capture_default_str();
  t->add_option("--epochs", train.epochs, "training epochs")->capture_default_str();
  t->add_option("--batch", train.batch, "mini-batch size")->capture_default_str();
  t->add_option("--lr", train.lr, "RMSProp learning rate")->capture_default_str();
  t->add_option("--seed", train.seed, "random seed")->capture_default_str();
  t->add_option("--dense1", train.dense1, "first dense width")->capture_default_str();
  t->add_option("--dense2", train.dense2, "second dense width")->capture_default_str();
  t->add_option("--lstm", train.lstm, "LSTM width")->capture_default_str();
  t->add_option("--out", train.out, "checkpoint to write")->required();
  t->add_option("--report", train.report, "per-epoch report file");
  add_config_flag(t);

  EvalOptions ev;
  auto *e = app.add_subcommand("eval", "evaluate a checkpoint on a dataset split");
  e->add_option("--data", ev.data, "dataset cache")->required()->check(CLI::ExistingFile);
  e->add_option("--checkpoint", ev.checkpoint, "checkpoint")->required()->check(CLI::ExistingFile);
  e->add_option("--split", ev.split, "split to evaluate")->capture_default_str()->check(
      CLI::IsMember({"valid", "test"}));
  e->add_option("--report", ev.report, "metrics file to write");
  add_config_flag(e);

  PredictOptions pr;
  auto *q = app.add_subcommand("predict", "classify one window of raw SMART rows");
  q->add_option("--checkpoint", pr.checkpoint, "checkpoint")->required()->check(CLI::ExistingFile);
  q->add_option("--window", pr.window, "CSV with a header and one row per day")->required()->check(
      CLI::ExistingFile);
  add_config_flag(q);

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  try {
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp &ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp &ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError &ex) {
    app.exit(ex, err, err);
    return kUsageExit;
  } catch (const Error &ex) {
    err << "error: " << ex.what() << '\n';
    return kUsageExit;
  }

  std::ostringstream buffered;
  try {
    if (*p) cmd_prep(prep, out);
    if (*s) cmd_synth(synth, out);
    if (*t) cmd_train(train, out);
    if (*e) cmd_eval(ev, out);
    if (*q) {
      cmd_predict(pr, buffered);
      out << buffered.str();
    }
  } catch (const UsageError &ex) {
    err << "usage error: " << ex.what() << '\n';
    return kUsageExit;
  } catch (const std::exception &ex) {
    err << "error: " << ex.what() << '\n';
    return kFailureExit;
  }
  return 0;
}

}  // namespace lpat::cli
