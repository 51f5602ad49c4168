// SPDX-License-Identifier: Apache-2.0

#include "lpat/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "lpat/data/cache.hpp"
#include "lpat/data/csv.hpp"
#include "lpat/data/preprocess.hpp"
#include "lpat/eval/metrics.hpp"
#include "lpat/model/checkpoint.hpp"
#include "lpat/training/report.hpp"

namespace lpat::cli {

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string describe(const TrainOptions &o) {
  std::ostringstream s;
  s << "mode=" << o.mode << " layers=" << (o.layers.empty() ? "default" : o.layers) << " epsilon=" << o.epsilon
    << " lambda=" << o.lambda << " xi=" << o.xi << " unlabeled_frac=" << o.unlabeled_frac
    << "\nepochs=" << o.epochs << " batch=" << o.batch << " lr=" << o.lr << " seed=" << o.seed
    << " widths=" << o.dense1 << '/' << o.dense2 << '/' << o.lstm;
  return s.str();
}

}  // namespace

perturbation::PerturbationConfig perturbation_config(const TrainOptions &o) {
  using perturbation::LayerSelection;
  using perturbation::Mode;
  perturbation::PerturbationConfig p;
  p.set_epsilon(o.epsilon);
  p.lambda = o.lambda;
  p.xi = o.xi;
  if (o.mode == "basic") {
    p.mode = Mode::None;
  } else if (o.mode == "at") {
    p.mode = Mode::SupervisedAt;
    p.layers = o.layers.empty() ? LayerSelection::Input : perturbation::parse_layers(o.layers);
  } else if (o.mode == "vat") {
    p.mode = Mode::VirtualAt;
    p.layers = LayerSelection::Input;
    if (!o.layers.empty() && o.layers != "input")
      throw UsageError("mode vat perturbs the input only; use --mode lpat for --layers " + o.layers);
  } else if (o.mode == "lpat") {
    p.mode = Mode::VirtualAt;
    p.layers = o.layers.empty() ? LayerSelection::All : perturbation::parse_layers(o.layers);
  } else {
    throw UsageError("unknown mode '" + o.mode + "' (expected basic, at, vat or lpat)");
  }
  if (o.epsilon > 50.0) throw UsageError("epsilon must lie in [0, 50]");
  if (o.lambda > 5.0) throw UsageError("lambda must lie in [0, 5]");
  try {
    p.validate();
  } catch (const InvalidArgument &e) {
    throw UsageError(e.what());
  }
  return p;
}

training::TrainConfig train_config(const TrainOptions &o) {
  training::TrainConfig c;
  c.architecture.dense1 = o.dense1;
  c.architecture.dense2 = o.dense2;
  c.architecture.lstm = o.lstm;
  c.learning_rate = o.lr;
  c.batch_size = o.batch;
  c.epochs = o.epochs;
  c.unlabeled_fraction = o.unlabeled_frac;
  c.seed = o.seed;
  try {
    c.validate();
  } catch (const InvalidArgument &e) {
    throw UsageError(e.what());
  }
  return c;
}

void cmd_prep(const PrepOptions &o, std::ostream &out) {
  data::PrepConfig cfg;
  cfg.attributes = o.attributes.empty() ? data::default_attributes() : o.attributes;
  cfg.clusters = o.clusters;
  cfg.keep_frac = o.keep_frac;
  cfg.window = o.window;
  cfg.fractions = {o.train_frac, o.valid_frac};
  cfg.seed = o.seed;
  auto ingested = data::ingest_csv(o.input, cfg.attributes, {o.lenient});
  auto result = data::prepare_dataset(std::move(ingested.timelines), cfg);
  result.summary.skipped_rows = ingested.skipped.size();
  data::save_dataset(result.split, o.out);
  data::print_summary(out, result.summary);
  if (!ingested.skipped.empty()) out << "skipped rows: " << ingested.skipped.size() << '\n';
}

void cmd_synth(const SynthOptions &o, std::ostream &out) {
  data::SyntheticConfig cfg;
  cfg.healthy = o.healthy;
  cfg.failed = o.failed;
  cfg.attributes = o.attributes;
  cfg.days = o.days;
  cfg.drift_magnitude = o.drift;
  cfg.noise_scale = o.noise;
  cfg.drive_spread = o.spread;
  cfg.ramp_days = o.ramp_days;
  cfg.seed = o.seed;
  const auto drives = data::generate_synthetic(cfg);
  const auto names = data::synthetic_attribute_names(o.attributes);
  std::ofstream os(o.out, std::ios::binary);
  if (!os) throw Error("cannot open '" + o.out + "' for writing");
  data::write_smart_csv(os, drives, names);
  if (!os) throw Error("failed writing '" + o.out + "'");
  out << "wrote " << drives.size() << " drives (" << o.healthy << " healthy, " << o.failed << " failed) to "
      << o.out << '\n';
}

void cmd_train(const TrainOptions &o, std::ostream &out) {
  const auto pcfg = perturbation_config(o);
  const auto tcfg = train_config(o);
  const auto dataset = data::load_dataset(o.data);
  training::TrainHooks hooks;
  hooks.on_epoch = [&out](const training::EpochRecord &e) {
    char line[160];
    std::snprintf(line, sizeof line, "epoch %zu loss %.6f valid_loss %.6f valid_macro_f1 %.4f\n", e.epoch,
                  e.train_loss, e.valid_loss, e.valid_macro_f1);
    out << line;
  };
  training::TrainResult result;
  try {
    result = training::train(dataset, tcfg, pcfg, hooks);
  } catch (const InvalidArgument &e) {
    throw UsageError(e.what());
  }
  model::Checkpoint ckpt;
  ckpt.network = result.best;
  ckpt.input = {dataset.window, dataset.attributes, dataset.scaling.v_min, dataset.scaling.v_max};
  model::checkpoint_save(ckpt, o.out);
  if (!o.report.empty()) training::save_report(result.report, o.report, describe(o));
  out << "best epoch " << result.report.best_epoch << " valid_macro_f1 " << result.report.best().valid_macro_f1
      << '\n';
}

void cmd_eval(const EvalOptions &o, std::ostream &out) {
  if (o.split != "valid" && o.split != "test")
    throw UsageError("unknown split '" + o.split + "' (expected valid or test)");
  const auto dataset = data::load_dataset(o.data);
  const auto ckpt = model::checkpoint_load(o.checkpoint);
  const auto &arch = ckpt.network.architecture();
  if (arch.inputs != static_cast<Index>(dataset.attributes.size()) || ckpt.input.window != dataset.window ||
      ckpt.input.attributes != dataset.attributes)
    throw ArchitectureError("checkpoint was trained on " + std::to_string(arch.inputs) +
                            " attributes with window " + std::to_string(ckpt.input.window) +
                            "; dataset has " + std::to_string(dataset.attributes.size()) +
                            " attributes with window " + std::to_string(dataset.window));
  const auto &samples = o.split == "test" ? dataset.test : dataset.valid;
  const auto report = eval::evaluate(ckpt.network, samples);
  if (!o.report.empty()) eval::save_metrics(report, o.report, "split=" + o.split);
  eval::print_tables(out, report);
}

Matrix read_window_csv(std::istream &is, const std::vector<std::string> &attributes) {
  std::string line;
  if (!std::getline(is, line)) throw SchemaError(attributes.empty() ? "header" : attributes.front());
  const auto header = split_csv_line(line);
  std::vector<std::size_t> cols;
  for (const auto &a : attributes) {
    const auto it = std::find(header.begin(), header.end(), a);
    if (it == header.end()) throw SchemaError(a);
    cols.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                    std::to_string(cells.size()));
    std::vector<double> row;
    for (std::size_t c : cols) {
      const auto &cell = cells[c];
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw ParseError(line_no, "non-numeric value '" + cell + "' in column " + header[c]);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(attributes.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < attributes.size(); ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  return m;
}

std::vector<int> round_to_thousandths(const Vector &probs) {
  const auto n = static_cast<std::size_t>(probs.size());
  std::vector<int> units(n);
  std::vector<std::pair<double, std::size_t>> remainders;
  int total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double scaled = probs(static_cast<Index>(i)) * 1000.0;
    units[i] = static_cast<int>(std::floor(scaled));
    total += units[i];
    remainders.emplace_back(scaled - units[i], i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (std::size_t k = 0; total < 1000 && k < n; ++k, ++total) ++units[remainders[k].second];
  return units;
}

void cmd_predict(const PredictOptions &o, std::ostream &out) {
  const auto ckpt = model::checkpoint_load(o.checkpoint);
  std::ifstream is(o.window);
  if (!is) throw Error("cannot open window file '" + o.window + "'");
  const Matrix raw = read_window_csv(is, ckpt.input.attributes);
  if (raw.rows() != ckpt.input.window)
    throw InvalidArgument("window has " + std::to_string(raw.rows()) + " rows; expected " +
                          std::to_string(ckpt.input.window) + " (w = " + std::to_string(ckpt.input.window) + ")");
  Matrix scaled(raw.rows(), raw.cols());
  for (Index r = 0; r < raw.rows(); ++r)
    for (Index c = 0; c < raw.cols(); ++c)
      scaled(r, c) = data::minmax_apply(raw(r, c), ckpt.input.v_min[c], ckpt.input.v_max[c]);
  const auto pred = training::predict(ckpt.network, scaled);
  const auto units = round_to_thousandths(pred.probs);
  std::ostringstream text;
  text << "class " << pred.label << '\n';
  text << "meaning " << data::meaning_of(static_cast<data::HealthDegree>(pred.label)) << '\n';
  text << "probabilities";
  char buf[16];
  for (int u : units) {
    std::snprintf(buf, sizeof buf, " %d.%03d", u / 1000, u % 1000);
    text << buf;
  }
  text << '\n';
  out << text.str();
}

}  // namespace lpat::cli
