// SPDX-License-Identifier: Apache-2.0

#include "lpat/data/batch.hpp"

#include "lpat/errors.hpp"

namespace lpat::data {

SequenceBatch make_batch(std::span<const Sample *const> samples) {
  if (samples.empty()) throw ShapeError("make_batch: empty batch");
  const Index w = samples.front()->features.rows();
  const Index n = samples.front()->features.cols();
  const auto b = static_cast<Index>(samples.size());
  SequenceBatch out;
  out.batch = b;
  out.steps = w;
  out.values.resize(n, w * b);
  for (Index i = 0; i < b; ++i) {
    const Matrix &f = samples[i]->features;
    if (f.rows() != w || f.cols() != n) throw ShapeError("make_batch: windows differ in shape");
    for (Index t = 0; t < w; ++t) out.values.col(t * b + i) = f.row(t).transpose();
  }
  return out;
}

SequenceBatch make_batch(std::span<const Sample> samples) {
  std::vector<const Sample *> ptrs;
  ptrs.reserve(samples.size());
  for (const auto &s : samples) ptrs.push_back(&s);
  return make_batch(std::span<const Sample *const>(ptrs));
}

std::vector<int> labels_of(std::span<const Sample *const> samples) {
  std::vector<int> out;
  out.reserve(samples.size());
  for (const auto *s : samples) out.push_back(s->label ? class_index(*s->label) : -1);
  return out;
}

}  // namespace lpat::data
