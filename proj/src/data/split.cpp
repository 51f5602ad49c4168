// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

#include "lpat/data/preprocess.hpp"
#include "lpat/errors.hpp"

namespace lpat::data {

std::map<std::string, SplitPart> assign_splits(std::vector<DriveKey> drives,
                                               const SplitFractions &fractions,
                                               std::uint64_t seed) {
  if (!(fractions.train > 0.0 && fractions.train < 1.0) ||
      !(fractions.valid > 0.0 && fractions.valid < 1.0))
    throw InvalidArgument("split fractions must lie strictly between 0 and 1");

  std::sort(drives.begin(), drives.end(),
            [](const DriveKey &a, const DriveKey &b) { return a.serial < b.serial; });
  drives.erase(std::unique(drives.begin(), drives.end(),
                           [](const DriveKey &a, const DriveKey &b) { return a.serial == b.serial; }),
               drives.end());

  const auto n = static_cast<long>(drives.size());
  const long trainval = std::lround(fractions.train * static_cast<double>(n));
  const long n_test = n - trainval;
  const long n_valid = std::lround(fractions.valid * static_cast<double>(trainval));
  const long n_train = trainval - n_valid;
  if (n_train < 1 || n_valid < 1 || n_test < 1)
    throw InvalidArgument("too few drives (" + std::to_string(n) +
                          ") to populate train, valid and test splits");

  // Shuffle each class, then interleave by relative rank so any prefix of
  // the merged order holds both classes in proportion.
  std::mt19937_64 rng(seed);
  std::vector<std::tuple<double, int, std::string>> order;
  order.reserve(drives.size());
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<std::string> members;
    for (const auto &d : drives)
      if (static_cast<int>(d.failed) == cls) members.push_back(d.serial);
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t r = 0; r < members.size(); ++r)
      order.emplace_back((static_cast<double>(r) + 0.5) / static_cast<double>(members.size()),
                         cls, members[r]);
  }
  std::sort(order.begin(), order.end());

  std::map<std::string, SplitPart> out;
  for (long i = 0; i < n; ++i) {
    const SplitPart part = i < n_test             ? SplitPart::Test
                           : i < n_test + n_valid ? SplitPart::Valid
                                                  : SplitPart::Train;
    out.emplace(std::get<2>(order[static_cast<std::size_t>(i)]), part);
  }
  return out;
}

DatasetSplit split_dataset(WindowedSamples samples, const SplitFractions &fractions,
                           std::uint64_t seed) {
  std::map<std::string, bool> failed;
  for (const auto &s : samples.labeled) {
    const bool f = *s.label != HealthDegree::Healthy;
    auto [it, inserted] = failed.emplace(s.serial, f);
    if (!inserted) it->second = it->second || f;
  }
  std::vector<DriveKey> keys;
  keys.reserve(failed.size());
  for (const auto &[serial, f] : failed) keys.push_back({serial, f});
  const auto parts = assign_splits(std::move(keys), fractions, seed);

  DatasetSplit split;
  for (auto &s : samples.labeled) {
    switch (parts.at(s.serial)) {
      case SplitPart::Train:
        split.train_labeled.push_back(std::move(s));
        break;
      case SplitPart::Valid:
        split.valid.push_back(std::move(s));
        break;
      case SplitPart::Test:
        split.test.push_back(std::move(s));
        break;
    }
  }
  for (auto &s : samples.unlabeled) {
    const auto it = parts.find(s.serial);
    if (it == parts.end() || it->second == SplitPart::Train)
      split.train_unlabeled.push_back(std::move(s));
  }
  return split;
}

}  // namespace lpat::data
