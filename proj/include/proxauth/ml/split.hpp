// Copyright 2026 The proxauth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "proxauth/error.hpp"
#include "proxauth/ml/sample.hpp"
#include "proxauth/random.hpp"

namespace proxauth::ml {

struct TrainTest {
  Dataset train;
  Dataset test;
};

struct IndexSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

namespace detail {

inline std::array<std::vector<std::size_t>, 2> indices_by_label(const Dataset& d) {
  std::array<std::vector<std::size_t>, 2> by_label;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    by_label[static_cast<std::size_t>(d.rows[i].label)].push_back(i);
  }
  return by_label;
}

inline Dataset subset(const Dataset& d, const std::vector<std::size_t>& idx) {
  Dataset out;
  out.rows.reserve(idx.size());
  for (auto i : idx) out.rows.push_back(d.rows[i]);
  return out;
}

}  // namespace detail

// Stratified hold-out split; each class contributes round(n_c * fraction) rows
// to the test side. Both sides keep the original row order.
inline IndexSplit split_indices(const Dataset& d, double test_fraction, std::uint64_t seed) {
  if (d.empty()) fail(ErrorCode::kConfig, "cannot split an empty dataset");
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    fail(ErrorCode::kConfig, "test_fraction must lie strictly between 0 and 1");
  }
  auto by_label = detail::indices_by_label(d);
  IndexSplit out;
  Rng rng(seed);
  for (std::size_t label = 0; label < 2; ++label) {
    auto& idx = by_label[label];
    if (idx.size() < 2) fail(ErrorCode::kStratify, "each class needs at least 2 rows to stratify");
    Rng class_rng = rng.fork(label);
    class_rng.shuffle(idx.begin(), idx.end());
    auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(idx.size()) * test_fraction));
    n_test = std::clamp<std::size_t>(n_test, 1, idx.size() - 1);
    out.test.insert(out.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.insert(out.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

inline TrainTest split(const Dataset& d, double test_fraction, std::uint64_t seed) {
  const auto s = split_indices(d, test_fraction, seed);
  return {detail::subset(d, s.train), detail::subset(d, s.test)};
}

struct Fold {
  Dataset train;
  Dataset validation;
  std::vector<std::size_t> validation_indices;
};

// Stratified k-fold. Rows of each shuffled class are dealt round-robin, and the
// dealer carries over between classes so fold sizes differ by at most one.
inline std::vector<std::vector<std::size_t>> kfold_indices(const Dataset& d, int k, std::uint64_t seed) {
  if (k < 2) fail(ErrorCode::kConfig, "k must be at least 2");
  if (static_cast<std::size_t>(k) > d.size()) fail(ErrorCode::kConfig, "k exceeds the dataset size");
  auto by_label = detail::indices_by_label(d);
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  Rng rng(seed);
  std::size_t dealer = 0;
  for (std::size_t label = 0; label < 2; ++label) {
    auto& idx = by_label[label];
    if (idx.size() < static_cast<std::size_t>(k)) {
      fail(ErrorCode::kStratify, "each class needs at least k rows");
    }
    Rng class_rng = rng.fork(label);
    class_rng.shuffle(idx.begin(), idx.end());
    for (auto i : idx) {
      folds[dealer].push_back(i);
      dealer = (dealer + 1) % folds.size();
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

inline std::vector<Fold> kfold(const Dataset& d, int k, std::uint64_t seed) {
  const auto folds = kfold_indices(d, k, seed);
  std::vector<Fold> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    out.push_back({detail::subset(d, train_idx), detail::subset(d, folds[f]), folds[f]});
  }
  return out;
}

}  // namespace proxauth::ml
