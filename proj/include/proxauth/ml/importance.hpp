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
#include <vector>

#include "proxauth/error.hpp"
#include "proxauth/ml/model.hpp"

namespace proxauth::ml {

using ImportanceVector = FeatureVector;

// I(X;Y) in bits, X discretized into `bins` equal-width bins over its range.
inline double mutual_information(const std::vector<double>& column, const std::vector<int>& labels,
                                 int bins = 10) {
  if (column.empty()) fail(ErrorCode::kEmptyInput, "mutual information of an empty column");
  if (column.size() != labels.size()) fail(ErrorCode::kShape, "column and labels differ in length");
  if (bins < 1) fail(ErrorCode::kConfig, "bins must be at least 1");
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it, hi = *hi_it;
  const double width = (hi - lo) / bins;
  std::vector<std::array<double, 2>> joint(static_cast<std::size_t>(bins), {0.0, 0.0});
  for (std::size_t i = 0; i < column.size(); ++i) {
    int b = width > 0.0 ? static_cast<int>((column[i] - lo) / width) : 0;
    b = std::clamp(b, 0, bins - 1);
    joint[static_cast<std::size_t>(b)][labels[i] ? 1 : 0] += 1.0;
  }
  const double n = static_cast<double>(column.size());
  std::array<double, 2> py{0.0, 0.0};
  for (const auto& row : joint) {
    py[0] += row[0];
    py[1] += row[1];
  }
  double mi = 0.0;
  for (const auto& row : joint) {
    const double px = (row[0] + row[1]) / n;
    for (std::size_t c = 0; c < 2; ++c) {
      if (row[c] == 0.0) continue;
      const double pxy = row[c] / n;
      mi += pxy * std::log2(pxy / (px * (py[c] / n)));
    }
  }
  return std::max(mi, 0.0);
}

// Scales non-negative scores to sum to 1; an all-zero vector becomes uniform.
inline ImportanceVector normalize_importance(ImportanceVector v) {
  double sum = 0.0;
  for (auto& s : v) {
    s = std::max(s, 0.0);
    sum += s;
  }
  if (sum <= 0.0) {
    v.fill(1.0 / static_cast<double>(kNumFeatures));
    return v;
  }
  for (auto& s : v) s /= sum;
  return v;
}

// DT/RF: impurity decrease. KNN: mutual information with the label over the
// training set. SVM/LR: absolute coefficients on standardized features.
// Naive Bayes has no importance measure.
inline ImportanceVector feature_importance(const TrainedModel& model, const LabeledMatrix& train_set) {
  switch (model.algo()) {
    case Algo::kDT:
      return normalize_importance(std::get<DecisionTree>(model.params()).impurity_decrease());
    case Algo::kRF: {
      ImportanceVector acc{};
      const auto& trees = std::get<RandomForest>(model.params()).trees();
      for (const auto& t : trees) {
        const auto& dec = t.impurity_decrease();
        double s = 0.0;
        for (double d : dec) s += d;
        if (s <= 0.0) continue;
        for (std::size_t f = 0; f < kNumFeatures; ++f) acc[f] += dec[f] / s;
      }
      return normalize_importance(acc);
    }
    case Algo::kKNN: {
      if (train_set.empty()) fail(ErrorCode::kEmptyInput, "KNN importance needs the training set");
      ImportanceVector mi{};
      std::vector<double> col(train_set.size());
      for (std::size_t f = 0; f < kNumFeatures; ++f) {
        for (std::size_t i = 0; i < train_set.size(); ++i) col[i] = train_set.x[i][f];
        mi[f] = mutual_information(col, train_set.y);
      }
      return normalize_importance(mi);
    }
    case Algo::kSVM: {
      ImportanceVector w = std::get<SvmModel>(model.params()).weights.w;
      for (auto& v : w) v = std::abs(v);
      return normalize_importance(w);
    }
    case Algo::kLR: {
      ImportanceVector w = std::get<LogisticModel>(model.params()).weights.w;
      for (auto& v : w) v = std::abs(v);
      return normalize_importance(w);
    }
    case Algo::kNB:
      fail(ErrorCode::kNotApplicable, "feature importance is not applicable to naive Bayes");
  }
  fail(ErrorCode::kConfig, "unknown algorithm");
}

}  // namespace proxauth::ml
