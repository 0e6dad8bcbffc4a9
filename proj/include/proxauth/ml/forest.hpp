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

#include <numeric>
#include <vector>

#include "proxauth/ml/cart.hpp"

namespace proxauth::ml {

struct ForestParams {
  int trees = 100;
  TreeParams tree{12, 1, 2};
  bool bootstrap = true;
};

// Bagged CART trees with per-split feature subsampling; hard majority vote.
class RandomForest {
 public:
  RandomForest() = default;
  explicit RandomForest(std::vector<DecisionTree> trees) : trees_(std::move(trees)) {}

  static RandomForest fit(const LabeledMatrix& m, const ForestParams& params, std::uint64_t seed) {
    std::vector<DecisionTree> trees;
    trees.reserve(static_cast<std::size_t>(params.trees));
    const Rng root(seed);
    for (int t = 0; t < params.trees; ++t) {
      Rng rng = root.fork(static_cast<std::uint64_t>(t));
      std::vector<std::size_t> rows(m.size());
      if (params.bootstrap) {
        for (auto& r : rows) r = static_cast<std::size_t>(rng.below(m.size()));
      } else {
        std::iota(rows.begin(), rows.end(), 0);
      }
      trees.push_back(DecisionTree::fit(m.x, m.y, rows, params.tree, rng.fork(1)));
    }
    return RandomForest(std::move(trees));
  }

  double vote_fraction(const FeatureVector& v) const {
    if (trees_.empty()) return 0.0;
    std::size_t votes = 0;
    for (const auto& t : trees_) votes += static_cast<std::size_t>(t.predict(v));
    return static_cast<double>(votes) / static_cast<double>(trees_.size());
  }

  // Strict majority; a split vote denies.
  int predict(const FeatureVector& v) const {
    std::size_t votes = 0;
    for (const auto& t : trees_) votes += static_cast<std::size_t>(t.predict(v));
    return 2 * votes > trees_.size() ? 1 : 0;
  }

  const std::vector<DecisionTree>& trees() const { return trees_; }

  friend bool operator==(const RandomForest&, const RandomForest&) = default;

 private:
  std::vector<DecisionTree> trees_;
};

}  // namespace proxauth::ml
