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
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "proxauth/ml/sample.hpp"
#include "proxauth/random.hpp"

namespace proxauth::ml {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::int64_t count0 = 0;
  std::int64_t count1 = 0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeParams {
  int max_depth = 12;
  int min_leaf = 2;
  // Features examined per split; >= kNumFeatures means all, in index order.
  int max_features = static_cast<int>(kNumFeatures);
};

// CART classifier with Gini impurity. Rows go left when x[feature] <= threshold.
class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<TreeNode> nodes, FeatureVector importance)
      : nodes_(std::move(nodes)), importance_(importance) {}

  static DecisionTree fit(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                          const std::vector<std::size_t>& rows, const TreeParams& params, Rng rng) {
    Builder b{x, y, params, rng, {}, {}, static_cast<double>(rows.size())};
    b.importance.fill(0.0);
    std::vector<std::size_t> idx = rows;
    b.grow(idx, 0);
    return DecisionTree(std::move(b.nodes), b.importance);
  }

  static DecisionTree fit(const LabeledMatrix& m, const TreeParams& params, Rng rng) {
    std::vector<std::size_t> rows(m.size());
    std::iota(rows.begin(), rows.end(), 0);
    return fit(m.x, m.y, rows, params, rng);
  }

  const TreeNode& leaf_for(const FeatureVector& v) const {
    int i = 0;
    while (!nodes_[static_cast<std::size_t>(i)].is_leaf()) {
      const auto& n = nodes_[static_cast<std::size_t>(i)];
      i = v[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[static_cast<std::size_t>(i)];
  }

  // Majority class of the leaf; an even leaf resolves to 0.
  int predict(const FeatureVector& v) const {
    const auto& leaf = leaf_for(v);
    return leaf.count1 > leaf.count0 ? 1 : 0;
  }

  double positive_fraction(const FeatureVector& v) const {
    const auto& leaf = leaf_for(v);
    const auto n = leaf.count0 + leaf.count1;
    return n ? static_cast<double>(leaf.count1) / static_cast<double>(n) : 0.0;
  }

  // Unnormalized total weighted impurity decrease per feature.
  const FeatureVector& impurity_decrease() const { return importance_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  std::size_t depth() const {
    std::size_t best = 0;
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
      auto [i, d] = stack.back();
      stack.pop_back();
      best = std::max(best, d);
      const auto& n = nodes_[static_cast<std::size_t>(i)];
      if (!n.is_leaf()) {
        stack.push_back({n.left, d + 1});
        stack.push_back({n.right, d + 1});
      }
    }
    return best;
  }

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  static double gini(std::int64_t c0, std::int64_t c1) {
    const double n = static_cast<double>(c0 + c1);
    if (n == 0.0) return 0.0;
    const double p0 = static_cast<double>(c0) / n;
    const double p1 = static_cast<double>(c1) / n;
    return 1.0 - p0 * p0 - p1 * p1;
  }

  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double child_impurity = 0.0;  // weighted by child size, normalized by node size
  };

  struct Builder {
    const std::vector<FeatureVector>& x;
    const std::vector<int>& y;
    const TreeParams& params;
    Rng rng;
    std::vector<TreeNode> nodes;
    FeatureVector importance;
    double total;

    Split best_split_on(const std::vector<std::size_t>& idx, std::size_t f, std::int64_t c0,
                        std::int64_t c1) const {
      std::vector<std::pair<double, int>> col;
      col.reserve(idx.size());
      for (auto i : idx) col.emplace_back(x[i][f], y[i]);
      std::sort(col.begin(), col.end());
      const auto n = static_cast<std::int64_t>(col.size());
      const auto min_leaf = static_cast<std::int64_t>(std::max(1, params.min_leaf));
      Split best;
      best.child_impurity = 2.0;
      std::int64_t l0 = 0, l1 = 0;
      for (std::int64_t i = 0; i + 1 < n; ++i) {
        (col[static_cast<std::size_t>(i)].second ? l1 : l0)++;
        const double a = col[static_cast<std::size_t>(i)].first;
        const double b = col[static_cast<std::size_t>(i + 1)].first;
        if (!(a < b)) continue;
        const std::int64_t nl = i + 1, nr = n - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double imp = (static_cast<double>(nl) * gini(l0, l1) +
                            static_cast<double>(nr) * gini(c0 - l0, c1 - l1)) /
                           static_cast<double>(n);
        if (imp < best.child_impurity) {
          double mid = a + (b - a) / 2.0;
          if (!(mid < b)) mid = a;
          best = {static_cast<int>(f), mid, imp};
        }
      }
      return best;
    }

    int grow(std::vector<std::size_t>& idx, int depth) {
      std::int64_t c0 = 0, c1 = 0;
      for (auto i : idx) (y[i] ? c1 : c0)++;
      const int id = static_cast<int>(nodes.size());
      nodes.push_back(TreeNode{-1, 0.0, -1, -1, c0, c1});

      const auto n = static_cast<std::int64_t>(idx.size());
      if (depth >= params.max_depth || c0 == 0 || c1 == 0 || n < 2 * std::max(1, params.min_leaf)) {
        return id;
      }
      const double node_gini = gini(c0, c1);

      std::array<std::size_t, kNumFeatures> order;
      std::iota(order.begin(), order.end(), 0);
      std::size_t considered = kNumFeatures;
      if (params.max_features < static_cast<int>(kNumFeatures)) {
        rng.shuffle(order.begin(), order.end());
        considered = static_cast<std::size_t>(std::max(1, params.max_features));
      }

      // Examine the sampled features; if none admits a useful split, keep
      // drawing from the rest of the permutation.
      Split best;
      best.child_impurity = 2.0;
      for (std::size_t k = 0; k < kNumFeatures; ++k) {
        if (k >= considered && best.feature >= 0) break;
        const auto s = best_split_on(idx, order[k], c0, c1);
        if (s.feature >= 0 && node_gini - s.child_impurity > 1e-12 &&
            s.child_impurity < best.child_impurity) {
          best = s;
        }
      }
      if (best.feature < 0) return id;

      std::vector<std::size_t> left, right;
      for (auto i : idx) {
        (x[i][static_cast<std::size_t>(best.feature)] <= best.threshold ? left : right).push_back(i);
      }
      importance[static_cast<std::size_t>(best.feature)] +=
          static_cast<double>(n) / total * (node_gini - best.child_impurity);
      idx.clear();
      idx.shrink_to_fit();

      const int l = grow(left, depth + 1);
      const int r = grow(right, depth + 1);
      auto& node = nodes[static_cast<std::size_t>(id)];
      node.feature = best.feature;
      node.threshold = best.threshold;
      node.left = l;
      node.right = r;
      return id;
    }
  };

  std::vector<TreeNode> nodes_;
  FeatureVector importance_{};
};

}  // namespace proxauth::ml
