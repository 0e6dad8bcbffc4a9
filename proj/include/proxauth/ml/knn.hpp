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
#include <numeric>
#include <vector>

#include "proxauth/ml/sample.hpp"

namespace proxauth::ml {

// Stores the (already standardized) training set; Euclidean distance, ties in
// distance broken by training-row index, ties in the vote resolved to 0.
class KNearestNeighbors {
 public:
  KNearestNeighbors() = default;
  KNearestNeighbors(int k, std::vector<FeatureVector> x, std::vector<int> y)
      : k_(k), x_(std::move(x)), y_(std::move(y)) {}

  int k() const { return k_; }
  const std::vector<FeatureVector>& points() const { return x_; }
  const std::vector<int>& labels() const { return y_; }

  static double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    double s = 0.0;
    for (std::size_t f = 0; f < kNumFeatures; ++f) s += (a[f] - b[f]) * (a[f] - b[f]);
    return s;
  }

  std::vector<std::size_t> neighbors(const FeatureVector& q) const {
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(k_, 1)), x_.size());
    std::vector<std::pair<double, std::size_t>> d(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) d[i] = {squared_distance(q, x_[i]), i};
    std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = d[i].second;
    return out;
  }

  double positive_fraction(const FeatureVector& q) const {
    const auto nn = neighbors(q);
    if (nn.empty()) return 0.0;
    std::size_t pos = 0;
    for (auto i : nn) pos += static_cast<std::size_t>(y_[i]);
    return static_cast<double>(pos) / static_cast<double>(nn.size());
  }

  int predict(const FeatureVector& q) const {
    const auto nn = neighbors(q);
    std::size_t pos = 0;
    for (auto i : nn) pos += static_cast<std::size_t>(y_[i]);
    return 2 * pos > nn.size() ? 1 : 0;
  }

  friend bool operator==(const KNearestNeighbors&, const KNearestNeighbors&) = default;

 private:
  int k_ = 5;
  std::vector<FeatureVector> x_;
  std::vector<int> y_;
};

}  // namespace proxauth::ml
