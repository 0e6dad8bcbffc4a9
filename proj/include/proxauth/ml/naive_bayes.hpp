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

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "proxauth/ml/sample.hpp"

namespace proxauth::ml {

struct GaussianClass {
  double prior = 0.0;
  FeatureVector mean{};
  FeatureVector variance{};

  friend bool operator==(const GaussianClass&, const GaussianClass&) = default;
};

class GaussianNaiveBayes {
 public:
  GaussianNaiveBayes() = default;
  explicit GaussianNaiveBayes(std::array<GaussianClass, 2> classes) : classes_(classes) {}

  // Variances are floored at `variance_floor`. Sums run in canonical row order.
  static GaussianNaiveBayes fit(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                                double variance_floor) {
    const auto order = canonical_order(x, y);
    std::array<GaussianClass, 2> cls{};
    std::array<double, 2> count{};
    for (auto i : order) {
      auto& c = cls[static_cast<std::size_t>(y[i])];
      count[static_cast<std::size_t>(y[i])] += 1.0;
      for (std::size_t f = 0; f < kNumFeatures; ++f) c.mean[f] += x[i][f];
    }
    for (std::size_t k = 0; k < 2; ++k) {
      for (auto& m : cls[k].mean) m = count[k] > 0 ? m / count[k] : 0.0;
    }
    for (auto i : order) {
      auto& c = cls[static_cast<std::size_t>(y[i])];
      for (std::size_t f = 0; f < kNumFeatures; ++f) {
        const double d = x[i][f] - c.mean[f];
        c.variance[f] += d * d;
      }
    }
    const double n = count[0] + count[1];
    for (std::size_t k = 0; k < 2; ++k) {
      cls[k].prior = n > 0 ? count[k] / n : 0.0;
      for (auto& v : cls[k].variance) v = std::max(count[k] > 0 ? v / count[k] : 0.0, variance_floor);
    }
    return GaussianNaiveBayes(cls);
  }

  double log_joint(std::size_t k, const FeatureVector& v) const {
    const auto& c = classes_[k];
    double lj = std::log(c.prior);
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      const double d = v[f] - c.mean[f];
      lj += -0.5 * std::log(2.0 * std::numbers::pi * c.variance[f]) - d * d / (2.0 * c.variance[f]);
    }
    return lj;
  }

  // Posterior P(label = 1 | v).
  double posterior(const FeatureVector& v) const {
    const double l0 = log_joint(0, v);
    const double l1 = log_joint(1, v);
    const double z = l1 - l0;
    if (std::isnan(z)) return 0.0;
    return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  }

  int predict(const FeatureVector& v) const { return log_joint(1, v) > log_joint(0, v) ? 1 : 0; }

  const std::array<GaussianClass, 2>& classes() const { return classes_; }

  friend bool operator==(const GaussianNaiveBayes&, const GaussianNaiveBayes&) = default;

 private:
  std::array<GaussianClass, 2> classes_{};
};

}  // namespace proxauth::ml
