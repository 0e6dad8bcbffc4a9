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

#include "proxauth/ml/sample.hpp"

namespace proxauth::ml {

// Per-feature affine scaling fitted on a training split. Constant features
// keep scale 1, so they map to 0 rather than dividing by zero.
class Standardizer {
 public:
  Standardizer() { scale_.fill(1.0); mean_.fill(0.0); }

  Standardizer(const FeatureVector& mean, const FeatureVector& scale) : mean_(mean), scale_(scale) {}

  static Standardizer identity() { return {}; }

  static Standardizer fit(const std::vector<FeatureVector>& x) {
    Standardizer s;
    if (x.empty()) return s;
    const double n = static_cast<double>(x.size());
    std::vector<double> col(x.size());
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      // Summing sorted values makes the result independent of row order.
      for (std::size_t i = 0; i < x.size(); ++i) col[i] = x[i][f];
      std::sort(col.begin(), col.end());
      double sum = 0.0;
      for (double v : col) sum += v;
      const double mean = sum / n;
      double ss = 0.0;
      for (double v : col) ss += (v - mean) * (v - mean);
      const double sd = std::sqrt(ss / n);
      s.mean_[f] = mean;
      s.scale_[f] = sd > 1e-12 ? sd : 1.0;
    }
    return s;
  }

  FeatureVector apply(const FeatureVector& v) const {
    FeatureVector out;
    for (std::size_t f = 0; f < kNumFeatures; ++f) out[f] = (v[f] - mean_[f]) / scale_[f];
    return out;
  }

  std::vector<FeatureVector> apply(const std::vector<FeatureVector>& x) const {
    std::vector<FeatureVector> out;
    out.reserve(x.size());
    for (const auto& v : x) out.push_back(apply(v));
    return out;
  }

  const FeatureVector& mean() const { return mean_; }
  const FeatureVector& scale() const { return scale_; }

  friend bool operator==(const Standardizer&, const Standardizer&) = default;

 private:
  FeatureVector mean_;
  FeatureVector scale_;
};

}  // namespace proxauth::ml
