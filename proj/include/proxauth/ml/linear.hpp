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

#include <cmath>
#include <cstdint>
#include <vector>

#include "proxauth/ml/sample.hpp"
#include "proxauth/random.hpp"

namespace proxauth::ml {

struct LinearWeights {
  FeatureVector w{};
  double b = 0.0;

  double margin(const FeatureVector& x) const {
    double z = b;
    for (std::size_t f = 0; f < kNumFeatures; ++f) z += w[f] * x[f];
    return z;
  }

  friend bool operator==(const LinearWeights&, const LinearWeights&) = default;
};

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
inline double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

// ---- logistic regression: mean log-loss + (l2/2)|w|^2, bias unregularized ----

inline double logistic_loss(const LinearWeights& p, const std::vector<FeatureVector>& x,
                            const std::vector<int>& y, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = p.margin(x[i]);
    loss += softplus(z) - static_cast<double>(y[i]) * z;
  }
  loss /= static_cast<double>(x.size());
  double reg = 0.0;
  for (double wf : p.w) reg += wf * wf;
  return loss + 0.5 * l2 * reg;
}

inline LinearWeights logistic_gradient(const LinearWeights& p, const std::vector<FeatureVector>& x,
                                       const std::vector<int>& y, double l2) {
  LinearWeights g;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = sigmoid(p.margin(x[i])) - static_cast<double>(y[i]);
    for (std::size_t f = 0; f < kNumFeatures; ++f) g.w[f] += r * x[i][f];
    g.b += r;
  }
  const double n = static_cast<double>(x.size());
  for (std::size_t f = 0; f < kNumFeatures; ++f) g.w[f] = g.w[f] / n + l2 * p.w[f];
  g.b /= n;
  return g;
}

struct LogisticParams {
  double step = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
};

// Full-batch gradient descent from zero weights. `loss_trace`, when given,
// receives the loss before every epoch and after the last one.
inline LinearWeights fit_logistic(const std::vector<FeatureVector>& x_in, const std::vector<int>& y_in,
                                  const LogisticParams& params, std::vector<double>* loss_trace = nullptr) {
  const auto order = canonical_order(x_in, y_in);
  std::vector<FeatureVector> x;
  std::vector<int> y;
  for (auto i : order) {
    x.push_back(x_in[i]);
    y.push_back(y_in[i]);
  }
  LinearWeights p;
  for (int e = 0; e < params.epochs; ++e) {
    if (loss_trace) loss_trace->push_back(logistic_loss(p, x, y, params.l2));
    const auto g = logistic_gradient(p, x, y, params.l2);
    for (std::size_t f = 0; f < kNumFeatures; ++f) p.w[f] -= params.step * g.w[f];
    p.b -= params.step * g.b;
  }
  if (loss_trace) loss_trace->push_back(logistic_loss(p, x, y, params.l2));
  return p;
}

// ---- linear SVM: (lambda/2)(|w|^2 + b^2) + mean hinge ----
// The bias is folded into the regularized parameter vector, as in Pegasos with
// an augmented constant feature.

inline double hinge_objective(const LinearWeights& p, const std::vector<FeatureVector>& x,
                              const std::vector<int>& y, double lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = y[i] ? 1.0 : -1.0;
    loss += std::max(0.0, 1.0 - s * p.margin(x[i]));
  }
  loss /= static_cast<double>(x.size());
  double reg = p.b * p.b;
  for (double wf : p.w) reg += wf * wf;
  return loss + 0.5 * lambda * reg;
}

// Subgradient of the single-sample objective (lambda/2)|theta|^2 + hinge_i.
inline LinearWeights hinge_sample_subgradient(const LinearWeights& p, const FeatureVector& xi, int yi,
                                              double lambda) {
  LinearWeights g;
  const double s = yi ? 1.0 : -1.0;
  const bool active = s * p.margin(xi) < 1.0;
  for (std::size_t f = 0; f < kNumFeatures; ++f) g.w[f] = lambda * p.w[f] - (active ? s * xi[f] : 0.0);
  g.b = lambda * p.b - (active ? s : 0.0);
  return g;
}

inline LinearWeights hinge_subgradient(const LinearWeights& p, const std::vector<FeatureVector>& x,
                                       const std::vector<int>& y, double lambda) {
  LinearWeights g;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto gi = hinge_sample_subgradient(p, x[i], y[i], lambda);
    for (std::size_t f = 0; f < kNumFeatures; ++f) g.w[f] += gi.w[f];
    g.b += gi.b;
  }
  const double n = static_cast<double>(x.size());
  for (auto& v : g.w) v /= n;
  g.b /= n;
  return g;
}

struct SvmParams {
  double lambda = 1e-3;
  int epochs = 200;
};

// Stochastic subgradient descent with step 1/(lambda * t). Each epoch visits
// the rows in canonical order permuted by a seeded shuffle, so the result does
// not depend on the input row order.
inline LinearWeights fit_svm(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                             const SvmParams& params, std::uint64_t seed) {
  const auto canonical = canonical_order(x, y);
  LinearWeights p;
  const Rng root(seed);
  std::int64_t t = 0;
  std::vector<std::size_t> order;
  for (int e = 0; e < params.epochs; ++e) {
    order = canonical;
    Rng rng = root.fork(static_cast<std::uint64_t>(e));
    rng.shuffle(order.begin(), order.end());
    for (auto i : order) {
      ++t;
      const double eta = 1.0 / (params.lambda * static_cast<double>(t));
      const auto g = hinge_sample_subgradient(p, x[i], y[i], params.lambda);
      for (std::size_t f = 0; f < kNumFeatures; ++f) p.w[f] -= eta * g.w[f];
      p.b -= eta * g.b;
    }
  }
  return p;
}

}  // namespace proxauth::ml
