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
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "proxauth/config.hpp"
#include "proxauth/error.hpp"
#include "proxauth/ml/cart.hpp"
#include "proxauth/ml/forest.hpp"
#include "proxauth/ml/knn.hpp"
#include "proxauth/ml/linear.hpp"
#include "proxauth/ml/naive_bayes.hpp"
#include "proxauth/ml/sample.hpp"
#include "proxauth/ml/standardizer.hpp"

namespace proxauth::ml {

enum class Algo { kDT, kKNN, kRF, kSVM, kNB, kLR };

inline constexpr std::array<Algo, 6> kAllAlgos = {Algo::kDT, Algo::kKNN, Algo::kRF,
                                                  Algo::kSVM, Algo::kNB, Algo::kLR};

constexpr std::string_view to_string(Algo a) {
  switch (a) {
    case Algo::kDT: return "DT";
    case Algo::kKNN: return "KNN";
    case Algo::kRF: return "RF";
    case Algo::kSVM: return "SVM";
    case Algo::kNB: return "NB";
    case Algo::kLR: return "LR";
  }
  return "?";
}

inline Algo parse_algo(std::string_view s) {
  for (auto a : kAllAlgos) {
    if (to_string(a) == s) return a;
  }
  if (s == "K-NN" || s == "knn") return Algo::kKNN;
  std::string lower(s);
  for (auto& c : lower) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto a : kAllAlgos) {
    if (to_string(a) == lower) return a;
  }
  fail(ErrorCode::kConfig, "unknown algorithm: " + std::string(s));
}

// Parses "all" or a comma list such as "DT,KNN".
inline std::vector<Algo> parse_algo_list(std::string_view s) {
  if (s == "all") return {kAllAlgos.begin(), kAllAlgos.end()};
  std::vector<Algo> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    if (end > start) out.push_back(parse_algo(s.substr(start, end - start)));
    start = end + 1;
  }
  if (out.empty()) fail(ErrorCode::kConfig, "empty algorithm list");
  return out;
}

// Standardization is applied for the distance- and margin-based models only.
constexpr bool uses_standardization(Algo a) {
  return a == Algo::kKNN || a == Algo::kSVM || a == Algo::kLR;
}

struct Hyperparams {
  TreeParams dt{12, 2, static_cast<int>(kNumFeatures)};
  int knn_k = 5;
  ForestParams rf{100, TreeParams{12, 1, 2}, true};
  SvmParams svm{1e-3, 200};
  LogisticParams lr{0.1, 500, 1e-4};
  double nb_variance_floor = 1e-9;

  static Hyperparams from(const KeyValueConfig& kv) {
    Hyperparams h;
    h.dt.max_depth = static_cast<int>(kv.get_int("dt_max_depth", h.dt.max_depth));
    h.dt.min_leaf = static_cast<int>(kv.get_int("dt_min_leaf", h.dt.min_leaf));
    h.knn_k = static_cast<int>(kv.get_int("knn_k", h.knn_k));
    h.rf.trees = static_cast<int>(kv.get_int("rf_trees", h.rf.trees));
    h.rf.tree.max_depth = static_cast<int>(kv.get_int("rf_max_depth", h.rf.tree.max_depth));
    h.rf.tree.min_leaf = static_cast<int>(kv.get_int("rf_min_leaf", h.rf.tree.min_leaf));
    h.rf.tree.max_features = static_cast<int>(kv.get_int("rf_max_features", h.rf.tree.max_features));
    h.rf.bootstrap = kv.get_int("rf_bootstrap", h.rf.bootstrap ? 1 : 0) != 0;
    h.svm.lambda = kv.get_double("svm_lambda", h.svm.lambda);
    h.svm.epochs = static_cast<int>(kv.get_int("svm_epochs", h.svm.epochs));
    h.lr.step = kv.get_double("lr_step", h.lr.step);
    h.lr.epochs = static_cast<int>(kv.get_int("lr_epochs", h.lr.epochs));
    h.lr.l2 = kv.get_double("lr_l2", h.lr.l2);
    h.nb_variance_floor = kv.get_double("nb_variance_floor", h.nb_variance_floor);
    return h;
  }

  friend bool operator==(const Hyperparams& a, const Hyperparams& b) {
    auto tp = [](const TreeParams& t) { return std::tuple(t.max_depth, t.min_leaf, t.max_features); };
    return tp(a.dt) == tp(b.dt) && a.knn_k == b.knn_k && a.rf.trees == b.rf.trees &&
           tp(a.rf.tree) == tp(b.rf.tree) && a.rf.bootstrap == b.rf.bootstrap &&
           a.svm.lambda == b.svm.lambda && a.svm.epochs == b.svm.epochs && a.lr.step == b.lr.step &&
           a.lr.epochs == b.lr.epochs && a.lr.l2 == b.lr.l2 && a.nb_variance_floor == b.nb_variance_floor;
  }
};

struct SvmModel {
  LinearWeights weights;
  friend bool operator==(const SvmModel&, const SvmModel&) = default;
};

struct LogisticModel {
  LinearWeights weights;
  friend bool operator==(const LogisticModel&, const LogisticModel&) = default;
};

using ModelParams =
    std::variant<DecisionTree, KNearestNeighbors, RandomForest, SvmModel, GaussianNaiveBayes, LogisticModel>;

struct Prediction {
  int label = 0;
  // LR/NB posterior, SVM margin, RF vote fraction, KNN neighbor fraction,
  // DT leaf fraction.
  double score = 0.0;
};

// A fitted classifier. Immutable once built; safe to share across threads.
class TrainedModel {
 public:
  TrainedModel(Algo algo, Hyperparams hyper, Standardizer standardizer, std::uint64_t train_seed,
               ModelParams params)
      : algo_(algo),
        hyper_(hyper),
        standardizer_(std::move(standardizer)),
        train_seed_(train_seed),
        params_(std::move(params)) {}

  Algo algo() const { return algo_; }
  const Hyperparams& hyperparams() const { return hyper_; }
  const Standardizer& standardizer() const { return standardizer_; }
  std::uint64_t train_seed() const { return train_seed_; }
  const ModelParams& params() const { return params_; }

  Prediction predict(const FeatureVector& raw) const {
    const FeatureVector v = standardizer_.apply(raw);
    return std::visit(
        [&](const auto& m) -> Prediction {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, DecisionTree>) {
            return {m.predict(v), m.positive_fraction(v)};
          } else if constexpr (std::is_same_v<T, KNearestNeighbors>) {
            const double f = m.positive_fraction(v);
            return {m.predict(v), f};
          } else if constexpr (std::is_same_v<T, RandomForest>) {
            const double f = m.vote_fraction(v);
            return {m.predict(v), f};
          } else if constexpr (std::is_same_v<T, SvmModel>) {
            const double z = m.weights.margin(v);
            return {z > 0.0 ? 1 : 0, z};
          } else if constexpr (std::is_same_v<T, GaussianNaiveBayes>) {
            return {m.predict(v), m.posterior(v)};
          } else {
            const double p = sigmoid(m.weights.margin(v));
            return {p > 0.5 ? 1 : 0, p};
          }
        },
        params_);
  }

  Prediction predict(std::span<const double> raw) const {
    if (raw.size() != kNumFeatures) {
      fail(ErrorCode::kShape, "expected " + std::to_string(kNumFeatures) + " features, got " +
                                  std::to_string(raw.size()));
    }
    FeatureVector v;
    std::copy(raw.begin(), raw.end(), v.begin());
    return predict(v);
  }

  int predict_label(const FeatureVector& raw) const { return predict(raw).label; }

 private:
  Algo algo_;
  Hyperparams hyper_;
  Standardizer standardizer_;
  std::uint64_t train_seed_;
  ModelParams params_;
};

inline TrainedModel train(Algo algo, const LabeledMatrix& data, const Hyperparams& hyper, std::uint64_t seed) {
  if (data.empty()) fail(ErrorCode::kDegenerateData, "training set is empty");
  std::size_t positives = 0;
  for (int label : data.y) {
    if (label != 0 && label != 1) fail(ErrorCode::kSchema, "labels must be 0 or 1");
    positives += static_cast<std::size_t>(label);
  }
  if (positives == 0 || positives == data.size()) {
    fail(ErrorCode::kDegenerateData, "training set must contain both classes");
  }

  const Standardizer standardizer =
      uses_standardization(algo) ? Standardizer::fit(data.x) : Standardizer::identity();
  const auto x = uses_standardization(algo) ? standardizer.apply(data.x) : data.x;
  const Rng rng(seed);

  ModelParams params = [&]() -> ModelParams {
    switch (algo) {
      case Algo::kDT: {
        // Row order must not matter, so trees are grown from canonical order.
        const auto order = canonical_order(x, data.y);
        return DecisionTree::fit(x, data.y, order, hyper.dt, rng.fork(1));
      }
      case Algo::kKNN:
        return KNearestNeighbors(hyper.knn_k, x, data.y);
      case Algo::kRF:
        return RandomForest::fit(LabeledMatrix{x, data.y}, hyper.rf, seed);
      case Algo::kSVM:
        return SvmModel{fit_svm(x, data.y, hyper.svm, seed)};
      case Algo::kNB:
        return GaussianNaiveBayes::fit(x, data.y, hyper.nb_variance_floor);
      case Algo::kLR:
        return LogisticModel{fit_logistic(x, data.y, hyper.lr)};
    }
    fail(ErrorCode::kConfig, "unknown algorithm");
  }();
  return TrainedModel(algo, hyper, standardizer, seed, std::move(params));
}

inline TrainedModel train(Algo algo, const Dataset& data, const Hyperparams& hyper, std::uint64_t seed) {
  return train(algo, data.matrix(), hyper, seed);
}

}  // namespace proxauth::ml
