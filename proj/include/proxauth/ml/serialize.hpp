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

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "proxauth/error.hpp"
#include "proxauth/ml/model.hpp"

namespace proxauth::ml {

inline constexpr int kModelSchemaVersion = 1;

namespace detail {

using nlohmann::json;

inline json tree_to_json(const DecisionTree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes()) {
    nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.count0, n.count1}));
  }
  return {{"nodes", nodes}, {"impurity_decrease", t.impurity_decrease()}};
}

inline DecisionTree tree_from_json(const json& j) {
  std::vector<TreeNode> nodes;
  for (const auto& a : j.at("nodes")) {
    nodes.push_back(TreeNode{a.at(0).get<int>(), a.at(1).get<double>(), a.at(2).get<int>(),
                             a.at(3).get<int>(), a.at(4).get<std::int64_t>(), a.at(5).get<std::int64_t>()});
  }
  const int n = static_cast<int>(nodes.size());
  if (n == 0) fail(ErrorCode::kSchema, "tree has no nodes");
  for (const auto& node : nodes) {
    if (!node.is_leaf() && (node.left <= 0 || node.left >= n || node.right <= 0 || node.right >= n ||
                            node.feature >= static_cast<int>(kNumFeatures))) {
      fail(ErrorCode::kSchema, "tree node references are out of range");
    }
  }
  return DecisionTree(std::move(nodes), j.at("impurity_decrease").get<FeatureVector>());
}

inline json weights_to_json(const LinearWeights& w) { return {{"w", w.w}, {"b", w.b}}; }

inline LinearWeights weights_from_json(const json& j) {
  return LinearWeights{j.at("w").get<FeatureVector>(), j.at("b").get<double>()};
}

inline json tree_params_to_json(const TreeParams& t) {
  return {{"max_depth", t.max_depth}, {"min_leaf", t.min_leaf}, {"max_features", t.max_features}};
}

inline TreeParams tree_params_from_json(const json& j) {
  return {j.at("max_depth").get<int>(), j.at("min_leaf").get<int>(), j.at("max_features").get<int>()};
}

inline json hyper_to_json(const Hyperparams& h) {
  return {{"dt", tree_params_to_json(h.dt)},
          {"knn_k", h.knn_k},
          {"rf", {{"trees", h.rf.trees}, {"tree", tree_params_to_json(h.rf.tree)}, {"bootstrap", h.rf.bootstrap}}},
          {"svm", {{"lambda", h.svm.lambda}, {"epochs", h.svm.epochs}}},
          {"lr", {{"step", h.lr.step}, {"epochs", h.lr.epochs}, {"l2", h.lr.l2}}},
          {"nb_variance_floor", h.nb_variance_floor}};
}

inline Hyperparams hyper_from_json(const json& j) {
  Hyperparams h;
  h.dt = tree_params_from_json(j.at("dt"));
  h.knn_k = j.at("knn_k").get<int>();
  h.rf.trees = j.at("rf").at("trees").get<int>();
  h.rf.tree = tree_params_from_json(j.at("rf").at("tree"));
  h.rf.bootstrap = j.at("rf").at("bootstrap").get<bool>();
  h.svm.lambda = j.at("svm").at("lambda").get<double>();
  h.svm.epochs = j.at("svm").at("epochs").get<int>();
  h.lr.step = j.at("lr").at("step").get<double>();
  h.lr.epochs = j.at("lr").at("epochs").get<int>();
  h.lr.l2 = j.at("lr").at("l2").get<double>();
  h.nb_variance_floor = j.at("nb_variance_floor").get<double>();
  return h;
}

}  // namespace detail

inline nlohmann::json model_to_json(const TrainedModel& m) {
  using detail::json;
  json params = std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          return detail::tree_to_json(p);
        } else if constexpr (std::is_same_v<T, KNearestNeighbors>) {
          return {{"k", p.k()}, {"x", p.points()}, {"y", p.labels()}};
        } else if constexpr (std::is_same_v<T, RandomForest>) {
          json trees = json::array();
          for (const auto& t : p.trees()) trees.push_back(detail::tree_to_json(t));
          return {{"trees", trees}};
        } else if constexpr (std::is_same_v<T, SvmModel> || std::is_same_v<T, LogisticModel>) {
          return detail::weights_to_json(p.weights);
        } else {
          json classes = json::array();
          for (const auto& c : p.classes()) {
            classes.push_back({{"prior", c.prior}, {"mean", c.mean}, {"variance", c.variance}});
          }
          return {{"classes", classes}};
        }
      },
      m.params());
  json j;
  j["schema_version"] = kModelSchemaVersion;
  j["algo"] = std::string(to_string(m.algo()));
  j["train_seed"] = m.train_seed();
  j["hyperparams"] = detail::hyper_to_json(m.hyperparams());
  j["standardizer"] = {{"mean", m.standardizer().mean()}, {"scale", m.standardizer().scale()}};
  j["params"] = std::move(params);
  return j;
}

inline TrainedModel model_from_json(const nlohmann::json& j) {
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion) {
      fail(ErrorCode::kSchema, "unsupported model schema_version " + std::to_string(version));
    }
    const Algo algo = parse_algo(j.at("algo").get<std::string>());
    const auto& p = j.at("params");
    ModelParams params = [&]() -> ModelParams {
      switch (algo) {
        case Algo::kDT: return detail::tree_from_json(p);
        case Algo::kKNN:
          return KNearestNeighbors(p.at("k").get<int>(), p.at("x").get<std::vector<FeatureVector>>(),
                                   p.at("y").get<std::vector<int>>());
        case Algo::kRF: {
          std::vector<DecisionTree> trees;
          for (const auto& t : p.at("trees")) trees.push_back(detail::tree_from_json(t));
          return RandomForest(std::move(trees));
        }
        case Algo::kSVM: return SvmModel{detail::weights_from_json(p)};
        case Algo::kLR: return LogisticModel{detail::weights_from_json(p)};
        case Algo::kNB: {
          std::array<GaussianClass, 2> cls{};
          const auto& arr = p.at("classes");
          if (arr.size() != 2) fail(ErrorCode::kSchema, "naive Bayes needs two classes");
          for (std::size_t k = 0; k < 2; ++k) {
            cls[k] = {arr[k].at("prior").get<double>(), arr[k].at("mean").get<FeatureVector>(),
                      arr[k].at("variance").get<FeatureVector>()};
          }
          return GaussianNaiveBayes(cls);
        }
      }
      fail(ErrorCode::kSchema, "unknown algorithm");
    }();
    Standardizer st(j.at("standardizer").at("mean").get<FeatureVector>(),
                    j.at("standardizer").at("scale").get<FeatureVector>());
    return TrainedModel(algo, detail::hyper_from_json(j.at("hyperparams")), st,
                        j.at("train_seed").get<std::uint64_t>(), std::move(params));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, std::string("malformed model document: ") + e.what());
  }
}

inline void save_model(const TrainedModel& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot write model: " + path);
  f << model_to_json(m).dump() << '\n';
}

inline TrainedModel load_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot open model: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, std::string("model file is not JSON: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace proxauth::ml
