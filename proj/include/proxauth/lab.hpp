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

#include <future>
#include <map>
#include <memory>
#include <vector>

#include "proxauth/auth/policy.hpp"
#include "proxauth/config.hpp"
#include "proxauth/ml/model.hpp"
#include "proxauth/ml/split.hpp"
#include "proxauth/rfsim/dataset.hpp"
#include "proxauth/rfsim/environment.hpp"

namespace proxauth {

using ModelSet = std::map<ml::Algo, std::shared_ptr<const ml::TrainedModel>>;

// Everything a run derives from one flat config document.
struct LabConfig {
  rfsim::SimConfig sim;
  ml::Hyperparams hyper;
  auth::AuthPolicy policy;
  double test_fraction = 0.2;

  static LabConfig from(const KeyValueConfig& kv) {
    LabConfig c;
    c.sim = rfsim::SimConfig::from(kv);
    c.hyper = ml::Hyperparams::from(kv);
    c.policy = auth::AuthPolicy::from(kv);
    c.test_fraction = kv.get_double("test_fraction", c.test_fraction);
    return c;
  }
};

// Trains one model per algorithm, concurrently. Each model gets `seed`.
inline ModelSet train_models(const ml::LabeledMatrix& train, const std::vector<ml::Algo>& algos,
                             const ml::Hyperparams& hyper, std::uint64_t seed) {
  std::vector<std::pair<ml::Algo, std::future<ml::TrainedModel>>> jobs;
  for (auto a : algos) {
    jobs.emplace_back(a, std::async(std::launch::async, [&train, &hyper, a, seed] { return ml::train(a, train, hyper, seed); }));
  }
  ModelSet out;
  for (auto& [a, f] : jobs) out[a] = std::make_shared<const ml::TrainedModel>(f.get());
  return out;
}

struct Lab {
  rfsim::Environment env;
  ml::Dataset data;
  ml::TrainTest split;
  ModelSet models;
};

// Environment, dataset, stratified split and trained models, all from
// config.sim.seed.
inline Lab build_lab(const LabConfig& config, const std::vector<ml::Algo>& algos = {ml::kAllAlgos.begin(),
                                                                                    ml::kAllAlgos.end()}) {
  const auto seed = config.sim.seed;
  Lab lab;
  lab.env = rfsim::build_environment(config.sim, seed);
  lab.data = rfsim::generate_dataset(lab.env, config.sim.n_authentic, config.sim.n_unauthorized, seed);
  lab.split = ml::split(lab.data, config.test_fraction, seed);
  if (!algos.empty()) lab.models = train_models(lab.split.train.matrix(), algos, config.hyper, seed);
  return lab;
}

}  // namespace proxauth
