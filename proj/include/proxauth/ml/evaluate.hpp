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
#include <chrono>
#include <vector>

#include "proxauth/error.hpp"
#include "proxauth/ml/metrics.hpp"
#include "proxauth/ml/model.hpp"

namespace proxauth::ml {

struct Evaluation {
  ConfusionMatrix cm;
  Metrics metrics;
};

inline ConfusionMatrix confusion(const TrainedModel& model, const LabeledMatrix& test) {
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < test.size(); ++i) cm.add(test.y[i], model.predict_label(test.x[i]));
  return cm;
}

inline Evaluation evaluate(const TrainedModel& model, const LabeledMatrix& test) {
  if (test.empty()) fail(ErrorCode::kEmptyInput, "test set is empty");
  Evaluation e;
  e.cm = confusion(model, test);
  e.metrics = metrics_from_cm(e.cm);
  return e;
}

inline Evaluation evaluate(const TrainedModel& model, const Dataset& test) {
  return evaluate(model, test.matrix());
}

// Median wall-clock seconds to predict the whole batch.
inline double benchmark_inference(const TrainedModel& model, const std::vector<FeatureVector>& batch,
                                  int repetitions = 5) {
  if (repetitions < 1) fail(ErrorCode::kConfig, "repetitions must be at least 1");
  if (batch.empty()) fail(ErrorCode::kEmptyInput, "benchmark batch is empty");
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(repetitions));
  volatile int sink = 0;
  for (int r = 0; r < repetitions; ++r) {
    const auto start = std::chrono::steady_clock::now();
    int acc = 0;
    for (const auto& v : batch) acc += model.predict_label(v);
    const auto stop = std::chrono::steady_clock::now();
    sink = sink + acc;
    times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  const auto n = times.size();
  return n % 2 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
}

}  // namespace proxauth::ml
