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

#include <cstdint>

#include "proxauth/error.hpp"

namespace proxauth::ml {

// Positive class is label 1 (authentic).
struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }

  void add(int truth, int predicted) {
    if (truth == 1) (predicted == 1 ? tp : fn)++;
    else (predicted == 1 ? fp : tn)++;
  }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct Metrics {
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double f1 = 0.0;
  double precision = 0.0;
  // Set when some ratio had a zero denominator and was reported as 0.
  bool degenerate = false;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

inline Metrics metrics_from_cm(const ConfusionMatrix& cm) {
  if (cm.tp < 0 || cm.fp < 0 || cm.tn < 0 || cm.fn < 0) {
    fail(ErrorCode::kValidation, "confusion matrix counts must be non-negative");
  }
  const auto n = cm.total();
  if (n == 0) fail(ErrorCode::kEmptyMatrix, "confusion matrix is empty");
  Metrics m;
  auto ratio = [&m](std::int64_t num, std::int64_t den) {
    if (den == 0) {
      m.degenerate = true;
      return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(n);
  m.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
  m.specificity = ratio(cm.tn, cm.tn + cm.fp);
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  if (m.precision + m.sensitivity > 0.0) {
    m.f1 = 2.0 * m.precision * m.sensitivity / (m.precision + m.sensitivity);
  } else {
    m.f1 = 0.0;
    m.degenerate = true;
  }
  return m;
}

}  // namespace proxauth::ml
