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

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "proxauth/ml/evaluate.hpp"
#include "proxauth/ml/model.hpp"

namespace proxauth::ml {

inline constexpr int kHoldoutFold = -1;
inline constexpr int kMeanFold = -2;

// One evaluated (model, fold) cell. Negative folds are kHoldoutFold or kMeanFold.
struct MetricsRow {
  Algo algo = Algo::kDT;
  int fold = -1;
  Evaluation eval;
};

inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string fold_label(int fold) {
  if (fold == kMeanFold) return "mean";
  return fold < 0 ? "holdout" : std::to_string(fold);
}

// Fold-averaged metrics with the summed confusion matrix.
inline MetricsRow mean_row(Algo algo, const std::vector<Evaluation>& evals) {
  MetricsRow r{algo, kMeanFold, {}};
  if (evals.empty()) return r;
  auto& m = r.eval.metrics;
  for (const auto& e : evals) {
    r.eval.cm.tp += e.cm.tp;
    r.eval.cm.fp += e.cm.fp;
    r.eval.cm.tn += e.cm.tn;
    r.eval.cm.fn += e.cm.fn;
    m.accuracy += e.metrics.accuracy;
    m.sensitivity += e.metrics.sensitivity;
    m.specificity += e.metrics.specificity;
    m.f1 += e.metrics.f1;
    m.precision += e.metrics.precision;
    m.degenerate = m.degenerate || e.metrics.degenerate;
  }
  const double n = static_cast<double>(evals.size());
  m.accuracy /= n;
  m.sensitivity /= n;
  m.specificity /= n;
  m.f1 /= n;
  m.precision /= n;
  return r;
}

inline std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string out = "model,fold,accuracy,sensitivity,specificity,f1,precision,tp,fp,tn,fn\n";
  for (const auto& r : rows) {
    const auto& m = r.eval.metrics;
    const auto& c = r.eval.cm;
    out += std::string(to_string(r.algo)) + ',' + fold_label(r.fold) + ',' + format_fixed(m.accuracy) + ',' +
           format_fixed(m.sensitivity) + ',' + format_fixed(m.specificity) + ',' + format_fixed(m.f1) + ',' +
           format_fixed(m.precision) + ',' + std::to_string(c.tp) + ',' + std::to_string(c.fp) + ',' +
           std::to_string(c.tn) + ',' + std::to_string(c.fn) + '\n';
  }
  return out;
}

inline nlohmann::ordered_json metrics_json(const std::vector<MetricsRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const auto& m = r.eval.metrics;
    const auto& c = r.eval.cm;
    nlohmann::ordered_json j;
    j["model"] = std::string(to_string(r.algo));
    j["fold"] = fold_label(r.fold);
    j["accuracy"] = m.accuracy;
    j["sensitivity"] = m.sensitivity;
    j["specificity"] = m.specificity;
    j["f1"] = m.f1;
    j["precision"] = m.precision;
    j["degenerate"] = m.degenerate;
    j["tp"] = c.tp;
    j["fp"] = c.fp;
    j["tn"] = c.tn;
    j["fn"] = c.fn;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace proxauth::ml
