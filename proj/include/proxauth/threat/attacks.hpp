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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "proxauth/error.hpp"
#include "proxauth/ml/evaluate.hpp"
#include "proxauth/ml/model.hpp"
#include "proxauth/ml/report.hpp"
#include "proxauth/random.hpp"

namespace proxauth::threat {

using ml::Algo;
using ml::LabeledMatrix;
using ml::TrainedModel;
using ModelSet = std::map<Algo, std::shared_ptr<const TrainedModel>>;

enum class AttackKind { kEvasion, kExtraction, kInterference };

inline const char* to_string(AttackKind k) {
  switch (k) {
    case AttackKind::kEvasion: return "evasion";
    case AttackKind::kExtraction: return "extraction";
    case AttackKind::kInterference: return "interference";
  }
  return "unknown";
}

inline AttackKind parse_attack(const std::string& s) {
  if (s == "evasion") return AttackKind::kEvasion;
  if (s == "extraction") return AttackKind::kExtraction;
  if (s == "interference") return AttackKind::kInterference;
  fail(ErrorCode::kConfig, "unknown attack: " + s);
}

struct AttackSpec {
  AttackKind kind = AttackKind::kEvasion;
  std::vector<double> noise_sigmas{0.5, 1.0, 2.0, 4.0, 8.0};
  double rssi_perturbation_range = 20.0;
  double interference_sigma = 2.0;
  // Extraction query count; 0 means the whole query source.
  std::size_t query_budget = 0;
  Algo target = Algo::kRF;
  std::uint64_t seed = 0;

  void validate() const {
    for (double s : noise_sigmas) {
      if (!(s >= 0.0)) fail(ErrorCode::kConfig, "noise sigmas must be non-negative");
    }
    if (!(rssi_perturbation_range >= 0.0)) fail(ErrorCode::kConfig, "perturbation range must be non-negative");
    if (!(interference_sigma >= 0.0)) fail(ErrorCode::kConfig, "interference sigma must be non-negative");
  }
};

struct ReportRow {
  std::string attack;
  double param = 0.0;
  std::string model;  // an algorithm name, "ensemble" or "shadow"
  std::string phase;  // "baseline" or "post"
  ml::Evaluation eval;
};

struct ExtractionFidelity {
  double range = 0.0;
  std::size_t queries = 0;
  double agreement_on_queries = 0.0;
  double shadow_test_accuracy = 0.0;
  double target_test_accuracy = 0.0;
};

struct AttackReport {
  AttackKind kind = AttackKind::kEvasion;
  std::vector<ReportRow> rows;
  double ensemble_before = 0.0;
  double ensemble_after = 0.0;
  std::optional<ExtractionFidelity> extraction;

  // First row matching (model, phase, param); throws NotFound otherwise.
  const ReportRow& row(const std::string& model, const std::string& phase, double param) const {
    for (const auto& r : rows) {
      if (r.model == model && r.phase == phase && r.param == param) return r;
    }
    fail(ErrorCode::kNotFound, "no report row for " + model + "/" + phase);
  }
};

// --- perturbations ---------------------------------------------------------

inline LabeledMatrix evasion_perturb(const LabeledMatrix& test, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) fail(ErrorCode::kConfig, "sigma must be non-negative");
  LabeledMatrix out = test;
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (auto& v : out.x) v[ml::kRssi] += rng.normal(0.0, sigma);
  return out;
}

inline LabeledMatrix interference_perturb(const LabeledMatrix& test, std::uint64_t seed, double sigma = 2.0) {
  if (!(sigma >= 0.0)) fail(ErrorCode::kConfig, "sigma must be non-negative");
  LabeledMatrix out = test;
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (auto& v : out.x) {
    for (auto& f : v) f += rng.normal(0.0, sigma);
  }
  return out;
}

inline LabeledMatrix extraction_queries(const LabeledMatrix& source, double range, std::size_t budget,
                                        std::uint64_t seed) {
  if (!(range >= 0.0)) fail(ErrorCode::kConfig, "range must be non-negative");
  Rng rng(seed);
  std::vector<std::size_t> idx(source.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (budget > 0 && budget < idx.size()) {
    Rng pick = rng.fork(1);
    pick.shuffle(idx.begin(), idx.end());
    idx.resize(budget);
    std::sort(idx.begin(), idx.end());
  }
  LabeledMatrix out;
  out.x.reserve(idx.size());
  out.y.reserve(idx.size());
  Rng noise = rng.fork(2);
  for (auto i : idx) {
    auto v = source.x[i];
    if (range > 0.0) v[ml::kRssi] += noise.uniform(-range, range);
    out.x.push_back(v);
    out.y.push_back(source.y[i]);
  }
  return out;
}

// --- ensemble --------------------------------------------------------------

// Majority vote over the given models; ties deny.
inline int ensemble_predict(const ModelSet& models, const ml::FeatureVector& v) {
  int pos = 0;
  for (const auto& [algo, m] : models) pos += m->predict_label(v);
  return 2 * pos > static_cast<int>(models.size()) ? 1 : 0;
}

inline ml::Evaluation evaluate_ensemble(const ModelSet& models, const LabeledMatrix& test) {
  if (test.empty()) fail(ErrorCode::kEmptyInput, "test set is empty");
  ml::Evaluation e;
  for (std::size_t i = 0; i < test.size(); ++i) e.cm.add(test.y[i], ensemble_predict(models, test.x[i]));
  e.metrics = ml::metrics_from_cm(e.cm);
  return e;
}

namespace detail {

inline void require_trained(const ModelSet& models) {
  if (models.empty()) fail(ErrorCode::kInvalidState, "no models supplied");
  for (const auto& [algo, m] : models) {
    if (!m) fail(ErrorCode::kInvalidState, "model " + std::string(ml::to_string(algo)) + " is not trained");
    if (m->algo() != algo) fail(ErrorCode::kInvalidState, "model registered under the wrong algorithm");
  }
}

// Evaluates every model on one matrix, one task per model.
inline std::vector<ReportRow> evaluate_all(const ModelSet& models, const LabeledMatrix& data, const std::string& attack,
                                           double param, const std::string& phase) {
  std::vector<std::pair<Algo, std::future<ml::Evaluation>>> jobs;
  for (const auto& [algo, m] : models) {
    jobs.emplace_back(algo, std::async(std::launch::async, [&data, model = m] { return ml::evaluate(*model, data); }));
  }
  std::vector<ReportRow> rows;
  for (auto& [algo, f] : jobs) rows.push_back({attack, param, std::string(ml::to_string(algo)), phase, f.get()});
  rows.push_back({attack, param, "ensemble", phase, evaluate_ensemble(models, data)});
  return rows;
}

inline void append(std::vector<ReportRow>& to, std::vector<ReportRow> from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

}  // namespace detail

// --- experiments -----------------------------------------------------------

inline AttackReport run_evasion(const ModelSet& models, const LabeledMatrix& test, const AttackSpec& spec) {
  detail::require_trained(models);
  spec.validate();
  AttackReport rep;
  rep.kind = AttackKind::kEvasion;
  detail::append(rep.rows, detail::evaluate_all(models, test, "evasion", 0.0, "baseline"));
  rep.ensemble_before = rep.rows.back().eval.metrics.accuracy;
  rep.ensemble_after = rep.ensemble_before;
  for (std::size_t i = 0; i < spec.noise_sigmas.size(); ++i) {
    const double sigma = spec.noise_sigmas[i];
    const auto noisy = evasion_perturb(test, sigma, derive_seed(spec.seed, 100 + i));
    auto rows = detail::evaluate_all(models, noisy, "evasion", sigma, "post");
    rep.ensemble_after = rows.back().eval.metrics.accuracy;
    detail::append(rep.rows, std::move(rows));
  }
  return rep;
}

struct ExtractionResult {
  std::shared_ptr<const TrainedModel> shadow;
  AttackReport report;
};

// Queries the target with RSSI-perturbed copies of `query_source`, trains a
// shadow forest on its answers and measures how well the copy tracks it.
inline ExtractionResult extraction_attack(const ModelSet& models, const LabeledMatrix& query_source,
                                          const LabeledMatrix& test, const AttackSpec& spec,
                                          const ml::Hyperparams& shadow_hyper = {}) {
  detail::require_trained(models);
  spec.validate();
  auto target_it = models.find(spec.target);
  if (target_it == models.end()) fail(ErrorCode::kInvalidState, "target model is not in the model set");
  const TrainedModel& target = *target_it->second;

  AttackReport rep;
  rep.kind = AttackKind::kExtraction;
  const double range = spec.rssi_perturbation_range;
  detail::append(rep.rows, detail::evaluate_all(models, test, "extraction", range, "baseline"));
  rep.ensemble_before = rep.rows.back().eval.metrics.accuracy;

  auto queries = extraction_queries(query_source, range, spec.query_budget, derive_seed(spec.seed, 200));
  // Effect of the adversarial inputs on each deployed model, scored against the true labels.
  detail::append(rep.rows, detail::evaluate_all(models, queries, "extraction", range, "post"));

  LabeledMatrix labeled = queries;
  for (std::size_t i = 0; i < labeled.size(); ++i) labeled.y[i] = target.predict_label(labeled.x[i]);

  ExtractionFidelity fid;
  fid.range = range;
  fid.queries = labeled.size();
  std::shared_ptr<const TrainedModel> shadow;
  const bool one_class = std::all_of(labeled.y.begin(), labeled.y.end(), [&](int y) { return y == labeled.y[0]; });
  if (!one_class) {
    shadow = std::make_shared<const TrainedModel>(
        ml::train(Algo::kRF, labeled, shadow_hyper, derive_seed(spec.seed, 201)));
    int agree = 0;
    for (std::size_t i = 0; i < labeled.size(); ++i) agree += shadow->predict_label(labeled.x[i]) == labeled.y[i];
    fid.agreement_on_queries = static_cast<double>(agree) / static_cast<double>(labeled.size());
    auto shadow_eval = ml::evaluate(*shadow, test);
    fid.shadow_test_accuracy = shadow_eval.metrics.accuracy;
    rep.rows.push_back({"extraction", range, "shadow", "post", shadow_eval});
  }
  fid.target_test_accuracy = ml::evaluate(target, test).metrics.accuracy;
  // The deployed ensemble is untouched by the attack; re-measured to show it.
  rep.ensemble_after = evaluate_ensemble(models, test).metrics.accuracy;
  rep.extraction = fid;
  return {shadow, std::move(rep)};
}

inline AttackReport run_interference(const ModelSet& models, const LabeledMatrix& test, const AttackSpec& spec) {
  detail::require_trained(models);
  spec.validate();
  AttackReport rep;
  rep.kind = AttackKind::kInterference;
  const double sigma = spec.interference_sigma;
  detail::append(rep.rows, detail::evaluate_all(models, test, "interference", sigma, "baseline"));
  rep.ensemble_before = rep.rows.back().eval.metrics.accuracy;
  const auto noisy = interference_perturb(test, derive_seed(spec.seed, 300), sigma);
  detail::append(rep.rows, detail::evaluate_all(models, noisy, "interference", sigma, "post"));
  rep.ensemble_after = rep.rows.back().eval.metrics.accuracy;
  return rep;
}

// Runs each spec in order. `query_source` feeds extraction; it is normally the
// full dataset.
inline std::vector<AttackReport> run_suite(const ModelSet& models, const LabeledMatrix& query_source,
                                           const LabeledMatrix& test, const std::vector<AttackSpec>& specs) {
  detail::require_trained(models);
  if (specs.empty()) fail(ErrorCode::kConfig, "at least one attack spec is required");
  std::vector<AttackReport> out;
  for (const auto& s : specs) {
    switch (s.kind) {
      case AttackKind::kEvasion: out.push_back(run_evasion(models, test, s)); break;
      case AttackKind::kExtraction: out.push_back(extraction_attack(models, query_source, test, s).report); break;
      case AttackKind::kInterference: out.push_back(run_interference(models, test, s)); break;
    }
  }
  return out;
}

// --- rendering -------------------------------------------------------------

inline std::string attack_report_csv(const std::vector<AttackReport>& reports) {
  std::string out = "attack,param,model,accuracy,sensitivity,specificity,f1,precision,phase\n";
  for (const auto& rep : reports) {
    for (const auto& r : rep.rows) {
      const auto& m = r.eval.metrics;
      out += r.attack + ',' + ml::format_fixed(r.param, 2) + ',' + r.model + ',' + ml::format_fixed(m.accuracy) + ',' +
             ml::format_fixed(m.sensitivity) + ',' + ml::format_fixed(m.specificity) + ',' + ml::format_fixed(m.f1) +
             ',' + ml::format_fixed(m.precision) + ',' + r.phase + '\n';
    }
  }
  return out;
}

inline nlohmann::ordered_json attack_report_json(const std::vector<AttackReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& rep : reports) {
    nlohmann::ordered_json j;
    j["attack"] = to_string(rep.kind);
    j["ensemble_before"] = rep.ensemble_before;
    j["ensemble_after"] = rep.ensemble_after;
    if (rep.extraction) {
      const auto& f = *rep.extraction;
      j["fidelity"] = {{"range", f.range},
                       {"queries", f.queries},
                       {"agreement_on_queries", f.agreement_on_queries},
                       {"shadow_test_accuracy", f.shadow_test_accuracy},
                       {"target_test_accuracy", f.target_test_accuracy}};
    }
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : rep.rows) {
      const auto& m = r.eval.metrics;
      rows.push_back({{"param", r.param},
                      {"model", r.model},
                      {"phase", r.phase},
                      {"accuracy", m.accuracy},
                      {"sensitivity", m.sensitivity},
                      {"specificity", m.specificity},
                      {"f1", m.f1},
                      {"precision", m.precision}});
    }
    j["rows"] = std::move(rows);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace proxauth::threat
