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

#include <gtest/gtest.h>

#include <cmath>

#include "proxauth/threat/attacks.hpp"
#include "support.hpp"

namespace proxauth::threat {
namespace {

using proxauth::testing::code_of;
using proxauth::testing::default_lab;

const LabeledMatrix& test_set() {
  static const LabeledMatrix m = default_lab().split.test.matrix();
  return m;
}

ModelSet lab_models() { return {default_lab().models.begin(), default_lab().models.end()}; }

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments column_delta(const LabeledMatrix& a, const LabeledMatrix& b, std::size_t f) {
  double s = 0.0, ss = 0.0;
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s += b.x[i][f] - a.x[i][f];
  const double mean = s / n;
  for (std::size_t i = 0; i < a.size(); ++i) ss += std::pow(b.x[i][f] - a.x[i][f] - mean, 2);
  return {mean, std::sqrt(ss / n)};
}

TEST(Evasion, ZeroSigmaIsIdentity) {
  const auto out = evasion_perturb(test_set(), 0.0, 1);
  EXPECT_EQ(out.x, test_set().x);
  EXPECT_EQ(out.y, test_set().y);
}

TEST(Evasion, OnlyRssiMovesWithRequestedSpread) {
  const auto& clean = default_lab().data.matrix();
  const auto out = evasion_perturb(clean, 2.0, 17);
  for (std::size_t f = 0; f < ml::kNumFeatures; ++f) {
    if (f == ml::kRssi) continue;
    for (std::size_t i = 0; i < clean.size(); ++i) ASSERT_EQ(out.x[i][f], clean.x[i][f]);
  }
  EXPECT_EQ(out.y, clean.y);
  const auto d = column_delta(clean, out, ml::kRssi);
  EXPECT_NEAR(d.mean, 0.0, 0.1);
  EXPECT_NEAR(d.sd, 2.0, 0.1);
}

TEST(Evasion, NegativeSigmaRejected) {
  EXPECT_EQ(code_of([] { evasion_perturb(test_set(), -1.0, 1); }), ErrorCode::kConfig);
}

TEST(Interference, EveryFeatureJitteredLabelsKept) {
  const auto& clean = default_lab().data.matrix();
  const auto out = interference_perturb(clean, 3, 2.0);
  EXPECT_EQ(out.y, clean.y);
  ASSERT_EQ(out.size(), clean.size());
  for (std::size_t f = 0; f < ml::kNumFeatures; ++f) {
    const auto d = column_delta(clean, out, f);
    EXPECT_NEAR(d.mean, 0.0, 0.1) << f;
    EXPECT_NEAR(d.sd, 2.0, 0.1) << f;
  }
}

TEST(Extraction, QueriesComeFromSourceWithBoundedRssiShift) {
  const auto& src = default_lab().data.matrix();
  const auto q = extraction_queries(src, 5.0, 0, 8);
  ASSERT_EQ(q.size(), src.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_LE(std::abs(q.x[i][ml::kRssi] - src.x[i][ml::kRssi]), 5.0);
  }
  EXPECT_EQ(extraction_queries(src, 5.0, 100, 8).size(), 100u);
}

TEST(Attacks, BaselineRowsEqualPlainEvaluation) {
  AttackSpec spec;
  spec.noise_sigmas = {1.0};
  spec.seed = 42;
  const auto models = lab_models();
  const auto rep = run_evasion(models, test_set(), spec);
  for (const auto& [algo, m] : models) {
    const auto want = ml::evaluate(*m, test_set()).metrics;
    EXPECT_EQ(rep.row(std::string(ml::to_string(algo)), "baseline", 0.0).eval.metrics, want);
  }
  EXPECT_EQ(rep.ensemble_before, evaluate_ensemble(models, test_set()).metrics.accuracy);
}

TEST(Attacks, ReportIsCompleteForEveryModelAndSigma) {
  AttackSpec spec;
  spec.seed = 42;
  const auto rep = run_evasion(lab_models(), test_set(), spec);
  std::vector<std::string> names{"DT", "KNN", "RF", "SVM", "NB", "LR", "ensemble"};
  for (const auto& n : names) {
    EXPECT_NO_THROW(rep.row(n, "baseline", 0.0));
    for (double s : spec.noise_sigmas) EXPECT_NO_THROW(rep.row(n, "post", s)) << n << " " << s;
  }
  EXPECT_EQ(rep.rows.size(), names.size() * (1 + spec.noise_sigmas.size()));
}

TEST(Extraction, NoPerturbationYieldsFaithfulShadow) {
  AttackSpec spec;
  spec.kind = AttackKind::kExtraction;
  spec.rssi_perturbation_range = 0.0;
  spec.seed = 42;
  const auto res = extraction_attack(lab_models(), default_lab().data.matrix(), test_set(), spec);
  ASSERT_TRUE(res.report.extraction.has_value());
  ASSERT_TRUE(res.shadow);
  EXPECT_GE(res.report.extraction->agreement_on_queries, 0.95);
  // Querying does not modify the deployed models.
  EXPECT_EQ(res.report.ensemble_before, res.report.ensemble_after);
}

TEST(Attacks, SuiteCsvIsDeterministic) {
  std::vector<AttackSpec> specs(3);
  specs[0].kind = AttackKind::kEvasion;
  specs[1].kind = AttackKind::kExtraction;
  specs[1].query_budget = 500;
  specs[2].kind = AttackKind::kInterference;
  for (auto& s : specs) s.seed = 42;
  const auto models = lab_models();
  const auto a = attack_report_csv(run_suite(models, default_lab().data.matrix(), test_set(), specs));
  const auto b = attack_report_csv(run_suite(models, default_lab().data.matrix(), test_set(), specs));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "attack,param,model,accuracy,sensitivity,specificity,f1,precision,phase");
}

TEST(Attacks, RejectsMissingModels) {
  ModelSet broken = lab_models();
  broken[ml::Algo::kDT] = nullptr;
  AttackSpec spec;
  EXPECT_EQ(code_of([&] { run_evasion(broken, test_set(), spec); }), ErrorCode::kInvalidState);
  EXPECT_EQ(code_of([&] { run_interference(ModelSet{}, test_set(), spec); }), ErrorCode::kInvalidState);
}

TEST(Attacks, ParseNames) {
  EXPECT_EQ(parse_attack("interference"), AttackKind::kInterference);
  EXPECT_EQ(code_of([] { parse_attack("poisoning"); }), ErrorCode::kConfig);
}

}  // namespace
}  // namespace proxauth::threat
