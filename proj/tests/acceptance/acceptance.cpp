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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
// Oracles here are coded independently of the library where that matters.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <httplib.h>

#include "proxauth/auth/http.hpp"
#include "proxauth/auth/scripted.hpp"
#include "proxauth/auth/wire.hpp"
#include "proxauth/lab.hpp"
#include "proxauth/ml/importance.hpp"
#include "proxauth/ml/split.hpp"
#include "proxauth/threat/attacks.hpp"

namespace fs = std::filesystem;
using namespace proxauth;
using ml::Algo;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

KeyValueConfig default_config() {
  return KeyValueConfig::load(std::string(PROXAUTH_SOURCE_DIR) + "/config/default.conf");
}

const Lab& lab() {
  static const Lab l = build_lab(LabConfig::from(default_config()));
  return l;
}

double holdout_accuracy(Algo a) {
  return ml::evaluate(*lab().models.at(a), lab().split.test).metrics.accuracy;
}

// ---- 1 -------------------------------------------------------------------------

Outcome dataset_replication() {
  const auto dir = fs::temp_directory_path() / "proxauth-acceptance";
  fs::create_directories(dir);
  const auto csv_path = dir / "data.csv";
  const std::string cmd = std::string("'") + PROXAUTH_CLI_PATH + "' --config '" + PROXAUTH_SOURCE_DIR +
                          "/config/default.conf' gen-data -o '" + csv_path.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "gen-data failed"};

  std::ifstream in(csv_path);
  std::string header, line;
  std::getline(in, header);
  long rows = 0, pos = 0, neg = 0;
  std::set<int> aps;
  while (std::getline(in, line)) {
    int rpi, ssid, freq, rssi, loc, label;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%d,%d,%d", &rpi, &ssid, &freq, &rssi, &loc, &label) != 6) {
      return {false, "unparsable row: " + line};
    }
    ++rows;
    (label ? pos : neg)++;
    aps.insert(ssid);
  }

  // Separations of every placement the generator used for the same dataset.
  const auto cfg = LabConfig::from(default_config());
  const auto env = rfsim::build_environment(cfg.sim, cfg.sim.seed);
  std::vector<double> seps;
  rfsim::generate_dataset(env, cfg.sim.n_authentic, cfg.sim.n_unauthorized, cfg.sim.seed, &seps);
  const double lo = 7.0 * 0.3048, hi = 7.5 * 0.3048;
  long in_gap = 0;
  for (double s : seps) in_gap += s > lo && s < hi;

  const bool ok = header == "RPi,SSID,Frequency,RSSI,Location,Label" && rows == 4825 && pos == 2442 &&
                  neg == 2383 && aps.size() == 10 && in_gap == 0;
  return {ok, std::to_string(rows) + " rows (" + std::to_string(pos) + "/" + std::to_string(neg) + "), " +
                  std::to_string(aps.size()) + " APs, " + std::to_string(seps.size()) + " placements, " +
                  std::to_string(in_gap) + " in (7 ft, 7.5 ft)"};
}

// ---- 2 -------------------------------------------------------------------------

Outcome accuracy_regime() {
  std::map<Algo, double> acc;
  for (auto a : ml::kAllAlgos) acc[a] = holdout_accuracy(a);
  const double dt = acc[Algo::kDT], knn = acc[Algo::kKNN], rf = acc[Algo::kRF];
  const bool band = std::abs(dt - 0.924) <= 0.05;
  const bool cluster = std::abs(dt - knn) <= 0.02 && std::abs(dt - rf) <= 0.02 && std::abs(knn - rf) <= 0.02;
  const double tree_min = std::min({dt, knn, rf});
  const bool below = acc[Algo::kNB] < tree_min && acc[Algo::kLR] < tree_min;
  std::string d;
  for (auto a : ml::kAllAlgos) d += std::string(ml::to_string(a)) + "=" + fmt("%.3f", acc[a]) + " ";
  return {band && cluster && below, d};
}

// ---- 3 -------------------------------------------------------------------------

Outcome metric_oracle() {
  Rng rng(3);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    ml::ConfusionMatrix cm{static_cast<std::int64_t>(rng.below(100)), static_cast<std::int64_t>(rng.below(100)),
                           static_cast<std::int64_t>(rng.below(100)), static_cast<std::int64_t>(rng.below(100))};
    if (cm.total() == 0) cm.tp = 1;
    // Brute force: rebuild the label vectors and count.
    std::vector<std::pair<int, int>> pairs;  // (truth, predicted)
    for (std::int64_t k = 0; k < cm.tp; ++k) pairs.emplace_back(1, 1);
    for (std::int64_t k = 0; k < cm.fp; ++k) pairs.emplace_back(0, 1);
    for (std::int64_t k = 0; k < cm.tn; ++k) pairs.emplace_back(0, 0);
    for (std::int64_t k = 0; k < cm.fn; ++k) pairs.emplace_back(1, 0);
    double correct = 0, p = 0, n = 0, pp = 0, tp = 0, tn = 0;
    for (auto [t, y] : pairs) {
      correct += t == y;
      p += t == 1;
      n += t == 0;
      pp += y == 1;
      tp += t == 1 && y == 1;
      tn += t == 0 && y == 0;
    }
    const double acc = correct / static_cast<double>(pairs.size());
    const double sens = p > 0 ? tp / p : 0.0;
    const double spec = n > 0 ? tn / n : 0.0;
    const double prec = pp > 0 ? tp / pp : 0.0;
    const double f1 = prec + sens > 0 ? 2 * prec * sens / (prec + sens) : 0.0;
    const auto m = ml::metrics_from_cm(cm);
    for (auto [a, b] : {std::pair{acc, m.accuracy}, {sens, m.sensitivity}, {spec, m.specificity},
                        {prec, m.precision}, {f1, m.f1}}) {
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return {worst <= 1e-12, "max abs diff " + fmt("%.2e", worst) + " over 200 matrices"};
}

// ---- 4 -------------------------------------------------------------------------

ml::LabeledMatrix random_instance(Rng& rng, std::size_t n) {
  ml::LabeledMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    ml::FeatureVector v;
    for (auto& f : v) f = static_cast<double>(rng.below(5));
    m.x.push_back(v);
    m.y.push_back(v[0] + v[3] + rng.normal() > 4.0 ? 1 : 0);
  }
  m.y[0] = 0;
  m.y[1] = 1;
  return m;
}

Outcome classifier_oracles() {
  Rng rng(4);
  // (a) KNN versus exhaustive search on the same training points.
  long knn_mismatch = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const auto m = random_instance(rng, 200);
    const int k = 5;
    ml::KNearestNeighbors knn(k, m.x, m.y);
    for (const auto& q : m.x) {
      std::vector<std::pair<double, std::size_t>> d;
      for (std::size_t i = 0; i < m.size(); ++i) {
        double s = 0;
        for (std::size_t f = 0; f < ml::kNumFeatures; ++f) s += (m.x[i][f] - q[f]) * (m.x[i][f] - q[f]);
        d.emplace_back(s, i);
      }
      std::sort(d.begin(), d.end());
      int pos = 0;
      for (int j = 0; j < k; ++j) pos += m.y[d[static_cast<std::size_t>(j)].second];
      knn_mismatch += knn.predict(q) != (2 * pos > k ? 1 : 0);
    }
  }

  // (b) A single full-feature forest tree without bootstrap is the tree.
  ml::Hyperparams h;
  h.rf = {1, h.dt, false};
  const auto train_m = lab().split.train.matrix();
  const auto dt = ml::train(Algo::kDT, train_m, h, 7);
  const auto rf = ml::train(Algo::kRF, train_m, h, 7);
  long rf_mismatch = 0;
  for (const auto& v : lab().data.matrix().x) rf_mismatch += dt.predict_label(v) != rf.predict_label(v);

  // (c) Analytic gradients versus central differences.
  const auto small = random_instance(rng, 80);
  double worst_lr = 0, worst_svm = 0;
  int svm_points = 0;
  auto perturbed = [](ml::LinearWeights p, std::size_t f, double h) {
    (f < ml::kNumFeatures ? p.w[f] : p.b) += h;
    return p;
  };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1e-8, std::max(std::abs(a), std::abs(b))); };
  for (int i = 0; i < 10; ++i) {
    ml::LinearWeights p;
    for (auto& w : p.w) w = rng.normal(0, 0.3);
    p.b = rng.normal(0, 0.3);
    const auto g = ml::logistic_gradient(p, small.x, small.y, 1e-2);
    for (std::size_t f = 0; f <= ml::kNumFeatures; ++f) {
      const double fd = (ml::logistic_loss(perturbed(p, f, 1e-5), small.x, small.y, 1e-2) -
                         ml::logistic_loss(perturbed(p, f, -1e-5), small.x, small.y, 1e-2)) / 2e-5;
      worst_lr = std::max(worst_lr, rel(fd, f < ml::kNumFeatures ? g.w[f] : g.b));
    }
  }
  while (svm_points < 10) {
    ml::LinearWeights p;
    for (auto& w : p.w) w = rng.normal(0, 0.3);
    p.b = rng.normal(0, 0.3);
    bool kink = false;
    for (std::size_t i = 0; i < small.size(); ++i) {
      kink = kink || std::abs(1.0 - (small.y[i] ? 1.0 : -1.0) * p.margin(small.x[i])) < 1e-3;
    }
    if (kink) continue;
    ++svm_points;
    const auto g = ml::hinge_subgradient(p, small.x, small.y, 1e-2);
    for (std::size_t f = 0; f <= ml::kNumFeatures; ++f) {
      const double fd = (ml::hinge_objective(perturbed(p, f, 1e-6), small.x, small.y, 1e-2) -
                         ml::hinge_objective(perturbed(p, f, -1e-6), small.x, small.y, 1e-2)) / 2e-6;
      worst_svm = std::max(worst_svm, rel(fd, f < ml::kNumFeatures ? g.w[f] : g.b));
    }
  }

  // (d) Naive Bayes on four rows; by hand: class 1 RSSI ~ N(-52, 4),
  // class 0 RSSI ~ N(-73, 9), other columns constant, equal priors.
  std::vector<ml::FeatureVector> x{{1, 3, 2412, -50, 2}, {1, 3, 2412, -54, 2}, {1, 3, 2412, -70, 2},
                                   {1, 3, 2412, -76, 2}};
  const auto nb = ml::GaussianNaiveBayes::fit(x, {1, 1, 0, 0}, 1e-9);
  double worst_nb = 0;
  for (double q : {-45.0, -52.0, -60.0, -62.0, -64.0, -80.0}) {
    const double l1 = -0.5 * std::log(2 * M_PI * 4) - (q + 52) * (q + 52) / 8;
    const double l0 = -0.5 * std::log(2 * M_PI * 9) - (q + 73) * (q + 73) / 18;
    worst_nb = std::max(worst_nb, std::abs(nb.posterior({1, 3, 2412, q, 2}) - 1 / (1 + std::exp(l0 - l1))));
  }

  const bool ok = knn_mismatch == 0 && rf_mismatch == 0 && worst_lr < 1e-4 && worst_svm < 1e-4 && worst_nb < 1e-9;
  return {ok, "knn mismatches " + std::to_string(knn_mismatch) + ", rf/dt mismatches " + std::to_string(rf_mismatch) +
                  ", grad rel err lr " + fmt("%.1e", worst_lr) + " svm " + fmt("%.1e", worst_svm) + ", nb err " +
                  fmt("%.1e", worst_nb)};
}

// ---- 5 -------------------------------------------------------------------------

Outcome cross_validation() {
  const auto cfg = LabConfig::from(default_config());
  const auto folds = ml::kfold(lab().data, 5, cfg.sim.seed);
  bool sizes = folds.size() == 5;
  for (const auto& f : folds) sizes = sizes && f.validation.size() == 965;
  std::map<Algo, double> sum;
  for (const auto& f : folds) {
    const auto models = train_models(f.train.matrix(), {ml::kAllAlgos.begin(), ml::kAllAlgos.end()}, cfg.hyper,
                                     cfg.sim.seed);
    for (const auto& [a, m] : models) sum[a] += ml::evaluate(*m, f.validation).metrics.accuracy;
  }
  double worst = 0;
  std::string d;
  for (auto a : ml::kAllAlgos) {
    const double mean = sum[a] / 5.0;
    worst = std::max(worst, std::abs(mean - holdout_accuracy(a)));
    d += std::string(ml::to_string(a)) + "=" + fmt("%.3f", mean) + " ";
  }
  return {sizes && worst < 0.03, "folds of 965: " + std::string(sizes ? "yes" : "no") + ", cv means " + d +
                                     "max gap " + fmt("%.3f", worst)};
}

// ---- 6 -------------------------------------------------------------------------

Outcome feature_importance() {
  const auto train_m = lab().split.train.matrix();
  bool ok = true;
  std::string d;
  for (auto a : {Algo::kDT, Algo::kRF, Algo::kKNN}) {
    const auto imp = ml::feature_importance(*lab().models.at(a), train_m);
    const auto top = std::max_element(imp.begin(), imp.end()) - imp.begin();
    ok = ok && top == static_cast<long>(ml::kRssi);
    d += std::string(ml::to_string(a)) + " RSSI " + fmt("%.2f", imp[ml::kRssi]) + " ";
  }
  bool nb_na = false;
  try {
    ml::feature_importance(*lab().models.at(Algo::kNB), train_m);
  } catch (const Error& e) {
    nb_na = e.code() == ErrorCode::kNotApplicable;
  }
  return {ok && nb_na, d + "NB not applicable: " + (nb_na ? "yes" : "no")};
}

// ---- 7 -------------------------------------------------------------------------

Outcome continuous_authentication() {
  const auto cfg = LabConfig::from(default_config());
  auth::ModelRegistry models(lab().models.begin(), lab().models.end());
  int ok = 0;
  for (int trial = 1; trial <= 10; ++trial) {
    auth::ScriptOptions opt;
    opt.seed = derive_seed(cfg.sim.seed, static_cast<std::uint64_t>(1000 + trial));
    const auto t = auth::run_scripted_session(lab().env, models, cfg.policy, opt);
    ok += t.granted && t.terminated_at && *t.terminated_at == opt.separate_at;
  }
  return {ok == 10, std::to_string(ok) + "/10 sessions terminated at the first check after separation"};
}

// ---- 8 -------------------------------------------------------------------------

Outcome inference_overhead() {
  const auto batch = lab().split.test.matrix().x;
  double worst = 0;
  int measured = 0;
  std::string d;
  for (auto a : ml::kAllAlgos) {
    const double s = ml::benchmark_inference(*lab().models.at(a), batch, 5);
    worst = std::max(worst, s);
    ++measured;
    d += std::string(ml::to_string(a)) + "=" + fmt("%.4f", s) + "s ";
  }
  return {measured == 6 && batch.size() == 965 && worst <= 0.5, d};
}

// ---- 9-11 ----------------------------------------------------------------------

threat::ModelSet models() { return {lab().models.begin(), lab().models.end()}; }

Outcome evasion() {
  threat::AttackSpec spec;
  spec.seed = LabConfig::from(default_config()).sim.seed;
  const auto rep = threat::run_evasion(models(), lab().split.test.matrix(), spec);
  bool complete = true, ok = true;
  std::string d;
  for (double s : spec.noise_sigmas) {
    int stable = 0;
    for (auto a : ml::kAllAlgos) {
      const std::string name(ml::to_string(a));
      try {
        const double drop = rep.row(name, "baseline", 0.0).eval.metrics.accuracy -
                            rep.row(name, "post", s).eval.metrics.accuracy;
        stable += drop < 0.05;
      } catch (const Error&) {
        complete = false;
      }
    }
    if (s <= 1.0) {
      ok = ok && stable >= 4;
      d += "sigma " + fmt("%.1f", s) + ": " + std::to_string(stable) + "/6 stable; ";
    }
  }
  return {ok && complete, d + "report complete: " + (complete ? "yes" : "no")};
}

Outcome extraction() {
  threat::AttackSpec spec;
  spec.kind = threat::AttackKind::kExtraction;
  spec.seed = LabConfig::from(default_config()).sim.seed;
  const auto src = lab().data.matrix();
  const auto test = lab().split.test.matrix();
  const auto res = threat::extraction_attack(models(), src, test, spec);
  spec.rssi_perturbation_range = 0.0;
  const auto self = threat::extraction_attack(models(), src, test, spec);
  const double agree = res.report.extraction ? res.report.extraction->agreement_on_queries : 0.0;
  const double self_agree = self.report.extraction ? self.report.extraction->agreement_on_queries : 0.0;
  const double shift = std::abs(res.report.ensemble_before - res.report.ensemble_after);
  return {agree >= 0.7 && shift < 0.02 && self_agree >= 0.95,
          "agreement " + fmt("%.3f", agree) + ", ensemble shift " + fmt("%.3f", shift) + ", range-0 agreement " +
              fmt("%.3f", self_agree)};
}

Outcome interference() {
  threat::AttackSpec spec;
  spec.kind = threat::AttackKind::kInterference;
  spec.seed = LabConfig::from(default_config()).sim.seed;
  const auto rep = threat::run_interference(models(), lab().split.test.matrix(), spec);
  int kept = 0;
  std::string d;
  for (auto a : ml::kAllAlgos) {
    const std::string name(ml::to_string(a));
    const double base = rep.row(name, "baseline", spec.interference_sigma).eval.metrics.accuracy;
    const double post = rep.row(name, "post", spec.interference_sigma).eval.metrics.accuracy;
    kept += base - post <= 0.10;
    d += name + " " + fmt("%.3f", base) + "->" + fmt("%.3f", post) + " ";
  }
  return {kept >= 4, std::to_string(kept) + "/6 within 0.10: " + d};
}

// ---- 12 ------------------------------------------------------------------------

Outcome protocol_over_http() {
  auto cfg = LabConfig::from(default_config());
  cfg.policy.hash_cost = auth::HashCost::min();
  auto clock = std::make_shared<auth::ManualClock>();
  std::ostringstream mail;
  auth::AuthService svc(cfg.policy, std::make_shared<auth::MemoryUserStore>(),
                        std::make_shared<auth::StdoutMailer>(mail), clock,
                        auth::ModelRegistry(lab().models.begin(), lab().models.end()),
                        auth::ApCodebook::from_environment(lab().env));
  auth::AuthHttpServer server(svc);
  const int port = server.bind_to_any_port("127.0.0.1");
  if (port <= 0) return {false, "could not bind"};
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client c("127.0.0.1", port);
  std::vector<std::string> failures;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  };
  auto post = [&](const std::string& path, const json& body) { return c.Post(path, body.dump(), "application/json"); };

  const auto& env = lab().env;
  Rng radio(12);
  auto scans_at = [&](rfsim::Point a, rfsim::Point b, const std::vector<std::size_t>& keep_mobile = {}) {
    auto login = rfsim::scan(env, {rfsim::kLoginDeviceId, rfsim::DeviceRole::kLogin, a}, 0, radio);
    auto mobile = rfsim::scan(env, {rfsim::kMobileDeviceId, rfsim::DeviceRole::kMobile, b}, 0, radio);
    if (!keep_mobile.empty()) {
      std::vector<rfsim::BeaconObservation> kept;
      for (auto i : keep_mobile) kept.push_back(mobile.observations.at(i));
      mobile.observations = kept;
    }
    return json{{"scans", {auth::scan_report_to_json(login), auth::scan_report_to_json(mobile)}}};
  };
  const rfsim::Point desk = env.workstation;
  const rfsim::Point beside{desk.x + 0.3, desk.y};
  const rfsim::Point far{env.bounds.width - 0.5, env.bounds.height - 0.5};

  const json reg = {{"username", "carol"},   {"password", "a long passphrase"}, {"security_question", "city?"},
                    {"answer", "Lisbon"},    {"email", "carol@example.org"},    {"login_device", "rpi-1"},
                    {"mobile_device", "rpi-2"}};
  const json creds = {{"username", "carol"}, {"password", "a long passphrase"}};
  auto r = post("/register", reg);
  expect(r && r->status == 201, "register");

  auto start = [&]() -> std::string {
    auto l = post("/login", creds);
    if (!l || l->status != 200) return "";
    return json::parse(l->body)["pending_id"].get<std::string>();
  };
  auto pending = start();
  r = post("/auth/" + pending + "/scans", scans_at(desk, beside));
  expect(r && r->status == 200 && json::parse(r->body).value("granted", false), "co-located grant");

  // Single-point failures.
  auto bad = post("/login", {{"username", "carol"}, {"password", "wrong password"}});
  auto ghost = post("/login", {{"username", "nobody"}, {"password", "wrong password"}});
  expect(bad && ghost && bad->status == 401 && ghost->status == 401 && bad->body == ghost->body,
         "uniform bad-password response");

  pending = start();
  auto overlap = post("/auth/" + pending + "/scans", scans_at(desk, beside, {0, 1}));
  pending = start();
  auto proximity = post("/auth/" + pending + "/scans", scans_at(desk, far));
  expect(overlap && overlap->status == 403, "overlap 2 < 3 denied");
  expect(proximity && proximity->status == 403, "proximity failure denied");
  expect(overlap && proximity && overlap->body == proximity->body, "uniform denial body");

  pending = start();
  clock->advance(cfg.policy.pending_ttl_s + 1);
  auto expired = post("/auth/" + pending + "/scans", scans_at(desk, beside));
  expect(expired && expired->status == 410, "expired pending rejected");

  // OTP fallback.
  expect(post("/otp/request", {{"username", "carol"}, {"answer", "lisbon"}})->status == 202, "otp request");
  std::string code;
  {
    std::istringstream lines(mail.str());
    std::string line;
    while (std::getline(lines, line)) code = json::parse(line)["data"]["code"].get<std::string>();
  }
  auto v1 = post("/otp/verify", {{"username", "carol"}, {"code", code}});
  auto v2 = post("/otp/verify", {{"username", "carol"}, {"code", code}});
  expect(v1 && v1->status == 200, "otp grants");
  expect(v2 && v2->status == 401, "otp replay rejected");
  post("/otp/request", {{"username", "carol"}, {"answer", "lisbon"}});
  {
    std::istringstream lines(mail.str());
    std::string line;
    while (std::getline(lines, line)) code = json::parse(line)["data"]["code"].get<std::string>();
  }
  clock->advance(cfg.policy.otp_ttl_s + 1);
  auto late = post("/otp/verify", {{"username", "carol"}, {"code", code}});
  expect(late && late->status == 401 && bad && late->body == bad->body, "otp rejected after TTL");

  server.stop();
  th.join();
  std::string d = failures.empty() ? "all protocol steps behaved" : "failed:";
  for (const auto& f : failures) d += " [" + f + "]";
  return {failures.empty(), d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"dataset replication", dataset_replication},
      {"accuracy regime", accuracy_regime},
      {"metric oracle", metric_oracle},
      {"classifier oracles", classifier_oracles},
      {"cross-validation", cross_validation},
      {"feature importance", feature_importance},
      {"continuous authentication", continuous_authentication},
      {"inference overhead", inference_overhead},
      {"evasion resilience", evasion},
      {"extraction experiment", extraction},
      {"interference resilience", interference},
      {"protocol end-to-end", protocol_over_http},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << "AC" << (i + 1) << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << " (" << fmt("%.1f", secs) << " s)" << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
