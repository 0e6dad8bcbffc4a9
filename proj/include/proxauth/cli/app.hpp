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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "proxauth/auth/http.hpp"
#include "proxauth/auth/scripted.hpp"
#include "proxauth/cli/manifest.hpp"
#include "proxauth/lab.hpp"
#include "proxauth/ml/evaluate.hpp"
#include "proxauth/ml/importance.hpp"
#include "proxauth/ml/report.hpp"
#include "proxauth/ml/serialize.hpp"
#include "proxauth/threat/attacks.hpp"
#include "proxauth/version.hpp"

namespace proxauth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline void write_text(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot write " + path);
  f << text;
}

// State shared by every subcommand for one invocation.
struct Run {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> argv;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool json = false;
  KeyValueConfig kv;
  double started_at = wall_seconds();

  void resolve_config() {
    std::string path = config_path;
    if (path.empty()) {
      if (const char* env = std::getenv("PROXAUTH_CONFIG"); env && *env) path = env;
    }
    if (!path.empty()) kv = KeyValueConfig::load(path);
    if (seed) kv.set("seed", std::to_string(*seed));
  }

  std::uint64_t resolved_seed() const { return static_cast<std::uint64_t>(kv.get_int("seed", 42)); }

  LabConfig lab_config() const { return LabConfig::from(kv); }

  RunManifest manifest(const std::string& command, std::vector<std::string> inputs,
                       std::vector<std::string> outputs) const {
    RunManifest m;
    m.command = command;
    m.argv = argv;
    m.config = kv;
    m.seed = resolved_seed();
    m.inputs = std::move(inputs);
    m.outputs = std::move(outputs);
    m.started_at = started_at;
    m.finished_at = wall_seconds();
    return m;
  }

  // Writes `text` to `path` (with a manifest) or to stdout when path is empty.
  void emit(const std::string& command, const std::string& path, const std::string& text,
            const std::vector<std::string>& inputs) {
    if (path.empty() || path == "-") {
      out << text;
      return;
    }
    write_text(path, text);
    write_manifest(manifest(command, inputs, {path}), path);
  }
};

inline ml::Dataset load_data(const std::string& path) {
  if (!std::filesystem::exists(path)) fail(ErrorCode::kIo, "no such dataset: " + path);
  return ml::load_dataset(path);
}

inline std::string metrics_text(const Run& run, const std::vector<ml::MetricsRow>& rows) {
  return run.json ? ml::metrics_json(rows).dump(2) + "\n" : ml::metrics_csv(rows);
}

// --- subcommands ------------------------------------------------------------

struct GenDataOpts {
  std::optional<int> authentic, unauthorized, aps;
  std::string out;
};

inline int gen_data(Run& run, const GenDataOpts& o) {
  if (o.authentic) run.kv.set("n_authentic", std::to_string(*o.authentic));
  if (o.unauthorized) run.kv.set("n_unauthorized", std::to_string(*o.unauthorized));
  if (o.aps) run.kv.set("ap_count", std::to_string(*o.aps));
  const auto cfg = run.lab_config();
  const auto env = rfsim::build_environment(cfg.sim, cfg.sim.seed);
  const auto data = rfsim::generate_dataset(env, cfg.sim.n_authentic, cfg.sim.n_unauthorized, cfg.sim.seed);
  const auto parent = std::filesystem::path(o.out).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  ml::save_dataset(data, o.out);
  write_manifest(run.manifest("gen-data", {}, {o.out}), o.out);
  run.err << "wrote " << data.size() << " rows (" << data.count_label(1) << " authentic / " << data.count_label(0)
          << " unauthorized) over " << env.aps.size() << " APs to " << o.out << '\n';
  return kExitOk;
}

struct DataOpts {
  std::string data;
  std::string algos = "all";
  std::string out;
  std::optional<double> test_fraction;
};

inline void apply(Run& run, const DataOpts& o) {
  if (o.test_fraction) run.kv.set("test_fraction", std::to_string(*o.test_fraction));
}

inline int train_cmd(Run& run, const DataOpts& o, bool full) {
  apply(run, o);
  const auto cfg = run.lab_config();
  const auto data = load_data(o.data);
  const auto algos = ml::parse_algo_list(o.algos);
  const auto train_set = full ? data : ml::split(data, cfg.test_fraction, cfg.sim.seed).train;
  const auto models = train_models(train_set.matrix(), algos, cfg.hyper, cfg.sim.seed);
  std::filesystem::create_directories(o.out);
  for (const auto& [algo, m] : models) {
    const auto path = (std::filesystem::path(o.out) / (lower(std::string(ml::to_string(algo))) + ".json")).string();
    ml::save_model(*m, path);
    write_manifest(run.manifest("train", {o.data}, {path}), path);
    run.err << "saved " << ml::to_string(algo) << " to " << path << '\n';
  }
  return kExitOk;
}

inline ModelSet load_models(const std::string& dir, const std::vector<ml::Algo>& algos) {
  ModelSet out;
  for (auto a : algos) {
    const auto path = (std::filesystem::path(dir) / (lower(std::string(ml::to_string(a))) + ".json")).string();
    out[a] = std::make_shared<const ml::TrainedModel>(ml::load_model(path));
  }
  return out;
}

inline int eval_cmd(Run& run, const DataOpts& o, const std::string& models_dir) {
  apply(run, o);
  const auto cfg = run.lab_config();
  const auto data = load_data(o.data);
  const auto algos = ml::parse_algo_list(o.algos);
  const auto tt = ml::split(data, cfg.test_fraction, cfg.sim.seed);
  const auto models =
      models_dir.empty() ? train_models(tt.train.matrix(), algos, cfg.hyper, cfg.sim.seed) : load_models(models_dir, algos);
  const auto test = tt.test.matrix();
  std::vector<ml::MetricsRow> rows;
  for (const auto& [algo, m] : models) rows.push_back({algo, ml::kHoldoutFold, ml::evaluate(*m, test)});
  run.emit("eval", o.out, metrics_text(run, rows), {o.data});
  return kExitOk;
}

inline int cv_cmd(Run& run, const DataOpts& o, int k) {
  apply(run, o);
  const auto cfg = run.lab_config();
  const auto data = load_data(o.data);
  const auto algos = ml::parse_algo_list(o.algos);
  const auto folds = ml::kfold(data, k, cfg.sim.seed);
  std::map<ml::Algo, std::vector<ml::Evaluation>> per_algo;
  std::vector<ml::MetricsRow> rows;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto models = train_models(folds[f].train.matrix(), algos, cfg.hyper, cfg.sim.seed);
    const auto val = folds[f].validation.matrix();
    for (const auto& [algo, m] : models) {
      auto e = ml::evaluate(*m, val);
      per_algo[algo].push_back(e);
      rows.push_back({algo, static_cast<int>(f), e});
    }
  }
  for (const auto& [algo, evals] : per_algo) rows.push_back(ml::mean_row(algo, evals));
  run.emit("cv", o.out, metrics_text(run, rows), {o.data});
  return kExitOk;
}

inline int importance_cmd(Run& run, const DataOpts& o) {
  apply(run, o);
  const auto cfg = run.lab_config();
  const auto data = load_data(o.data);
  const auto algos = ml::parse_algo_list(o.algos);
  const auto train = ml::split(data, cfg.test_fraction, cfg.sim.seed).train.matrix();
  const auto models = train_models(train, algos, cfg.hyper, cfg.sim.seed);
  std::string csv = "model,feature,importance\n";
  nlohmann::ordered_json js = nlohmann::ordered_json::object();
  for (const auto& [algo, m] : models) {
    const std::string name(ml::to_string(algo));
    if (algo == ml::Algo::kNB && algos.size() > 1) {
      run.err << "NB: feature importance is not applicable; skipped\n";
      continue;
    }
    const auto imp = ml::feature_importance(*m, train);
    for (std::size_t f = 0; f < ml::kNumFeatures; ++f) {
      csv += name + ',' + std::string(ml::kFeatureNames[f]) + ',' + ml::format_fixed(imp[f]) + '\n';
      js[name][std::string(ml::kFeatureNames[f])] = imp[f];
    }
  }
  run.emit("importance", o.out, run.json ? js.dump(2) + "\n" : csv, {o.data});
  return kExitOk;
}

inline int bench_cmd(Run& run, const DataOpts& o, int reps) {
  apply(run, o);
  const auto cfg = run.lab_config();
  const auto data = load_data(o.data);
  const auto algos = ml::parse_algo_list(o.algos);
  const auto tt = ml::split(data, cfg.test_fraction, cfg.sim.seed);
  const auto models = train_models(tt.train.matrix(), algos, cfg.hyper, cfg.sim.seed);
  const auto batch = tt.test.matrix().x;
  std::string csv = "model,batch,seconds\n";
  auto js = nlohmann::ordered_json::array();
  for (const auto& [algo, m] : models) {
    const double s = ml::benchmark_inference(*m, batch, reps);
    csv += std::string(ml::to_string(algo)) + ',' + std::to_string(batch.size()) + ',' + ml::format_fixed(s, 6) + '\n';
    js.push_back({{"model", ml::to_string(algo)}, {"batch", batch.size()}, {"seconds", s}});
  }
  // Timings vary run to run, so no manifest-reproducibility claim is made for them.
  run.emit("bench", o.out, run.json ? js.dump(2) + "\n" : csv, {o.data});
  return kExitOk;
}

struct AttackOpts {
  std::string attacks = "evasion,extraction,interference";
  std::vector<double> sigmas;
  std::optional<double> range;
  std::optional<std::size_t> budget;
  std::string target = "RF";
  std::string out_dir = ".";
};

inline int attack_cmd(Run& run, const DataOpts& o, const AttackOpts& a) {
  apply(run, o);
  const auto cfg = run.lab_config();
  const auto data = load_data(o.data);
  const auto algos = ml::parse_algo_list(o.algos);
  const auto tt = ml::split(data, cfg.test_fraction, cfg.sim.seed);
  const auto models = train_models(tt.train.matrix(), algos, cfg.hyper, cfg.sim.seed);
  std::vector<threat::AttackSpec> specs;
  std::stringstream ss(a.attacks);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    threat::AttackSpec s;
    s.kind = threat::parse_attack(item);
    s.seed = cfg.sim.seed;
    if (!a.sigmas.empty()) s.noise_sigmas = a.sigmas;
    if (a.range) s.rssi_perturbation_range = *a.range;
    if (a.budget) s.query_budget = *a.budget;
    s.target = ml::parse_algo(a.target);
    specs.push_back(s);
  }
  const auto reports = threat::run_suite(models, data.matrix(), tt.test.matrix(), specs);
  const auto csv_path = (std::filesystem::path(a.out_dir) / "attack_report.csv").string();
  const auto json_path = (std::filesystem::path(a.out_dir) / "attack_report.json").string();
  const auto csv = threat::attack_report_csv(reports);
  write_text(csv_path, csv);
  write_text(json_path, threat::attack_report_json(reports).dump(2) + "\n");
  write_manifest(run.manifest("attack", {o.data}, {csv_path}), csv_path);
  write_manifest(run.manifest("attack", {o.data}, {json_path}), json_path);
  run.out << csv;
  return kExitOk;
}

struct ServeOpts {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string models_dir;
  std::string store;
  std::string spool;
};

inline int serve_cmd(Run& run, const ServeOpts& o) {
  const auto cfg = run.lab_config();
  const auto env = rfsim::build_environment(cfg.sim, cfg.sim.seed);
  std::vector<ml::Algo> needed = cfg.policy.continuous_ensemble;
  needed.push_back(cfg.policy.decision_model);
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  ModelSet models;
  if (!o.models_dir.empty()) {
    models = load_models(o.models_dir, needed);
  } else {
    run.err << "no --models given; generating data and training from config\n";
    models = build_lab(cfg, needed).models;
  }
  std::shared_ptr<auth::UserStore> store;
  if (o.store.empty()) store = std::make_shared<auth::MemoryUserStore>();
  else store = std::make_shared<auth::JsonlUserStore>(o.store);
  std::shared_ptr<auth::Mailer> mailer;
  if (o.spool.empty()) mailer = std::make_shared<auth::StdoutMailer>(run.out);
  else mailer = std::make_shared<auth::SpoolMailer>(o.spool);
  auth::AuthService svc(cfg.policy, store, mailer, std::make_shared<auth::SystemClock>(), models,
                        auth::ApCodebook::from_environment(env));
  auth::AuthHttpServer server(svc);
  run.err << "listening on " << o.host << ':' << o.port << '\n';
  if (!server.listen(o.host, o.port)) fail(ErrorCode::kIo, "cannot listen on " + o.host + ":" + std::to_string(o.port));
  return kExitOk;
}

struct DemoOpts {
  int separate_at = 4;
  int ticks = 6;
  std::string out;
};

inline int demo_cmd(Run& run, const DemoOpts& o) {
  if (o.separate_at < 0 || o.ticks < 1) fail(ErrorCode::kConfig, "--separate-at must be >= 0 and --ticks >= 1");
  const auto cfg = run.lab_config();
  const auto lab = build_lab(cfg);
  auth::ScriptOptions so;
  so.separate_at = o.separate_at;
  so.max_ticks = std::max(o.ticks, o.separate_at);
  so.seed = cfg.sim.seed;
  const auto tr = auth::run_scripted_session(lab.env, lab.models, cfg.policy, so);
  std::string text;
  if (run.json) {
    nlohmann::ordered_json j;
    j["granted"] = tr.granted;
    j["terminated_at"] = tr.terminated_at ? nlohmann::ordered_json(*tr.terminated_at) : nlohmann::ordered_json();
    j["lines"] = tr.lines;
    text = j.dump(2) + "\n";
  } else {
    for (const auto& l : tr.lines) text += l + '\n';
  }
  run.emit("demo-session", o.out, text, {});
  return kExitOk;
}

}  // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr);

namespace detail {

inline int replay_cmd(std::ostream& out, std::ostream& err, const std::string& manifest_path) {
  const auto m = RunManifest::load(manifest_path);
  if (m.argv.empty()) fail(ErrorCode::kSchema, "manifest has no argv");
  return dispatch(m.argv, out, err);
}

}  // namespace detail

// Runs one command line (args[0] is the program name) and returns the exit code.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  Run run{out, err, args, {}, {}, false, {}};

  CLI::App app{"proxauth: Wi-Fi co-location second factor toolkit", "proxauth"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", run.config_path, "Key/value config file (default: $PROXAUTH_CONFIG)");
  app.add_option("--seed", run.seed, "Seed for every random stream (default 42)");
  app.add_flag("--json", run.json, "Emit JSON instead of CSV/text");

  GenDataOpts gen;
  auto* c_gen = app.add_subcommand("gen-data", "Simulate a labeled beacon dataset");
  c_gen->add_option("--authentic", gen.authentic, "Authentic rows (default 2442)");
  c_gen->add_option("--unauthorized", gen.unauthorized, "Unauthorized rows (default 2383)");
  c_gen->add_option("--aps", gen.aps, "Number of access points (default 10)");
  c_gen->add_option("-o,--out", gen.out, "Output file (.csv or .jsonl)")->required();

  auto add_data = [](CLI::App* c, DataOpts& o, bool with_out) {
    c->add_option("data", o.data, "Dataset file (.csv or .jsonl)")->required();
    c->add_option("--algo", o.algos, "Algorithms: all or a comma list of DT,KNN,RF,SVM,NB,LR");
    c->add_option("--test-fraction", o.test_fraction, "Hold-out fraction (default 0.2)");
    if (with_out) c->add_option("-o,--out", o.out, "Output file (default stdout)");
  };

  DataOpts d_train;
  bool train_full = false;
  auto* c_train = app.add_subcommand("train", "Train models and save them as JSON");
  add_data(c_train, d_train, false);
  c_train->add_option("-o,--out-dir", d_train.out, "Directory for <algo>.json model files")->required();
  c_train->add_flag("--full", train_full, "Train on the whole dataset instead of the training split");

  DataOpts d_eval;
  std::string eval_models;
  auto* c_eval = app.add_subcommand("eval", "Evaluate on the stratified hold-out split");
  add_data(c_eval, d_eval, true);
  c_eval->add_option("--models", eval_models, "Load models from this directory instead of training");

  DataOpts d_cv;
  int k = 5;
  auto* c_cv = app.add_subcommand("cv", "Stratified k-fold cross-validation");
  add_data(c_cv, d_cv, true);
  c_cv->add_option("--k", k, "Number of folds")->check(CLI::Range(2, 1000));

  DataOpts d_imp;
  auto* c_imp = app.add_subcommand("importance", "Per-model feature importance");
  add_data(c_imp, d_imp, true);

  DataOpts d_bench;
  int reps = 5;
  auto* c_bench = app.add_subcommand("bench", "Time batch inference on the hold-out split");
  add_data(c_bench, d_bench, true);
  c_bench->add_option("--reps", reps, "Repetitions; the median is reported")->check(CLI::Range(1, 1000));

  DataOpts d_atk;
  AttackOpts atk;
  auto* c_atk = app.add_subcommand("attack", "Run the evasion, extraction and interference experiments");
  add_data(c_atk, d_atk, false);
  c_atk->add_option("--attacks", atk.attacks, "Comma list of evasion,extraction,interference");
  c_atk->add_option("--sigmas", atk.sigmas, "Evasion noise levels in dB")->delimiter(',');
  c_atk->add_option("--range", atk.range, "Extraction RSSI perturbation range in dB (default 20)");
  c_atk->add_option("--query-budget", atk.budget, "Extraction queries (default: whole dataset)");
  c_atk->add_option("--target", atk.target, "Extraction target model");
  c_atk->add_option("-o,--out-dir", atk.out_dir, "Directory for attack_report.csv/.json");

  ServeOpts srv;
  auto* c_srv = app.add_subcommand("serve", "Run the authentication service over HTTP");
  c_srv->add_option("--host", srv.host, "Bind address");
  c_srv->add_option("--port", srv.port, "Port")->check(CLI::Range(1, 65535));
  c_srv->add_option("--models", srv.models_dir, "Directory of trained models (default: train from config)");
  c_srv->add_option("--store", srv.store, "JSON-lines user store (default: in memory)");
  c_srv->add_option("--spool", srv.spool, "Mail spool directory (default: stdout)");

  DemoOpts demo;
  auto* c_demo = app.add_subcommand("demo-session", "Scripted continuous-authentication session");
  c_demo->add_option("--separate-at", demo.separate_at, "Tick at which the mobile device walks away (0 = never)");
  c_demo->add_option("--ticks", demo.ticks, "Number of continuous checks");
  c_demo->add_option("-o,--out", demo.out, "Transcript file (default stdout)");

  std::string manifest_path;
  auto* c_replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  c_replay->add_option("manifest", manifest_path, "Path to a .manifest.json file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_replay->parsed()) return replay_cmd(out, err, manifest_path);
    run.resolve_config();
    if (c_gen->parsed()) return gen_data(run, gen);
    if (c_train->parsed()) return train_cmd(run, d_train, train_full);
    if (c_eval->parsed()) return eval_cmd(run, d_eval, eval_models);
    if (c_cv->parsed()) return cv_cmd(run, d_cv, k);
    if (c_imp->parsed()) return importance_cmd(run, d_imp);
    if (c_bench->parsed()) return bench_cmd(run, d_bench, reps);
    if (c_atk->parsed()) return attack_cmd(run, d_atk, atk);
    if (c_srv->parsed()) return serve_cmd(run, srv);
    if (c_demo->parsed()) return demo_cmd(run, demo);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

inline int dispatch(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return dispatch(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace proxauth::cli
