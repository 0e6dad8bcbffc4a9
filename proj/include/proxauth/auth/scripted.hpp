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
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "proxauth/auth/service.hpp"
#include "proxauth/random.hpp"
#include "proxauth/rfsim/scan.hpp"

namespace proxauth::auth {

struct ScriptOptions {
  // Tick (1-based) at which the mobile device walks away; 0 keeps it put.
  int separate_at = 4;
  int max_ticks = 6;
  // Separation of the seated pair before the walk-away.
  double seated_max_m = 1.0;
  // Distance range of the walked-away mobile device from the login device.
  double away_min_m = 0.0;  // 0 selects the environment's unauthorized minimum
  double away_max_m = 6.0;
  std::uint64_t seed = 42;
};

struct ScriptedTick {
  int tick = 0;
  double t = 0.0;
  double separation_m = 0.0;
  TickResult result;
};

struct ScriptedTranscript {
  bool granted = false;
  double grant_separation_m = 0.0;
  AuthDecision decision;
  std::vector<ScriptedTick> ticks;
  std::optional<int> terminated_at;
  std::vector<std::string> lines;
};

namespace detail {

inline rfsim::PosePair walk_away(const rfsim::Environment& env, const rfsim::PosePair& seated, double lo, double hi,
                                 Rng& rng) {
  for (int i = 0; i < 4096; ++i) {
    const double d = rng.uniform(lo, hi);
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const rfsim::Point p{seated.login.position.x + d * std::cos(theta), seated.login.position.y + d * std::sin(theta)};
    if (env.bounds.contains(p)) return rfsim::make_pair_at(seated.login.position, p);
  }
  fail(ErrorCode::kGeometry, "no room to move the mobile device away");
}

inline std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace detail

// Registers a user, logs in with a co-located pair, then runs continuous
// ticks on a manual clock. The login device stays seated throughout; from
// `separate_at` on, the mobile device is elsewhere.
inline ScriptedTranscript run_scripted_session(const rfsim::Environment& env, const ModelRegistry& models,
                                               AuthPolicy policy, const ScriptOptions& opt) {
  policy.hash_cost = HashCost::min();
  auto clock = std::make_shared<ManualClock>();
  AuthService svc(policy, std::make_shared<MemoryUserStore>(), std::make_shared<StdoutMailer>(), clock, models,
                  ApCodebook::from_environment(env));
  RegisterRequest reg{"demo", "correct horse battery", "first pet", "rex", "demo@example.org",
                      rfsim::kLoginDeviceId, rfsim::kMobileDeviceId};
  svc.register_user(reg);

  Rng root(opt.seed);
  Rng place = root.fork(1);
  Rng radio = root.fork(2);
  const double lo = opt.away_min_m > 0.0 ? opt.away_min_m : env.unauthorized_min_m;
  const double t0 = clock->now();

  ScriptedTranscript out;
  rfsim::Environment desk = env;
  desk.threshold_m = std::min(opt.seated_max_m, env.threshold_m);
  const auto seated = rfsim::place_pair(desk, rfsim::Regime::kAuthentic, place);
  const auto away = detail::walk_away(env, seated, lo, opt.away_max_m, place);

  const auto pending = svc.login(reg.username, reg.password);
  out.grant_separation_m = seated.separation();
  out.decision = svc.submit_scans(pending.pending_id, rfsim::scan(env, seated.login, 0.0, radio),
                                  rfsim::scan(env, seated.mobile, 0.0, radio));
  out.granted = out.decision.granted;
  out.lines.push_back("t=+0s      sep " + detail::fmt("%.2f", out.grant_separation_m) + " m  " +
                      (out.granted ? "granted (overlap " + std::to_string(out.decision.overlap.overlap) + ")"
                                   : "denied: " + out.decision.reason));
  if (!out.granted) return out;

  for (int k = 1; k <= opt.max_ticks; ++k) {
    clock->advance(policy.recheck_interval_s);
    const bool apart = opt.separate_at > 0 && k >= opt.separate_at;
    const auto& pose = apart ? away : seated;
    const double t = clock->now() - t0;
    ScriptedTick st{k, t, pose.separation(), {}};
    st.result = svc.tick(out.decision.session_id, rfsim::scan(env, pose.login, t, radio),
                         rfsim::scan(env, pose.mobile, t, radio));
    std::string line = "tick " + std::to_string(k) + "  t=+" + detail::fmt("%.0f", t) + "s  sep " +
                       detail::fmt("%.2f", st.separation_m) + " m  ";
    if (st.result.action == TickAction::kContinue) {
      line += "continue";
    } else {
      line += "terminate: " + st.result.reason;
      out.terminated_at = k;
    }
    out.lines.push_back(std::move(line));
    out.ticks.push_back(std::move(st));
    if (out.terminated_at) break;
  }
  return out;
}

}  // namespace proxauth::auth
