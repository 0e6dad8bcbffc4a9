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

#include <cmath>
#include <numbers>

#include <string>
#include <utility>
#include <vector>

#include "proxauth/error.hpp"
#include "proxauth/random.hpp"
#include "proxauth/rfsim/environment.hpp"
#include "proxauth/rfsim/propagation.hpp"
#include "proxauth/rfsim/types.hpp"

namespace proxauth::rfsim {

inline ScanReport scan(const Environment& env, const DevicePose& pose, double t, Rng& rng) {
  if (!env.bounds.contains(pose.position)) {
    fail(ErrorCode::kGeometry, "device " + pose.device_id + " is outside the floor plan");
  }
  ScanReport report;
  report.device_id = pose.device_id;
  report.role = pose.role;
  report.t = t;
  report.location = zone_of(env, pose.position);
  for (const auto& ap : env.aps) {
    const double rssi = rssi_at(ap, pose.position, env.propagation, rng);
    if (rssi < env.sensitivity_floor_dbm) continue;
    report.observations.push_back(
        BeaconObservation{ap.ap_id, ap.ssid, ap.bssid, ap.frequency_mhz, rssi, pose.device_id, t});
  }
  return report;
}

enum class Regime { kAuthentic, kUnauthorized };

struct PosePair {
  DevicePose login;
  DevicePose mobile;

  double separation() const { return distance(login.position, mobile.position); }
};

inline constexpr const char* kLoginDeviceId = "rpi-1";
inline constexpr const char* kMobileDeviceId = "rpi-2";

inline PosePair make_pair_at(Point login, Point mobile) {
  return {DevicePose{kLoginDeviceId, DeviceRole::kLogin, login},
          DevicePose{kMobileDeviceId, DeviceRole::kMobile, mobile}};
}

// Draws a device pair around the environment's workstation. The separation is
// uniform over (0, threshold] for authentic pairs and over
// [threshold + gray gap, diagonal] for unauthorized ones, restricted to
// separations that fit inside the bounds.
inline PosePair place_pair(const Environment& env, Regime regime, Rng& rng) {
  const double lo = regime == Regime::kAuthentic ? 0.0 : env.unauthorized_min_m;
  const double hi = regime == Regime::kAuthentic ? env.threshold_m : env.bounds.diagonal();
  if (lo >= hi) fail(ErrorCode::kGeometry, "bounds too small for the requested regime");

  constexpr int kDistanceDraws = 4096;
  constexpr int kOrientationDraws = 64;
  for (int i = 0; i < kDistanceDraws; ++i) {
    const double d = regime == Regime::kAuthentic ? rng.uniform_open_closed(lo, hi) : rng.uniform(lo, hi);
    for (int j = 0; j < kOrientationDraws; ++j) {
      const Point mid{env.workstation.x + rng.normal(0.0, env.placement_jitter_m),
                      env.workstation.y + rng.normal(0.0, env.placement_jitter_m)};
      const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double dx = 0.5 * d * std::cos(theta);
      const double dy = 0.5 * d * std::sin(theta);
      const Point a{mid.x - dx, mid.y - dy};
      const Point b{mid.x + dx, mid.y + dy};
      if (env.bounds.contains(a) && env.bounds.contains(b)) return make_pair_at(a, b);
    }
  }
  fail(ErrorCode::kGeometry, "could not place a device pair inside the bounds");
}

struct ScanPair {
  ScanReport login;
  ScanReport mobile;
};

inline std::vector<ScanPair> session_stream(const Environment& env, const std::vector<PosePair>& trajectory,
                                            double interval_s, Rng& rng, double t0 = 0.0) {
  if (trajectory.empty()) fail(ErrorCode::kConfig, "trajectory must not be empty");
  if (!(interval_s > 0.0)) fail(ErrorCode::kConfig, "interval must be positive");
  std::vector<ScanPair> out;
  out.reserve(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const double t = t0 + static_cast<double>(i) * interval_s;
    ScanPair p{scan(env, trajectory[i].login, t, rng), scan(env, trajectory[i].mobile, t, rng)};
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace proxauth::rfsim
