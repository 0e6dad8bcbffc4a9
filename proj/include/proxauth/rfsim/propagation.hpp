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
#include <cmath>

#include "proxauth/random.hpp"
#include "proxauth/rfsim/types.hpp"

namespace proxauth::rfsim {

inline constexpr double kRssiMinDbm = -100.0;
inline constexpr double kRssiMaxDbm = -20.0;

// Log-distance path loss without shadowing; distances under the reference
// distance are clamped to it.
inline double mean_rssi(const AccessPoint& ap, Point p, const PropagationModel& model) {
  const double d0 = model.reference_distance_m;
  const double d = std::max(distance(ap.position, p), d0);
  return ap.ref_power_dbm - 10.0 * model.path_loss_exponent * std::log10(d / d0);
}

// One shadowed RSSI draw, clamped to [-100, -20] dBm. Always consumes exactly
// one normal variate so stream positions do not depend on sigma.
inline double rssi_at(const AccessPoint& ap, Point p, const PropagationModel& model, Rng& rng) {
  const double noise = rng.normal(0.0, 1.0) * model.shadowing_sigma_db;
  return std::clamp(mean_rssi(ap, p, model) + noise, kRssiMinDbm, kRssiMaxDbm);
}

}  // namespace proxauth::rfsim
