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
#include <cstdint>
#include <vector>

#include "proxauth/error.hpp"
#include "proxauth/ml/sample.hpp"
#include "proxauth/random.hpp"
#include "proxauth/rfsim/scan.hpp"

namespace proxauth::rfsim {

inline ml::Sample to_sample(const BeaconObservation& obs, DeviceRole role, int location, int label) {
  return ml::Sample{rpi_code(role), obs.ap_id, obs.frequency_mhz,
                    static_cast<int>(std::lround(obs.rssi_dbm)), location, label};
}

// One row per (device, AP) observation. Placements are drawn until each class
// holds exactly the requested number of rows; the last placement of a class
// may contribute only part of its rows. `separations`, when given, receives
// the device separation of every placement used.
inline ml::Dataset generate_dataset(const Environment& env, int n_authentic, int n_unauthorized,
                                    std::uint64_t seed, std::vector<double>* separations = nullptr) {
  if (n_authentic < 0 || n_unauthorized < 0) fail(ErrorCode::kConfig, "row counts must be >= 0");
  ml::Dataset d;
  d.rows.reserve(static_cast<std::size_t>(n_authentic + n_unauthorized));
  Rng root(seed);
  const std::pair<Regime, int> plan[] = {{Regime::kAuthentic, n_authentic},
                                         {Regime::kUnauthorized, n_unauthorized}};
  for (const auto& [regime, wanted] : plan) {
    const int label = regime == Regime::kAuthentic ? 1 : 0;
    Rng rng = root.fork(static_cast<std::uint64_t>(label) + 11);
    int produced = 0;
    double t = 0.0;
    int stalled = 0;
    while (produced < wanted) {
      const PosePair pair = place_pair(env, regime, rng);
      if (separations) separations->push_back(pair.separation());
      const int before = produced;
      for (const DevicePose* pose : {&pair.login, &pair.mobile}) {
        const ScanReport report = scan(env, *pose, t, rng);
        for (const auto& obs : report.observations) {
          if (produced == wanted) break;
          d.rows.push_back(to_sample(obs, pose->role, *report.location, label));
          ++produced;
        }
      }
      t += 1.0;
      stalled = produced == before ? stalled + 1 : 0;
      if (stalled > 1000) fail(ErrorCode::kGeometry, "no access point is observable from any placement");
    }
  }
  return d;
}

}  // namespace proxauth::rfsim
