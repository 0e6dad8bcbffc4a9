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
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <string>

#include "proxauth/config.hpp"
#include "proxauth/error.hpp"
#include "proxauth/random.hpp"
#include "proxauth/rfsim/types.hpp"

namespace proxauth::rfsim {

// 2.4 GHz channels 1-13 and the 20 MHz 5 GHz channels (center MHz), with the
// usual non-overlapping picks first.
inline constexpr std::array<int, 38> kChannelCentersMhz = {
    2412, 2437, 2462, 5180, 5200, 5220, 5240, 5745, 5765, 5785, 2417, 2422, 2427, 2432,
    2442, 2447, 2452, 2457, 2467, 2472, 5260, 5280, 5300, 5320, 5500, 5520, 5540, 5560,
    5580, 5600, 5620, 5640, 5660, 5680, 5700, 5720, 5805, 5825};

inline bool is_valid_channel(int mhz) {
  return mhz == 2484 || std::find(kChannelCentersMhz.begin(), kChannelCentersMhz.end(), mhz) !=
                            kChannelCentersMhz.end();
}

// Ring: APs roughly evenly spaced on a circle around the workstation.
// Box: APs uniform in a rectangle centered on the workstation.
enum class ApLayout { kRing, kBox };

inline ApLayout parse_ap_layout(const std::string& s) {
  if (s == "ring") return ApLayout::kRing;
  if (s == "box") return ApLayout::kBox;
  fail(ErrorCode::kConfig, "ap_layout must be ring or box");
}

struct SimConfig {
  int ap_count = 10;
  Rect bounds{30.0, 20.0};
  double path_loss_exponent = 3.5;
  double shadowing_sigma_db = 1.0;
  double sensitivity_floor_dbm = -95.0;
  double ref_power_dbm = -40.0;
  ZoneGrid zone_grid{3, 3};
  double threshold_ft = 7.0;
  double gray_gap_ft = 0.5;
  // Defaults to (width/3, height/3) when unset.
  std::optional<Point> workstation;
  ApLayout ap_layout = ApLayout::kRing;
  double ap_ring_radius_m = 3.5;
  // Extent of the box layout.
  double ap_spread_width_m = 9.0;
  double ap_spread_height_m = 6.0;
  double placement_jitter_m = 0.1;
  std::uint64_t seed = 42;
  int n_authentic = 2442;
  int n_unauthorized = 2383;

  static SimConfig from(const KeyValueConfig& kv) {
    SimConfig c;
    c.ap_count = static_cast<int>(kv.get_int("ap_count", c.ap_count));
    auto [w, h] = kv.get_pair("bounds_m", {c.bounds.width, c.bounds.height});
    c.bounds = {w, h};
    c.path_loss_exponent = kv.get_double("path_loss_exponent", c.path_loss_exponent);
    c.shadowing_sigma_db = kv.get_double("shadowing_sigma_db", c.shadowing_sigma_db);
    c.sensitivity_floor_dbm = kv.get_double("sensitivity_floor_dbm", c.sensitivity_floor_dbm);
    c.ref_power_dbm = kv.get_double("ref_power_dbm", c.ref_power_dbm);
    auto [cols, rows] = kv.get_pair("zone_grid", {3, 3});
    c.zone_grid = {static_cast<int>(cols), static_cast<int>(rows)};
    c.threshold_ft = kv.get_double("threshold_ft", c.threshold_ft);
    c.gray_gap_ft = kv.get_double("gray_gap_ft", c.gray_gap_ft);
    if (kv.has("workstation_m")) {
      auto [x, y] = kv.get_pair("workstation_m", {0, 0});
      c.workstation = Point{x, y};
    }
    if (auto v = kv.get("ap_layout")) c.ap_layout = parse_ap_layout(*v);
    c.ap_ring_radius_m = kv.get_double("ap_ring_radius_m", c.ap_ring_radius_m);
    auto [sw, sh] = kv.get_pair("ap_spread_m", {c.ap_spread_width_m, c.ap_spread_height_m});
    c.ap_spread_width_m = sw;
    c.ap_spread_height_m = sh;
    c.placement_jitter_m = kv.get_double("placement_jitter_m", c.placement_jitter_m);
    c.seed = static_cast<std::uint64_t>(kv.get_int("seed", static_cast<std::int64_t>(c.seed)));
    c.n_authentic = static_cast<int>(kv.get_int("n_authentic", c.n_authentic));
    c.n_unauthorized = static_cast<int>(kv.get_int("n_unauthorized", c.n_unauthorized));
    return c;
  }

  Point resolved_workstation() const {
    return workstation.value_or(Point{bounds.width / 3.0, bounds.height / 3.0});
  }
};

inline int zone_of(const Environment& env, Point p) {
  const auto& g = env.zone_grid;
  const double cw = env.bounds.width / g.cols;
  const double ch = env.bounds.height / g.rows;
  const int col = std::clamp(static_cast<int>(p.x / cw), 0, g.cols - 1);
  const int row = std::clamp(static_cast<int>(p.y / ch), 0, g.rows - 1);
  return row * g.cols + col + 1;
}

inline Environment build_environment(const SimConfig& config, std::uint64_t seed) {
  if (config.ap_count < 1) fail(ErrorCode::kConfig, "ap_count must be at least 1");
  if (config.ap_count > static_cast<int>(kChannelCentersMhz.size())) {
    fail(ErrorCode::kConfig, "ap_count exceeds the number of distinct channels");
  }
  if (!(config.bounds.width > 0.0) || !(config.bounds.height > 0.0)) {
    fail(ErrorCode::kConfig, "bounds must have positive width and height");
  }
  if (config.path_loss_exponent < 1.5 || config.path_loss_exponent > 5.0) {
    fail(ErrorCode::kConfig, "path_loss_exponent must lie in [1.5, 5.0]");
  }
  if (config.shadowing_sigma_db < 0.0) fail(ErrorCode::kConfig, "shadowing_sigma_db must be >= 0");
  if (!(config.sensitivity_floor_dbm < -60.0)) {
    fail(ErrorCode::kConfig, "sensitivity_floor_dbm must be below -60");
  }
  if (config.ref_power_dbm < -50.0 || config.ref_power_dbm > -20.0) {
    fail(ErrorCode::kConfig, "ref_power_dbm must lie in [-50, -20]");
  }
  if (config.zone_grid.cols < 1 || config.zone_grid.rows < 1) {
    fail(ErrorCode::kConfig, "zone_grid needs at least one column and row");
  }
  if (!(config.threshold_ft > 0.0) || config.gray_gap_ft < 0.0) {
    fail(ErrorCode::kConfig, "threshold_ft must be positive and gray_gap_ft non-negative");
  }
  const Point ws = config.resolved_workstation();
  if (!config.bounds.contains(ws)) fail(ErrorCode::kConfig, "workstation lies outside bounds");
  if (!(config.ap_ring_radius_m > 0.0)) fail(ErrorCode::kConfig, "ap_ring_radius_m must be positive");

  Environment env;
  env.bounds = config.bounds;
  env.propagation = {config.path_loss_exponent, config.shadowing_sigma_db, 1.0};
  env.sensitivity_floor_dbm = config.sensitivity_floor_dbm;
  env.zone_grid = config.zone_grid;
  env.workstation = ws;
  env.placement_jitter_m = config.placement_jitter_m;
  env.threshold_m = feet_to_meters(config.threshold_ft);
  env.unauthorized_min_m = feet_to_meters(config.threshold_ft + config.gray_gap_ft);

  Rng rng(seed);
  Rng pos_rng = rng.fork(1);
  Rng chan_rng = rng.fork(2);
  Rng mac_rng = rng.fork(3);

  const double x0 = std::max(0.0, ws.x - config.ap_spread_width_m / 2.0);
  const double x1 = std::min(config.bounds.width, ws.x + config.ap_spread_width_m / 2.0);
  const double y0 = std::max(0.0, ws.y - config.ap_spread_height_m / 2.0);
  const double y1 = std::min(config.bounds.height, ws.y + config.ap_spread_height_m / 2.0);

  std::vector<int> channels(kChannelCentersMhz.begin(), kChannelCentersMhz.begin() + config.ap_count);
  chan_rng.shuffle(channels.begin(), channels.end());

  std::set<std::uint64_t> used_macs;
  for (int i = 0; i < config.ap_count; ++i) {
    AccessPoint ap;
    ap.ap_id = i + 1;
    ap.ssid = "lab-ap-" + std::string(i + 1 < 10 ? "0" : "") + std::to_string(i + 1);
    std::uint64_t mac;
    do {
      // Locally administered, unicast.
      mac = (mac_rng.next_u64() & 0xffffffffffffULL);
      mac = (mac & ~(0x01ULL << 40)) | (0x02ULL << 40);
    } while (!used_macs.insert(mac).second);
    ap.bssid = mac;
    ap.frequency_mhz = channels[static_cast<std::size_t>(i)];
    if (config.ap_layout == ApLayout::kRing) {
      const double slot = (i + pos_rng.uniform(-0.3, 0.3)) / config.ap_count;
      const double theta = 2.0 * std::numbers::pi * slot;
      const double r = config.ap_ring_radius_m * pos_rng.uniform(0.9, 1.1);
      ap.position = {std::clamp(ws.x + r * std::cos(theta), 0.0, config.bounds.width),
                     std::clamp(ws.y + r * std::sin(theta), 0.0, config.bounds.height)};
    } else {
      ap.position = {pos_rng.uniform(x0, x1), pos_rng.uniform(y0, y1)};
    }
    ap.ref_power_dbm = config.ref_power_dbm;
    env.aps.push_back(std::move(ap));
  }
  return env;
}

inline const AccessPoint* find_ap_by_ssid(const Environment& env, const std::string& ssid) {
  for (const auto& ap : env.aps) {
    if (ap.ssid == ssid) return &ap;
  }
  return nullptr;
}

}  // namespace proxauth::rfsim
