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
#include <optional>
#include <string>
#include <vector>

namespace proxauth::rfsim {

inline constexpr double kMetersPerFoot = 0.3048;

constexpr double feet_to_meters(double ft) { return ft * kMetersPerFoot; }

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Rect {
  double width = 0.0;
  double height = 0.0;

  bool contains(Point p) const { return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height; }
  double diagonal() const { return std::hypot(width, height); }
  double area() const { return width * height; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct AccessPoint {
  int ap_id = 0;
  std::string ssid;
  std::uint64_t bssid = 0;  // low 48 bits
  int frequency_mhz = 0;
  Point position;
  double ref_power_dbm = -40.0;

  friend bool operator==(const AccessPoint&, const AccessPoint&) = default;
};

enum class DeviceRole { kLogin, kMobile };

inline const char* to_string(DeviceRole r) { return r == DeviceRole::kLogin ? "login" : "mobile"; }

// The RPi column of the dataset: 1 = login device, 2 = mobile device.
inline int rpi_code(DeviceRole r) { return r == DeviceRole::kLogin ? 1 : 2; }

struct DevicePose {
  std::string device_id;
  DeviceRole role = DeviceRole::kLogin;
  Point position;
};

struct ZoneGrid {
  int cols = 3;
  int rows = 3;

  friend bool operator==(const ZoneGrid&, const ZoneGrid&) = default;
};

struct PropagationModel {
  double path_loss_exponent = 3.5;
  double shadowing_sigma_db = 1.0;
  double reference_distance_m = 1.0;
};

struct Environment {
  std::vector<AccessPoint> aps;
  Rect bounds;
  PropagationModel propagation;
  double sensitivity_floor_dbm = -95.0;
  ZoneGrid zone_grid;
  // Where the user's pair of devices normally sits; placements are drawn around it.
  Point workstation;
  double placement_jitter_m = 0.1;
  double threshold_m = feet_to_meters(7.0);
  double unauthorized_min_m = feet_to_meters(7.5);
};

struct BeaconObservation {
  int ap_id = 0;
  std::string ssid;
  std::uint64_t bssid = 0;
  int frequency_mhz = 0;
  double rssi_dbm = 0.0;
  std::string observer;
  double t = 0.0;

  friend bool operator==(const BeaconObservation&, const BeaconObservation&) = default;
};

struct ScanReport {
  std::string device_id;
  DeviceRole role = DeviceRole::kLogin;
  double t = 0.0;
  // Zone id of the observing device, when the client knows it.
  std::optional<int> location;
  std::vector<BeaconObservation> observations;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

inline std::string format_bssid(std::uint64_t bssid) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(17);
  for (int i = 5; i >= 0; --i) {
    const auto byte = static_cast<unsigned>((bssid >> (8 * i)) & 0xff);
    out += kHex[byte >> 4];
    out += kHex[byte & 0xf];
    if (i) out += ':';
  }
  return out;
}

inline std::optional<std::uint64_t> parse_bssid(const std::string& s) {
  if (s.size() != 17) return std::nullopt;
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (i % 3 == 2) {
      if (c != ':') return std::nullopt;
      continue;
    }
    int nib;
    if (c >= '0' && c <= '9') nib = c - '0';
    else if (c >= 'a' && c <= 'f') nib = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') nib = c - 'A' + 10;
    else return std::nullopt;
    v = (v << 4) | static_cast<std::uint64_t>(nib);
  }
  return v;
}

}  // namespace proxauth::rfsim
