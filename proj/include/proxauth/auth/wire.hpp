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

#include <set>
#include <string>

#include <json.hpp>

#include "proxauth/error.hpp"
#include "proxauth/rfsim/types.hpp"

namespace proxauth::auth {

using nlohmann::json;

inline rfsim::DeviceRole parse_role(const std::string& s) {
  if (s == "login") return rfsim::DeviceRole::kLogin;
  if (s == "mobile") return rfsim::DeviceRole::kMobile;
  fail(ErrorCode::kValidation, "role must be \"login\" or \"mobile\"");
}

inline json scan_report_to_json(const rfsim::ScanReport& r) {
  json obs = json::array();
  for (const auto& o : r.observations) {
    obs.push_back({{"ssid", o.ssid},
                   {"bssid", rfsim::format_bssid(o.bssid)},
                   {"frequency_mhz", o.frequency_mhz},
                   {"rssi_dbm", o.rssi_dbm}});
  }
  json j = {{"device_id", r.device_id}, {"role", rfsim::to_string(r.role)}, {"t", r.t}, {"observations", obs}};
  if (r.location) j["location"] = *r.location;
  return j;
}

// Strict decoder for client-submitted scans. Observer-side fields that the
// wire does not carry (ap_id, observer, t) are filled from the report.
inline rfsim::ScanReport scan_report_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::kValidation, "scan report must be an object");
  rfsim::ScanReport r;
  try {
    r.device_id = j.at("device_id").get<std::string>();
    r.role = parse_role(j.at("role").get<std::string>());
    r.t = j.at("t").get<double>();
    if (j.contains("location") && !j["location"].is_null()) r.location = j["location"].get<int>();
    const auto& obs = j.at("observations");
    if (!obs.is_array()) fail(ErrorCode::kValidation, "observations must be an array");
    std::set<std::uint64_t> seen;
    for (const auto& o : obs) {
      rfsim::BeaconObservation b;
      b.ssid = o.at("ssid").get<std::string>();
      const auto bssid = rfsim::parse_bssid(o.at("bssid").get<std::string>());
      if (!bssid) fail(ErrorCode::kValidation, "malformed bssid");
      if (!seen.insert(*bssid).second) fail(ErrorCode::kValidation, "duplicate bssid in one scan");
      b.bssid = *bssid;
      b.frequency_mhz = o.at("frequency_mhz").get<int>();
      b.rssi_dbm = o.at("rssi_dbm").get<double>();
      b.observer = r.device_id;
      b.t = r.t;
      r.observations.push_back(std::move(b));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kValidation, std::string("malformed scan report: ") + e.what());
  }
  if (r.device_id.empty()) fail(ErrorCode::kValidation, "device_id must not be empty");
  return r;
}

}  // namespace proxauth::auth
