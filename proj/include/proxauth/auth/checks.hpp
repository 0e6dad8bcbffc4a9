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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "proxauth/auth/policy.hpp"
#include "proxauth/ml/model.hpp"
#include "proxauth/rfsim/environment.hpp"
#include "proxauth/rfsim/types.hpp"

namespace proxauth::auth {

// Maps SSID strings seen on the air to the integer codes the models were
// trained with.
class ApCodebook {
 public:
  ApCodebook() = default;

  static ApCodebook from_environment(const rfsim::Environment& env) {
    ApCodebook b;
    for (const auto& ap : env.aps) b.add(ap.ssid, ap.ap_id);
    return b;
  }

  void add(const std::string& ssid, int code) { codes_[ssid] = code; }

  std::optional<int> code(const std::string& ssid) const {
    auto it = codes_.find(ssid);
    if (it == codes_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return codes_.size(); }

 private:
  std::map<std::string, int> codes_;
};

struct OverlapResult {
  bool pass = false;
  int overlap = 0;
};

// Counts (SSID, BSSID) pairs seen by both devices.
inline OverlapResult overlap_check(const rfsim::ScanReport& a, const rfsim::ScanReport& b, int min_overlap) {
  if (min_overlap < 1) fail(ErrorCode::kConfig, "min_overlap must be at least 1");
  std::set<std::pair<std::string, std::uint64_t>> seen;
  for (const auto& o : a.observations) seen.emplace(o.ssid, o.bssid);
  std::set<std::pair<std::string, std::uint64_t>> common;
  for (const auto& o : b.observations) {
    if (seen.count({o.ssid, o.bssid})) common.emplace(o.ssid, o.bssid);
  }
  const int n = static_cast<int>(common.size());
  return {n >= min_overlap, n};
}

// Label-free feature rows for every observation in a scan whose SSID the
// codebook knows.
inline std::vector<ml::FeatureVector> encode_rows(const rfsim::ScanReport& report, const ApCodebook& codebook,
                                                  int default_location) {
  std::vector<ml::FeatureVector> rows;
  const int location = report.location.value_or(default_location);
  for (const auto& o : report.observations) {
    const auto code = codebook.code(o.ssid);
    if (!code) continue;
    rows.push_back({static_cast<double>(rfsim::rpi_code(report.role)), static_cast<double>(*code),
                    static_cast<double>(o.frequency_mhz), static_cast<double>(std::lround(o.rssi_dbm)),
                    static_cast<double>(location)});
  }
  return rows;
}

struct ProximityResult {
  bool pass = false;
  int positive_rows = 0;
  int total_rows = 0;
  std::string reason;  // empty on pass
};

inline ProximityResult aggregate_rows(const ml::TrainedModel& model, const std::vector<ml::FeatureVector>& rows,
                                      Aggregation aggregation) {
  ProximityResult r;
  r.total_rows = static_cast<int>(rows.size());
  if (rows.empty()) {
    r.reason = "no_signal";
    return r;
  }
  for (const auto& v : rows) r.positive_rows += model.predict_label(v);
  if (aggregation == Aggregation::kAllPositive) {
    r.pass = r.positive_rows == r.total_rows;
  } else {
    r.pass = 2 * r.positive_rows > r.total_rows;
  }
  if (!r.pass) r.reason = "not_colocated";
  return r;
}

inline ProximityResult proximity_check(const ml::TrainedModel& model, const rfsim::ScanReport& a,
                                       const rfsim::ScanReport& b, const AuthPolicy& policy,
                                       const ApCodebook& codebook) {
  auto rows = encode_rows(a, codebook, policy.default_location);
  auto more = encode_rows(b, codebook, policy.default_location);
  if (policy.aggregation == Aggregation::kPerDevice) {
    const auto ra = aggregate_rows(model, rows, Aggregation::kMajority);
    const auto rb = aggregate_rows(model, more, Aggregation::kMajority);
    ProximityResult r;
    r.positive_rows = ra.positive_rows + rb.positive_rows;
    r.total_rows = ra.total_rows + rb.total_rows;
    r.pass = ra.pass && rb.pass;
    if (!r.pass) r.reason = !ra.reason.empty() ? ra.reason : rb.reason;
    return r;
  }
  rows.insert(rows.end(), more.begin(), more.end());
  return aggregate_rows(model, rows, policy.aggregation);
}

}  // namespace proxauth::auth
