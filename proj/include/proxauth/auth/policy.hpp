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

#include <string>
#include <vector>

#include "proxauth/auth/crypto.hpp"
#include "proxauth/config.hpp"
#include "proxauth/error.hpp"
#include "proxauth/ml/model.hpp"

namespace proxauth::auth {

// kMajority pools both scans' rows; kPerDevice takes a majority within each
// scan and requires both to pass; kAllPositive requires every pooled row.
enum class Aggregation { kMajority, kPerDevice, kAllPositive };

inline const char* to_string(Aggregation a) {
  switch (a) {
    case Aggregation::kMajority: return "majority";
    case Aggregation::kPerDevice: return "per_device";
    case Aggregation::kAllPositive: return "all_positive";
  }
  return "unknown";
}

inline Aggregation parse_aggregation(const std::string& s) {
  if (s == "majority") return Aggregation::kMajority;
  if (s == "per_device") return Aggregation::kPerDevice;
  if (s == "all_positive") return Aggregation::kAllPositive;
  fail(ErrorCode::kConfig, "aggregation must be majority, per_device or all_positive");
}

struct AuthPolicy {
  int min_overlap_aps = 3;
  double recheck_interval_s = 30.0;
  ml::Algo decision_model = ml::Algo::kDT;
  std::vector<ml::Algo> continuous_ensemble{ml::kAllAlgos.begin(), ml::kAllAlgos.end()};
  Aggregation aggregation = Aggregation::kPerDevice;
  double pending_ttl_s = 60.0;
  double otp_ttl_s = 300.0;
  int otp_digits = 6;
  int otp_rate_limit = 3;
  double otp_rate_window_s = 900.0;
  int otp_max_attempts = 5;
  // Zone used for rows whose scan report carries no location.
  int default_location = 1;
  HashCost hash_cost = HashCost::interactive();

  void validate() const {
    if (min_overlap_aps < 1) fail(ErrorCode::kConfig, "min_overlap_aps must be at least 1");
    if (recheck_interval_s < 1.0) fail(ErrorCode::kConfig, "recheck_interval_s must be at least 1 s");
    if (continuous_ensemble.empty()) fail(ErrorCode::kConfig, "continuous_ensemble must not be empty");
    if (pending_ttl_s <= 0 || otp_ttl_s <= 0) fail(ErrorCode::kConfig, "TTLs must be positive");
    if (otp_digits < 4 || otp_digits > 12) fail(ErrorCode::kConfig, "otp_digits must lie in [4, 12]");
    if (otp_rate_limit < 1 || otp_rate_window_s <= 0) fail(ErrorCode::kConfig, "invalid OTP rate limit");
    if (otp_max_attempts < 1) fail(ErrorCode::kConfig, "otp_max_attempts must be at least 1");
  }

  static AuthPolicy from(const KeyValueConfig& kv) {
    AuthPolicy p;
    p.min_overlap_aps = static_cast<int>(kv.get_int("min_overlap_aps", p.min_overlap_aps));
    p.recheck_interval_s = kv.get_double("recheck_interval_s", p.recheck_interval_s);
    if (auto v = kv.get("decision_model")) p.decision_model = ml::parse_algo(*v);
    if (auto v = kv.get("continuous_ensemble")) p.continuous_ensemble = ml::parse_algo_list(*v);
    if (auto v = kv.get("aggregation")) p.aggregation = parse_aggregation(*v);
    p.pending_ttl_s = kv.get_double("pending_ttl_s", p.pending_ttl_s);
    p.otp_ttl_s = kv.get_double("otp_ttl_s", p.otp_ttl_s);
    p.otp_digits = static_cast<int>(kv.get_int("otp_digits", p.otp_digits));
    p.otp_rate_limit = static_cast<int>(kv.get_int("otp_rate_limit", p.otp_rate_limit));
    p.otp_rate_window_s = kv.get_double("otp_rate_window_s", p.otp_rate_window_s);
    p.otp_max_attempts = static_cast<int>(kv.get_int("otp_max_attempts", p.otp_max_attempts));
    p.default_location = static_cast<int>(kv.get_int("default_location", p.default_location));
    if (auto v = kv.get("hash_cost")) p.hash_cost = HashCost::parse(*v);
    p.validate();
    return p;
  }
};

}  // namespace proxauth::auth
