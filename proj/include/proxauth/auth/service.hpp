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
#include <cctype>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "proxauth/auth/checks.hpp"
#include "proxauth/auth/clock.hpp"
#include "proxauth/auth/crypto.hpp"
#include "proxauth/auth/mailer.hpp"
#include "proxauth/auth/policy.hpp"
#include "proxauth/auth/user_store.hpp"
#include "proxauth/error.hpp"
#include "proxauth/ml/model.hpp"

namespace proxauth::auth {

using ModelRegistry = std::map<ml::Algo, std::shared_ptr<const ml::TrainedModel>>;

inline constexpr const char* kAuthFailedMessage = "authentication failed";

struct RegisterRequest {
  std::string username;
  std::string password;
  std::string security_question;
  std::string answer;
  std::string email;
  std::string login_device;
  std::string mobile_device;
};

// A signal asking one of the user's devices to scan and report.
struct ScanRequest {
  std::string device_id;
  rfsim::DeviceRole role = rfsim::DeviceRole::kLogin;
};

struct PendingAuth {
  std::string pending_id;
  std::string username;
  double issued_at = 0.0;
  double expiry = 0.0;
  std::vector<ScanRequest> scan_requests;
  std::map<rfsim::DeviceRole, rfsim::ScanReport> received;
};

enum class SessionStatus { kActive, kTerminated };

inline const char* to_string(SessionStatus s) { return s == SessionStatus::kActive ? "active" : "terminated"; }

struct CheckEntry {
  double at = 0.0;
  std::string event;  // "granted", "continue", "terminated"
  std::map<std::string, bool> verdicts;
  std::string note;
};

struct Session {
  std::string session_id;
  std::string username;
  double started_at = 0.0;
  double last_check_at = 0.0;
  double next_check_at = 0.0;
  SessionStatus status = SessionStatus::kActive;
  std::string termination_reason;
  bool otp_fallback = false;
  std::vector<CheckEntry> check_log;
};

struct AuthDecision {
  bool granted = false;
  OverlapResult overlap;
  ProximityResult proximity;
  std::string session_id;
  std::string reason;  // empty when granted
};

struct DecisionRecord {
  double at = 0.0;
  std::string pending_id;
  std::string username;
  AuthDecision decision;
};

enum class TickAction { kContinue, kTerminate };

struct TickResult {
  TickAction action = TickAction::kTerminate;
  double next_check_at = 0.0;
  std::map<ml::Algo, ProximityResult> verdicts;
  std::string reason;
};

struct OtpChallenge {
  std::string username;
  std::string code;
  double issued_at = 0.0;
  double expiry = 0.0;
  bool used = false;
  int failed_attempts = 0;
};

// The authentication entity: credential check, overlap and proximity checks,
// sessions with continuous re-verification, and the OTP fallback.
class AuthService {
 public:
  AuthService(AuthPolicy policy, std::shared_ptr<UserStore> store, std::shared_ptr<Mailer> mailer,
              std::shared_ptr<const Clock> clock, ModelRegistry models, ApCodebook codebook)
      : policy_(std::move(policy)),
        store_(std::move(store)),
        mailer_(std::move(mailer)),
        clock_(std::move(clock)),
        models_(std::move(models)),
        codebook_(std::move(codebook)) {
    policy_.validate();
    if (!store_ || !mailer_ || !clock_) fail(ErrorCode::kConfig, "store, mailer and clock are required");
    require_model(policy_.decision_model);
    for (auto a : policy_.continuous_ensemble) require_model(a);
  }

  const AuthPolicy& policy() const { return policy_; }
  const ApCodebook& codebook() const { return codebook_; }
  const Clock& clock() const { return *clock_; }

  UserProfile register_user(const RegisterRequest& req) {
    validate_registration(req);
    UserProfile p;
    p.username = req.username;
    p.password_verifier = hash_secret(req.password, policy_.hash_cost);
    p.security_question = req.security_question;
    p.answer_verifier = hash_secret(normalize_answer(req.answer), policy_.hash_cost);
    p.email = req.email;
    p.login_device = req.login_device;
    p.mobile_device = req.mobile_device;
    p.created_at = clock_->now();
    store_->insert(p);
    return p;
  }

  std::optional<UserProfile> find_user(const std::string& username) const { return store_->find(username); }

  // Steps 1-2: validate credentials, then ask both devices to scan.
  PendingAuth login(const std::string& username, const std::string& password) {
    const auto user = store_->find(username);
    const bool ok = user ? verify_secret(user->password_verifier, password)
                         : (burn_verify(password), false);
    if (!ok) fail(ErrorCode::kAuthFailed, kAuthFailedMessage);

    PendingAuth pending;
    pending.pending_id = random_token();
    pending.username = username;
    pending.issued_at = clock_->now();
    pending.expiry = pending.issued_at + policy_.pending_ttl_s;
    pending.scan_requests = {{user->login_device, rfsim::DeviceRole::kLogin},
                             {user->mobile_device, rfsim::DeviceRole::kMobile}};
    std::lock_guard lock(pending_mu_);
    purge_expired_pendings_locked(pending.issued_at);
    pendings_[pending.pending_id] = pending;
    return pending;
  }

  // Steps 3-6. The pending flow is consumed by this call whatever the outcome.
  AuthDecision submit_scans(const std::string& pending_id, const std::optional<rfsim::ScanReport>& login_scan,
                            const std::optional<rfsim::ScanReport>& mobile_scan) {
    const double now = clock_->now();
    PendingAuth pending;
    {
      std::lock_guard lock(pending_mu_);
      auto it = pendings_.find(pending_id);
      if (it == pendings_.end()) fail(ErrorCode::kNotFound, "unknown pending authentication");
      pending = it->second;
      pendings_.erase(it);
    }
    if (now > pending.expiry) fail(ErrorCode::kExpired, "pending authentication expired");
    if (login_scan) pending.received[login_scan->role] = *login_scan;
    if (mobile_scan) pending.received[mobile_scan->role] = *mobile_scan;
    if (!login_scan || !mobile_scan) fail(ErrorCode::kIncomplete, "both scan reports are required");

    AuthDecision d;
    const auto user = store_->find(pending.username);
    if (!user || login_scan->role != rfsim::DeviceRole::kLogin || mobile_scan->role != rfsim::DeviceRole::kMobile ||
        login_scan->device_id != user->login_device || mobile_scan->device_id != user->mobile_device) {
      d.reason = "device_mismatch";
    } else {
      d.overlap = overlap_check(*login_scan, *mobile_scan, policy_.min_overlap_aps);
      if (!d.overlap.pass) {
        d.reason = "overlap";
      } else {
        d.proximity = proximity_check(*models_.at(policy_.decision_model), *login_scan, *mobile_scan, policy_,
                                      codebook_);
        if (!d.proximity.pass) d.reason = "proximity:" + d.proximity.reason;
      }
    }
    d.granted = d.reason.empty();
    if (d.granted) {
      Session s = new_session(pending.username, now, false);
      CheckEntry e{now, "granted", {{std::string(ml::to_string(policy_.decision_model)), true}}, ""};
      s.check_log.push_back(std::move(e));
      d.session_id = s.session_id;
      store_session(std::move(s));
    }
    {
      std::lock_guard lock(log_mu_);
      decisions_.push_back({now, pending_id, pending.username, d});
    }
    return d;
  }

  // One pass of the continuous loop: every ensemble model must still see the
  // devices as co-located, otherwise the session ends.
  TickResult tick(const std::string& session_id, const rfsim::ScanReport& login_scan,
                  const rfsim::ScanReport& mobile_scan) {
    auto state = find_session_state(session_id);
    std::lock_guard lock(state->mu);
    Session& s = state->session;
    if (s.status == SessionStatus::kTerminated) fail(ErrorCode::kInvalidState, "session is terminated");
    if (s.otp_fallback) fail(ErrorCode::kInvalidState, "continuous checks are disabled for OTP sessions");

    const double now = clock_->now();
    TickResult r;
    CheckEntry entry;
    entry.at = now;
    std::string negatives;
    for (auto algo : policy_.continuous_ensemble) {
      auto verdict = proximity_check(*models_.at(algo), login_scan, mobile_scan, policy_, codebook_);
      entry.verdicts[std::string(ml::to_string(algo))] = verdict.pass;
      if (!verdict.pass) {
        if (!negatives.empty()) negatives += ',';
        negatives += ml::to_string(algo);
      }
      r.verdicts[algo] = std::move(verdict);
    }
    s.last_check_at = now;
    if (negatives.empty()) {
      r.action = TickAction::kContinue;
      s.next_check_at = now + policy_.recheck_interval_s;
      r.next_check_at = s.next_check_at;
      entry.event = "continue";
    } else {
      r.action = TickAction::kTerminate;
      r.reason = "not co-located per " + negatives;
      s.status = SessionStatus::kTerminated;
      s.termination_reason = r.reason;
      s.next_check_at = 0.0;
      entry.event = "terminated";
      entry.note = r.reason;
    }
    s.check_log.push_back(std::move(entry));
    return r;
  }

  Session session(const std::string& session_id) const {
    auto state = find_session_state(session_id);
    std::lock_guard lock(state->mu);
    return state->session;
  }

  // User-initiated end of a session.
  void end_session(const std::string& session_id) {
    auto state = find_session_state(session_id);
    std::lock_guard lock(state->mu);
    Session& s = state->session;
    if (s.status == SessionStatus::kTerminated) fail(ErrorCode::kInvalidState, "session is terminated");
    s.status = SessionStatus::kTerminated;
    s.termination_reason = "ended by user";
    s.check_log.push_back({clock_->now(), "terminated", {}, s.termination_reason});
  }

  // Always returns normally for a well-formed request, whether or not the
  // user exists or the answer matched; only the rate limit is observable.
  void request_otp(const std::string& username, const std::string& answer) {
    const double now = clock_->now();
    {
      std::lock_guard lock(otp_mu_);
      auto& hits = otp_requests_[username];
      while (!hits.empty() && hits.front() <= now - policy_.otp_rate_window_s) hits.pop_front();
      if (static_cast<int>(hits.size()) >= policy_.otp_rate_limit) {
        fail(ErrorCode::kTooManyRequests, "too many OTP requests; try again later");
      }
      hits.push_back(now);
    }
    const auto user = store_->find(username);
    const bool ok = user ? verify_secret(user->answer_verifier, normalize_answer(answer))
                         : (burn_verify(answer), false);
    if (!ok) return;

    OtpChallenge c{username, random_digits(policy_.otp_digits), now, now + policy_.otp_ttl_s, false, 0};
    MailMessage m;
    m.to = user->email;
    m.subject = "Your one-time login code";
    m.body = "Your one-time code is " + c.code + ". It expires in " +
             std::to_string(static_cast<long long>(policy_.otp_ttl_s)) + " seconds.";
    m.data = {{"username", username}, {"code", c.code}, {"expires_at", c.expiry}};
    {
      std::lock_guard lock(otp_mu_);
      challenges_[username] = c;
    }
    mailer_->dispatch(m);
  }

  Session verify_otp(const std::string& username, const std::string& code) {
    const double now = clock_->now();
    {
      std::lock_guard lock(otp_mu_);
      auto it = challenges_.find(username);
      if (it == challenges_.end()) fail(ErrorCode::kAuthFailed, kAuthFailedMessage);
      OtpChallenge& c = it->second;
      const bool match = constant_time_equal(c.code, code);
      if (c.used || now > c.expiry || c.failed_attempts >= policy_.otp_max_attempts || !match) {
        if (!match) ++c.failed_attempts;
        fail(ErrorCode::kAuthFailed, kAuthFailedMessage);
      }
      c.used = true;
    }
    Session s = new_session(username, now, true);
    s.check_log.push_back({now, "granted", {}, "otp"});
    Session copy = s;
    store_session(std::move(s));
    return copy;
  }

  std::vector<DecisionRecord> decisions() const {
    std::lock_guard lock(log_mu_);
    return decisions_;
  }

  std::optional<OtpChallenge> challenge_for(const std::string& username) const {
    std::lock_guard lock(otp_mu_);
    auto it = challenges_.find(username);
    if (it == challenges_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t pending_count() const {
    std::lock_guard lock(pending_mu_);
    return pendings_.size();
  }

 private:
  struct SessionState {
    mutable std::mutex mu;
    Session session;
  };

  void require_model(ml::Algo a) const {
    auto it = models_.find(a);
    if (it == models_.end() || !it->second) {
      fail(ErrorCode::kConfig, "no trained model loaded for " + std::string(ml::to_string(a)));
    }
  }

  static std::string normalize_answer(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c)) || (!out.empty() && out.back() != ' ')) {
        out += std::isspace(static_cast<unsigned char>(c)) ? ' ' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
  }

  static void validate_registration(const RegisterRequest& r) {
    if (r.username.empty() || r.username.size() > 64) fail(ErrorCode::kValidation, "username must be 1-64 characters");
    for (char c : r.username) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-') {
        fail(ErrorCode::kValidation, "username may contain only letters, digits, '.', '_' and '-'");
      }
    }
    if (r.password.size() < 8) fail(ErrorCode::kValidation, "password must be at least 8 characters");
    if (r.security_question.empty() || normalize_answer(r.answer).empty()) {
      fail(ErrorCode::kValidation, "a security question and answer are required");
    }
    if (r.email.find('@') == std::string::npos) fail(ErrorCode::kValidation, "a valid email address is required");
    if (r.login_device.empty() || r.mobile_device.empty() || r.login_device == r.mobile_device) {
      fail(ErrorCode::kValidation, "two distinct device ids are required");
    }
  }

  // Spends the same hashing work as a real verification so unknown users are
  // not distinguishable by timing.
  void burn_verify(const std::string& secret) {
    std::call_once(dummy_once_, [this] { dummy_verifier_ = hash_secret(random_token(16), policy_.hash_cost); });
    (void)verify_secret(dummy_verifier_, secret);
  }

  Session new_session(const std::string& username, double now, bool otp) const {
    Session s;
    s.session_id = random_token();
    s.username = username;
    s.started_at = now;
    s.last_check_at = now;
    s.next_check_at = otp ? 0.0 : now + policy_.recheck_interval_s;
    s.otp_fallback = otp;
    return s;
  }

  void store_session(Session s) {
    auto state = std::make_shared<SessionState>();
    const auto id = s.session_id;
    state->session = std::move(s);
    std::unique_lock lock(sessions_mu_);
    sessions_[id] = std::move(state);
  }

  std::shared_ptr<SessionState> find_session_state(const std::string& id) const {
    std::shared_lock lock(sessions_mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) fail(ErrorCode::kNotFound, "unknown session");
    return it->second;
  }

  void purge_expired_pendings_locked(double now) {
    for (auto it = pendings_.begin(); it != pendings_.end();) {
      it = now > it->second.expiry + policy_.pending_ttl_s ? pendings_.erase(it) : std::next(it);
    }
  }

  AuthPolicy policy_;
  std::shared_ptr<UserStore> store_;
  std::shared_ptr<Mailer> mailer_;
  std::shared_ptr<const Clock> clock_;
  ModelRegistry models_;
  ApCodebook codebook_;

  mutable std::mutex pending_mu_;
  std::map<std::string, PendingAuth> pendings_;

  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<SessionState>> sessions_;

  mutable std::mutex otp_mu_;
  std::map<std::string, OtpChallenge> challenges_;
  std::map<std::string, std::deque<double>> otp_requests_;

  mutable std::mutex log_mu_;
  std::vector<DecisionRecord> decisions_;

  std::once_flag dummy_once_;
  std::string dummy_verifier_;
};

}  // namespace proxauth::auth
