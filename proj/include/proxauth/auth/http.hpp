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

#include <optional>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "proxauth/auth/service.hpp"
#include "proxauth/auth/wire.hpp"

namespace proxauth::auth {

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAuthFailed: return 401;
    case ErrorCode::kConflict:
    case ErrorCode::kInvalidState: return 409;
    case ErrorCode::kExpired: return 410;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kTooManyRequests: return 429;
    case ErrorCode::kValidation:
    case ErrorCode::kIncomplete:
    case ErrorCode::kSchema:
    case ErrorCode::kConfig: return 400;
    default: return 500;
  }
}

inline json error_body(const std::string& code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

inline json session_to_json(const Session& s) {
  json log = json::array();
  for (const auto& e : s.check_log) {
    log.push_back({{"at", e.at}, {"event", e.event}, {"verdicts", e.verdicts}, {"note", e.note}});
  }
  return {{"session_id", s.session_id},
          {"username", s.username},
          {"started_at", s.started_at},
          {"last_check_at", s.last_check_at},
          {"next_check_at", s.next_check_at},
          {"status", to_string(s.status)},
          {"termination_reason", s.termination_reason},
          {"otp_fallback", s.otp_fallback},
          {"check_log", log}};
}

// Splits a {"scans": [...]} body into the login-role and mobile-role reports.
inline std::pair<std::optional<rfsim::ScanReport>, std::optional<rfsim::ScanReport>> scans_from_body(const json& body) {
  if (!body.is_object() || !body.contains("scans") || !body["scans"].is_array()) {
    fail(ErrorCode::kValidation, "body must be {\"scans\": [...]}");
  }
  std::optional<rfsim::ScanReport> login, mobile;
  for (const auto& j : body["scans"]) {
    auto r = scan_report_from_json(j);
    auto& slot = r.role == rfsim::DeviceRole::kLogin ? login : mobile;
    if (slot) fail(ErrorCode::kValidation, "more than one scan report for a role");
    slot = std::move(r);
  }
  return {std::move(login), std::move(mobile)};
}

// JSON-over-HTTP front end for an AuthService.
class AuthHttpServer {
 public:
  explicit AuthHttpServer(AuthService& service) : service_(service) { install_routes(); }

  httplib::Server& server() { return server_; }

  bool listen(const std::string& host, int port) { return server_.listen(host, port); }

  // Binds to an ephemeral port and returns it; pair with listen_after_bind().
  int bind_to_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() { server_.wait_until_ready(); }

 private:
  using Handler = std::function<json(const httplib::Request&, int&)>;

  void route_post(const std::string& pattern, Handler h) {
    server_.Post(pattern, [this, h](const httplib::Request& req, httplib::Response& res) { run(h, req, res); });
  }
  void route_get(const std::string& pattern, Handler h) {
    server_.Get(pattern, [this, h](const httplib::Request& req, httplib::Response& res) { run(h, req, res); });
  }

  static void run(const Handler& h, const httplib::Request& req, httplib::Response& res) {
    json out;
    int status = 200;
    try {
      out = h(req, status);
    } catch (const Error& e) {
      status = http_status(e.code());
      // Auth failures carry one fixed message whatever the cause.
      out = e.code() == ErrorCode::kAuthFailed ? error_body("auth_failed", kAuthFailedMessage)
                                               : error_body(std::string(to_string(e.code())), e.what());
    } catch (const json::exception& e) {
      status = 400;
      out = error_body("validation_error", std::string("malformed JSON: ") + e.what());
    } catch (const std::exception& e) {
      status = 500;
      out = error_body("internal", "internal error");
    }
    res.status = status;
    res.set_content(out.dump(), "application/json");
  }

  static json body_of(const httplib::Request& req) {
    auto j = json::parse(req.body.empty() ? std::string("{}") : req.body);
    if (!j.is_object()) fail(ErrorCode::kValidation, "body must be a JSON object");
    return j;
  }

  static std::string field(const json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_string()) fail(ErrorCode::kValidation, std::string("missing field: ") + name);
    return j[name].get<std::string>();
  }

  void install_routes() {
    route_post("/register", [this](const httplib::Request& req, int& status) {
      const auto b = body_of(req);
      RegisterRequest r;
      r.username = field(b, "username");
      r.password = field(b, "password");
      r.security_question = field(b, "security_question");
      r.answer = field(b, "answer");
      r.email = field(b, "email");
      r.login_device = field(b, "login_device");
      r.mobile_device = field(b, "mobile_device");
      const auto p = service_.register_user(r);
      status = 201;
      return json{{"username", p.username}, {"login_device", p.login_device}, {"mobile_device", p.mobile_device}};
    });

    route_post("/login", [this](const httplib::Request& req, int&) {
      const auto b = body_of(req);
      // Missing fields are treated like wrong credentials.
      if (!b.contains("username") || !b["username"].is_string() || !b.contains("password") ||
          !b["password"].is_string()) {
        fail(ErrorCode::kAuthFailed, kAuthFailedMessage);
      }
      const auto p = service_.login(b["username"].get<std::string>(), b["password"].get<std::string>());
      json reqs = json::array();
      for (const auto& s : p.scan_requests) reqs.push_back({{"device_id", s.device_id}, {"role", rfsim::to_string(s.role)}});
      return json{{"pending_id", p.pending_id}, {"expires_at", p.expiry}, {"scan_requests", reqs}};
    });

    route_post(R"(/auth/([0-9a-f]+)/scans)", [this](const httplib::Request& req, int& status) {
      const auto [login, mobile] = scans_from_body(body_of(req));
      const auto d = service_.submit_scans(req.matches[1], login, mobile);
      if (!d.granted) {
        status = 403;
        return error_body("access_denied", "access denied");
      }
      return json{{"granted", true}, {"session_id", d.session_id}, {"overlap", d.overlap.overlap}};
    });

    route_get(R"(/session/([0-9a-f]+))", [this](const httplib::Request& req, int&) {
      return session_to_json(service_.session(req.matches[1]));
    });

    route_post(R"(/session/([0-9a-f]+)/tick)", [this](const httplib::Request& req, int&) {
      const auto [login, mobile] = scans_from_body(body_of(req));
      if (!login || !mobile) fail(ErrorCode::kIncomplete, "both scan reports are required");
      const auto r = service_.tick(req.matches[1], *login, *mobile);
      json verdicts = json::object();
      for (const auto& [algo, v] : r.verdicts) verdicts[ml::to_string(algo)] = v.pass;
      return json{{"action", r.action == TickAction::kContinue ? "continue" : "terminate"},
                  {"next_check_at", r.next_check_at},
                  {"reason", r.reason},
                  {"verdicts", verdicts}};
    });

    route_post("/otp/request", [this](const httplib::Request& req, int& status) {
      const auto b = body_of(req);
      service_.request_otp(field(b, "username"), field(b, "answer"));
      status = 202;
      return json{{"status", "accepted"}, {"message", "if the details match, a code has been sent"}};
    });

    route_post("/otp/verify", [this](const httplib::Request& req, int&) {
      const auto b = body_of(req);
      if (!b.contains("username") || !b["username"].is_string() || !b.contains("code") || !b["code"].is_string()) {
        fail(ErrorCode::kAuthFailed, kAuthFailedMessage);
      }
      const auto s = service_.verify_otp(b["username"].get<std::string>(), b["code"].get<std::string>());
      return json{{"session_id", s.session_id}, {"otp_fallback", s.otp_fallback}};
    });
  }

  AuthService& service_;
  httplib::Server server_;
};

}  // namespace proxauth::auth
