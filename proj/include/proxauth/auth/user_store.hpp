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

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "proxauth/error.hpp"

namespace proxauth::auth {

struct UserProfile {
  std::string username;
  std::string password_verifier;
  std::string security_question;
  std::string answer_verifier;
  std::string email;
  std::string login_device;
  std::string mobile_device;
  double created_at = 0.0;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

inline nlohmann::ordered_json profile_to_json(const UserProfile& p) {
  nlohmann::ordered_json j;
  j["username"] = p.username;
  j["password_verifier"] = p.password_verifier;
  j["security_question"] = p.security_question;
  j["answer_verifier"] = p.answer_verifier;
  j["email"] = p.email;
  j["login_device"] = p.login_device;
  j["mobile_device"] = p.mobile_device;
  j["created_at"] = p.created_at;
  return j;
}

inline UserProfile profile_from_json(const nlohmann::json& j) {
  return UserProfile{j.at("username").get<std::string>(),      j.at("password_verifier").get<std::string>(),
                     j.at("security_question").get<std::string>(), j.at("answer_verifier").get<std::string>(),
                     j.at("email").get<std::string>(),         j.at("login_device").get<std::string>(),
                     j.at("mobile_device").get<std::string>(),  j.at("created_at").get<double>()};
}

class UserStore {
 public:
  virtual ~UserStore() = default;
  // Inserts a new profile; throws Conflict when the username is taken.
  virtual void insert(const UserProfile& profile) = 0;
  virtual std::optional<UserProfile> find(const std::string& username) const = 0;
  virtual std::size_t size() const = 0;
};

class MemoryUserStore : public UserStore {
 public:
  void insert(const UserProfile& profile) override {
    std::unique_lock lock(mu_);
    if (!users_.emplace(profile.username, profile).second) {
      fail(ErrorCode::kConflict, "username already registered");
    }
    on_insert(profile);
  }

  std::optional<UserProfile> find(const std::string& username) const override {
    std::shared_lock lock(mu_);
    auto it = users_.find(username);
    if (it == users_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const override {
    std::shared_lock lock(mu_);
    return users_.size();
  }

 protected:
  // Called with the write lock held.
  virtual void on_insert(const UserProfile&) {}

  mutable std::shared_mutex mu_;
  std::map<std::string, UserProfile> users_;
};

// One JSON profile per line, appended on every write. On load the last line
// for a username wins.
class JsonlUserStore final : public MemoryUserStore {
 public:
  explicit JsonlUserStore(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        auto p = profile_from_json(nlohmann::json::parse(line));
        users_[p.username] = std::move(p);
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::kSchema, "user store line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    out_.open(path_, std::ios::app | std::ios::binary);
    if (!out_) fail(ErrorCode::kIo, "cannot open user store for append: " + path_);
  }

  const std::string& path() const { return path_; }

 private:
  void on_insert(const UserProfile& profile) override {
    out_ << profile_to_json(profile).dump() << '\n';
    out_.flush();
  }

  std::string path_;
  std::ofstream out_;
};

}  // namespace proxauth::auth
