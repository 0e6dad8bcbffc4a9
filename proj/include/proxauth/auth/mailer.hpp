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

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>

#include <json.hpp>

#include "proxauth/error.hpp"

namespace proxauth::auth {

struct MailMessage {
  std::string to;
  std::string subject;
  std::string body;
  // Structured copy of what the body conveys, for machine consumers.
  nlohmann::json data;
};

class Mailer {
 public:
  virtual ~Mailer() = default;
  virtual void dispatch(const MailMessage& message) = 0;
};

inline nlohmann::ordered_json mail_to_json(const MailMessage& m) {
  nlohmann::ordered_json j;
  j["to"] = m.to;
  j["subject"] = m.subject;
  j["body"] = m.body;
  j["data"] = m.data;
  return j;
}

class StdoutMailer final : public Mailer {
 public:
  explicit StdoutMailer(std::ostream& out = std::cout) : out_(out) {}

  void dispatch(const MailMessage& message) override {
    std::lock_guard lock(mu_);
    out_ << mail_to_json(message).dump() << std::endl;
  }

 private:
  std::mutex mu_;
  std::ostream& out_;
};

// Writes each message to <dir>/<seq>.json.
class SpoolMailer final : public Mailer {
 public:
  explicit SpoolMailer(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) fail(ErrorCode::kIo, "cannot create mail spool: " + dir_.string());
    std::uint64_t existing = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir_)) ++existing;
    next_ = existing;
  }

  void dispatch(const MailMessage& message) override {
    const auto seq = next_.fetch_add(1);
    char name[32];
    std::snprintf(name, sizeof name, "%08llu.json", static_cast<unsigned long long>(seq));
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) fail(ErrorCode::kIo, "cannot write spool file");
    f << mail_to_json(message).dump(2) << '\n';
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::atomic<std::uint64_t> next_{0};
};

}  // namespace proxauth::auth
