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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "proxauth/error.hpp"

namespace proxauth {

// Flat key/value document: one `key = value` per line, `#` starts a comment.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::string_view text) {
    KeyValueConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto stripped = trim(line);
      if (stripped.empty()) continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos) {
        fail(ErrorCode::kConfig, "config line " + std::to_string(line_no) + ": expected key = value");
      }
      auto key = trim(stripped.substr(0, eq));
      auto value = trim(stripped.substr(eq + 1));
      if (key.empty()) fail(ErrorCode::kConfig, "config line " + std::to_string(line_no) + ": empty key");
      cfg.values_[std::move(key)] = std::move(value);
    }
    return cfg;
  }

  static KeyValueConfig load(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorCode::kIo, "cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  // Keys from `other` win.
  void merge(const KeyValueConfig& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
  }

  std::optional<std::string> get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
  }

  double get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    return v ? to_double(key, *v) : fallback;
  }

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || p != v->data() + v->size()) {
      fail(ErrorCode::kConfig, "config key '" + key + "': not an integer: " + *v);
    }
    return out;
  }

  // "AxB" or "A,B" pairs, e.g. bounds_m = 30x20.
  std::pair<double, double> get_pair(const std::string& key, std::pair<double, double> fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    const auto sep = v->find_first_of("x,");
    if (sep == std::string::npos) fail(ErrorCode::kConfig, "config key '" + key + "': expected AxB");
    return {to_double(key, trim(v->substr(0, sep))), to_double(key, trim(v->substr(sep + 1)))};
  }

  std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    std::vector<std::string> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto t = trim(item);
      if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  static std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
  }

  static double to_double(const std::string& key, const std::string& s) {
    try {
      std::size_t used = 0;
      const double d = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return d;
    } catch (const std::exception&) {
      fail(ErrorCode::kConfig, "config key '" + key + "': not a number: " + s);
    }
  }

  std::map<std::string, std::string> values_;
};

}  // namespace proxauth
