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
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "proxauth/error.hpp"

namespace proxauth::ml {

inline constexpr std::size_t kNumFeatures = 5;

// Feature order is fixed: [RPi, SSID, Frequency, RSSI, Location].
enum Feature : std::size_t { kRpi = 0, kSsid = 1, kFrequency = 2, kRssi = 3, kLocation = 4 };

inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "RPi", "SSID", "Frequency", "RSSI", "Location"};

using FeatureVector = std::array<double, kNumFeatures>;

struct Sample {
  int rpi = 1;  // 1 = login device, 2 = mobile device
  int ssid_code = 0;
  int frequency_mhz = 0;
  int rssi_dbm = 0;
  int location = 0;
  int label = 0;  // 1 = authentic (co-located), 0 = unauthorized

  FeatureVector features() const {
    return {static_cast<double>(rpi), static_cast<double>(ssid_code),
            static_cast<double>(frequency_mhz), static_cast<double>(rssi_dbm),
            static_cast<double>(location)};
  }

  friend bool operator==(const Sample&, const Sample&) = default;
};

// Real-valued design matrix. Attacks perturb features into non-integer values,
// so models consume this rather than Sample rows.
struct LabeledMatrix {
  std::vector<FeatureVector> x;
  std::vector<int> y;

  std::size_t size() const { return x.size(); }
  bool empty() const { return x.empty(); }
};

struct Dataset {
  std::vector<Sample> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }

  std::size_t count_label(int label) const {
    std::size_t n = 0;
    for (const auto& r : rows) n += (r.label == label);
    return n;
  }

  LabeledMatrix matrix() const {
    LabeledMatrix m;
    m.x.reserve(rows.size());
    m.y.reserve(rows.size());
    for (const auto& r : rows) {
      m.x.push_back(r.features());
      m.y.push_back(r.label);
    }
    return m;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Row order that depends only on row contents, used by trainers that must not
// depend on input order.
inline std::vector<std::size_t> canonical_order(const std::vector<FeatureVector>& x, const std::vector<int>& y) {
  std::vector<std::size_t> idx(x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });
  return idx;
}

inline void validate(const Sample& s) {
  if (s.label != 0 && s.label != 1) fail(ErrorCode::kSchema, "label must be 0 or 1");
  if (s.rpi != 1 && s.rpi != 2) fail(ErrorCode::kSchema, "RPi must be 1 or 2");
}

inline constexpr std::string_view kCsvHeader = "RPi,SSID,Frequency,RSSI,Location,Label";

inline std::string to_csv(const Dataset& d) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : d.rows) {
    out += std::to_string(r.rpi) + ',' + std::to_string(r.ssid_code) + ',' +
           std::to_string(r.frequency_mhz) + ',' + std::to_string(r.rssi_dbm) + ',' +
           std::to_string(r.location) + ',' + std::to_string(r.label) + '\n';
  }
  return out;
}

inline Dataset from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kSchema, "dataset CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) fail(ErrorCode::kSchema, "unexpected dataset CSV header: " + line);
  Dataset d;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<int, 6> v{};
    std::istringstream ls(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ls, cell, ',')) {
      if (i >= v.size()) fail(ErrorCode::kSchema, "too many columns on line " + std::to_string(line_no));
      try {
        std::size_t used = 0;
        v[i] = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        fail(ErrorCode::kSchema, "non-integer cell on line " + std::to_string(line_no) + ": " + cell);
      }
      ++i;
    }
    if (i != v.size()) fail(ErrorCode::kSchema, "expected 6 columns on line " + std::to_string(line_no));
    Sample s{v[0], v[1], v[2], v[3], v[4], v[5]};
    validate(s);
    d.rows.push_back(s);
  }
  return d;
}

inline std::string to_jsonl(const Dataset& d) {
  std::string out;
  for (const auto& r : d.rows) {
    nlohmann::ordered_json j;
    j["RPi"] = r.rpi;
    j["SSID"] = r.ssid_code;
    j["Frequency"] = r.frequency_mhz;
    j["RSSI"] = r.rssi_dbm;
    j["Location"] = r.location;
    j["Label"] = r.label;
    out += j.dump() + '\n';
  }
  return out;
}

inline Dataset from_jsonl(std::string_view text) {
  Dataset d;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Sample s{j.at("RPi").get<int>(),      j.at("SSID").get<int>(),
               j.at("Frequency").get<int>(), j.at("RSSI").get<int>(),
               j.at("Location").get<int>(),  j.at("Label").get<int>()};
      validate(s);
      d.rows.push_back(s);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kSchema, std::string("bad dataset JSON line: ") + e.what());
    }
  }
  return d;
}

inline bool has_suffix(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline Dataset load_dataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot open dataset: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  if (has_suffix(path, ".jsonl") || has_suffix(path, ".json")) return from_jsonl(ss.str());
  return from_csv(ss.str());
}

inline void save_dataset(const Dataset& d, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot write dataset: " + path);
  f << ((has_suffix(path, ".jsonl") || has_suffix(path, ".json")) ? to_jsonl(d) : to_csv(d));
}

}  // namespace proxauth::ml
