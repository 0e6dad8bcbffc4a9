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

#include <chrono>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "proxauth/config.hpp"
#include "proxauth/error.hpp"
#include "proxauth/version.hpp"

namespace proxauth::cli {

// Provenance record written next to every output file.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  KeyValueConfig config;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string tool_version = kVersion;
  double started_at = 0.0;
  double finished_at = 0.0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["argv"] = argv;
    j["config"] = config.values();
    j["seed"] = seed;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["tool_version"] = tool_version;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    return j;
  }

  static RunManifest from_json(const nlohmann::json& j) {
    RunManifest m;
    try {
      m.command = j.at("command").get<std::string>();
      m.argv = j.at("argv").get<std::vector<std::string>>();
      for (const auto& [k, v] : j.at("config").items()) m.config.set(k, v.get<std::string>());
      m.seed = j.at("seed").get<std::uint64_t>();
      m.inputs = j.at("inputs").get<std::vector<std::string>>();
      m.outputs = j.at("outputs").get<std::vector<std::string>>();
      m.tool_version = j.at("tool_version").get<std::string>();
      m.started_at = j.value("started_at", 0.0);
      m.finished_at = j.value("finished_at", 0.0);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kSchema, std::string("malformed manifest: ") + e.what());
    }
    return m;
  }

  static RunManifest load(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorCode::kIo, "cannot open manifest: " + path);
    try {
      return from_json(nlohmann::json::parse(f));
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::kSchema, std::string("malformed manifest: ") + e.what());
    }
  }
};

inline double wall_seconds() {
  return std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count();
}

inline std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

inline void write_manifest(const RunManifest& m, const std::string& output) {
  const auto path = manifest_path_for(output);
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot write manifest: " + path);
  f << m.to_json().dump(2) << '\n';
}

}  // namespace proxauth::cli
