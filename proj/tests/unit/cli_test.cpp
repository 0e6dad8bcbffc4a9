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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell, capturing stdout; stderr is discarded.
Run cli(const std::string& args, const fs::path& cwd) {
  const auto out_file = cwd / "stdout.txt";
  const std::string cmd = "cd '" + cwd.string() + "' && '" + PROXAUTH_CLI_PATH + "' " + args + " > '" +
                          out_file.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file, std::ios::binary);
  r.out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, GenDataWritesRequestedRowsAndManifest) {
  const auto dir = proxauth::testing::scratch_dir("cli-gen");
  ASSERT_EQ(cli("gen-data --authentic 100 --unauthorized 50 -o d.csv", dir).code, 0);
  const auto csv = slurp(dir / "d.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 151);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "RPi,SSID,Frequency,RSSI,Location,Label");
  const auto manifest = nlohmann::json::parse(slurp(dir / "d.csv.manifest.json"));
  EXPECT_EQ(manifest["command"], "gen-data");
  EXPECT_EQ(manifest["seed"], 42);
}

TEST(Cli, ReplayReproducesOutputsByteForByte) {
  const auto dir = proxauth::testing::scratch_dir("cli-replay");
  ASSERT_EQ(cli("--seed 7 gen-data --authentic 300 --unauthorized 300 -o d.csv", dir).code, 0);
  fs::rename(dir / "d.csv", dir / "first.csv");
  ASSERT_EQ(cli("replay d.csv.manifest.json", dir).code, 0);
  EXPECT_EQ(slurp(dir / "d.csv"), slurp(dir / "first.csv"));
}

TEST(Cli, SeedChangesData) {
  const auto dir = proxauth::testing::scratch_dir("cli-seed");
  ASSERT_EQ(cli("--seed 1 gen-data --authentic 50 --unauthorized 50 -o a.csv", dir).code, 0);
  ASSERT_EQ(cli("--seed 2 gen-data --authentic 50 --unauthorized 50 -o b.csv", dir).code, 0);
  EXPECT_NE(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
}

TEST(Cli, HelpExitsZeroForEverySubcommand) {
  const auto dir = proxauth::testing::scratch_dir("cli-help");
  EXPECT_EQ(cli("--help", dir).code, 0);
  for (const char* sub : {"gen-data", "train", "eval", "cv", "importance", "bench", "attack", "serve",
                          "demo-session", "replay"}) {
    const auto r = cli(std::string(sub) + " --help", dir);
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
  }
}

TEST(Cli, UsageErrorsExitTwo) {
  const auto dir = proxauth::testing::scratch_dir("cli-usage");
  EXPECT_EQ(cli("", dir).code, 2);
  EXPECT_EQ(cli("train", dir).code, 2);
  EXPECT_EQ(cli("no-such-command", dir).code, 2);
  EXPECT_EQ(cli("cv --k notanumber", dir).code, 2);
}

TEST(Cli, RuntimeErrorsExitOne) {
  const auto dir = proxauth::testing::scratch_dir("cli-runtime");
  EXPECT_EQ(cli("eval missing.csv", dir).code, 1);
  ASSERT_EQ(cli("gen-data --authentic 200 --unauthorized 200 -o d.csv", dir).code, 0);
  EXPECT_EQ(cli("importance d.csv --algo NB", dir).code, 1);
}

TEST(Cli, TrainThenEvalFromSavedModels) {
  const auto dir = proxauth::testing::scratch_dir("cli-train");
  ASSERT_EQ(cli("gen-data -o d.csv", dir).code, 0);
  ASSERT_EQ(cli("train d.csv --algo DT,NB -o models", dir).code, 0);
  EXPECT_TRUE(fs::exists(dir / "models" / "dt.json"));
  EXPECT_TRUE(fs::exists(dir / "models" / "nb.json"));
  const auto r = cli("eval d.csv --algo DT,NB --models models", dir);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("DT,holdout,"), std::string::npos);
  EXPECT_NE(r.out.find("NB,holdout,"), std::string::npos);
}

TEST(Cli, DemoSessionTerminatesAfterSeparation) {
  const auto dir = proxauth::testing::scratch_dir("cli-demo");
  const auto r = cli("demo-session", dir);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("granted"), std::string::npos);
  EXPECT_NE(r.out.find("tick 3"), std::string::npos);
  EXPECT_NE(r.out.find("tick 4"), std::string::npos);
  EXPECT_NE(r.out.find("terminate"), std::string::npos);
  EXPECT_EQ(r.out.find("tick 5"), std::string::npos);
}

}  // namespace
