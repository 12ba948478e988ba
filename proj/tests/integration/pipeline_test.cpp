// Copyright 2026 The lopp Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("lopp_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

int lopp(const std::string& args) {
  const std::string cmd = std::string(LOPP_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Pipeline, ExpSweepIsByteIdenticalAcrossRuns) {
  const fs::path dir = scratch("exp");
  write(dir / "cfg.json", R"({"command": "exp-sweep", "version": 1, "epsilon_points": 8})");
  ASSERT_EQ(lopp("exp-sweep --config " + (dir / "cfg.json").string() + " --out " + (dir / "a").string()), 0);
  ASSERT_EQ(lopp("exp-sweep --config " + (dir / "cfg.json").string() + " --out " + (dir / "b").string()), 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / entry.path().filename())) << entry.path();
  }
  EXPECT_EQ(files, 5);
}

TEST(Pipeline, LandscapeAndChainSweepRerun) {
  const fs::path dir = scratch("sweeps");
  write(dir / "land.json", R"({"command": "pure-landscape", "version": 1, "theta_points": 41, "phi_points": 41})");
  for (const char* run : {"1", "2"}) {
    ASSERT_EQ(lopp("pure-landscape --config " + (dir / "land.json").string() + " --out " +
                   (dir / (std::string("land") + run + ".csv")).string()),
              0);
    ASSERT_EQ(lopp("chain-sweep --out " + (dir / (std::string("chain") + run + ".csv")).string()), 0);
  }
  EXPECT_EQ(slurp(dir / "land1.csv"), slurp(dir / "land2.csv"));
  EXPECT_EQ(slurp(dir / "chain1.csv"), slurp(dir / "chain2.csv"));
  EXPECT_NE(slurp(dir / "land1.csv").find("theta,phi,probability"), std::string::npos);
}

TEST(Pipeline, SearchIgnoresThreadCount) {
  const fs::path dir = scratch("search");
  write(dir / "cfg.json",
        R"({"command": "search", "version": 1, "trials": 40, "refine_top": 2, "refine_evaluations": 80, "seed": 3})");
  const std::string cfg = (dir / "cfg.json").string();
  ASSERT_EQ(lopp("search --config " + cfg + " --threads 1 --out " + (dir / "t1.json").string()), 0);
  ASSERT_EQ(lopp("search --config " + cfg + " --threads 4 --out " + (dir / "t4.json").string()), 0);
  EXPECT_EQ(slurp(dir / "t1.json"), slurp(dir / "t4.json"));
  const auto report = nlohmann::json::parse(slurp(dir / "t1.json"));
  EXPECT_EQ(report["bound_violations"], 0);
  EXPECT_EQ(report["task"]["seed"], 3);
}

TEST(Pipeline, NoGoVerifyReportsNoneFound) {
  const fs::path dir = scratch("nogo");
  write(dir / "cfg.json",
        R"({"command": "nogo-verify", "version": 1, "mode": "small", "n_modes": 3, "p_max": 0.2, "budget": 100})");
  ASSERT_EQ(lopp("nogo-verify --config " + (dir / "cfg.json").string() + " --out " + (dir / "r.json").string()), 0);
  const auto report = nlohmann::json::parse(slurp(dir / "r.json"));
  EXPECT_EQ(report["verdict"], "none found");
}

TEST(Pipeline, ExitCodes) {
  const fs::path dir = scratch("codes");
  write(dir / "unknown.json", R"({"command": "simulate", "version": 1, "colour": "blue"})");
  write(dir / "shape.json", R"({"command": "simulate", "version": 1, "inputs": [0.2, 0.2], "pattern": [1, 0]})");
  write(dir / "broken.json", "{ not json");
  EXPECT_EQ(lopp("simulate --config " + (dir / "unknown.json").string()), 2);
  EXPECT_EQ(lopp("simulate --config " + (dir / "broken.json").string()), 2);
  EXPECT_EQ(lopp("simulate --config " + (dir / "shape.json").string()), 3);
  EXPECT_EQ(lopp("simulate --out " + (dir / "ok.json").string()), 0);
}

}  // namespace
