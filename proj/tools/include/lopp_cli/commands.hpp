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

#ifndef LOPP_CLI_COMMANDS_HPP
#define LOPP_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace lopp::cli {

/// One output of a command. An empty file name means "the main output"
/// (written to --out or stdout); named artifacts go into the --out directory.
struct Artifact {
  std::string filename;
  std::string content;
};

struct CommandOptions {
  /// Overrides the config's seed when set.
  std::optional<std::uint64_t> seed;
  int threads = 1;
};

const std::vector<std::string_view>& command_names();

/// Runs `command` on a parsed config (null selects every default). Throws
/// ConfigError for config problems and lopp::DimensionMismatch when the
/// requested shapes do not fit together.
std::vector<Artifact> execute(std::string_view command, const nlohmann::json& config,
                              const CommandOptions& options);

/// "%.17g" formatting used for every CSV number.
std::string csv_number(double x);

/// File name used by exp-sweep for a scenario, e.g. "exp_sweep_bucket_efficiency.csv".
std::string exp_sweep_filename(std::string_view scenario);

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitDimension = 3,
};

/// Entry point shared by the executable and the tests.
int run_cli(int argc, char** argv);

}  // namespace lopp::cli

#endif  // LOPP_CLI_COMMANDS_HPP
