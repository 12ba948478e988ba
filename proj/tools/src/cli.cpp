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
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "lopp/errors.hpp"
#include "lopp_cli/commands.hpp"
#include "lopp_cli/config.hpp"

namespace lopp::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

std::string describe(std::string_view command) {
  if (command == "simulate") return "Condition one interferometer and pattern, print figures of merit";
  if (command == "pure-landscape") return "Success probability of the pure-state scheme over (theta, phi)";
  if (command == "exp-sweep") return "Chain scheme under each detector scenario over an epsilon grid";
  if (command == "chain-sweep") return "Chain scheme figures of merit over an epsilon grid";
  if (command == "nogo-verify") return "Random checks of the classes where no improvement is possible";
  if (command == "search") return "Random restarts plus refinement for an improving interferometer";
  return {};
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("PHOTON_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) {
      throw ConfigError("PHOTON_THREADS", "expected a positive integer");
    }
    return static_cast<int>(v);
  }
  return 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Post-selection of imperfect single-photon sources through linear optics", "lopp"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = 0;
  for (auto name : command_names()) {
    CLI::App* sub = app.add_subcommand(std::string(name), describe(name));
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_path,
                    name == "exp-sweep" ? "Output directory" : "Output file (default stdout)");
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--threads", threads, "Worker threads (falls back to PHOTON_THREADS)")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    CommandOptions options;
    if (chosen->count("--seed") > 0) options.seed = seed;
    options.threads = resolve_threads(threads);
    const nlohmann::json config =
        config_path.empty() ? nlohmann::json() : parse_config_text(read_file(config_path));
    const auto artifacts = execute(chosen->get_name(), config, options);

    for (const auto& a : artifacts) {
      if (a.filename.empty()) {
        if (out_path.empty()) {
          std::cout << a.content;
        } else {
          write_file(out_path, a.content);
        }
      } else {
        const std::filesystem::path dir = out_path.empty() ? "." : out_path;
        std::filesystem::create_directories(dir);
        write_file(dir / a.filename, a.content);
        std::cerr << "wrote " << (dir / a.filename).string() << "\n";
      }
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lopp::DimensionMismatch& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const lopp::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace lopp::cli
