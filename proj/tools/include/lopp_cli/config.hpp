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

#ifndef LOPP_CLI_CONFIG_HPP
#define LOPP_CLI_CONFIG_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lopp/errors.hpp"

namespace lopp::cli {

inline constexpr int kConfigVersion = 1;

/// Malformed or inconsistent configuration; the message names the field.
class ConfigError : public lopp::InvalidArgument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : lopp::InvalidArgument("config field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Strict reader over one JSON object. Every key must be consumed before
/// finish(), otherwise the first unknown key is reported.
class ConfigObject {
 public:
  ConfigObject(const nlohmann::json& j, std::string path);

  bool has(const std::string& key) const;
  std::string path_of(const std::string& key) const;

  double number(const std::string& key, double fallback);
  double number(const std::string& key);
  int integer(const std::string& key, int fallback);
  std::uint64_t seed(const std::string& key, std::uint64_t fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback);
  std::vector<std::string> strings(const std::string& key,
                                   const std::vector<std::string>& fallback);
  /// Raw access; marks the key as used.
  const nlohmann::json& raw(const std::string& key);
  ConfigObject object(const std::string& key);

  void finish() const;

 private:
  const nlohmann::json* lookup(const std::string& key);
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> used_;
};

/// Parses text, checks it is an object with "command" == expected and
/// "version" == 1, and returns the reader with those keys consumed.
nlohmann::json parse_config_text(const std::string& text);
ConfigObject open_config(const nlohmann::json& root, const std::string& expected_command);

}  // namespace lopp::cli

#endif  // LOPP_CLI_CONFIG_HPP
