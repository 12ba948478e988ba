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

#include "lopp_cli/config.hpp"

#include <cmath>
#include <limits>

namespace lopp::cli {

namespace {

const nlohmann::json& null_json() {
  static const nlohmann::json n;
  return n;
}

}  // namespace

ConfigObject::ConfigObject(const nlohmann::json& j, std::string path)
    : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
}

bool ConfigObject::has(const std::string& key) const { return j_.contains(key); }

std::string ConfigObject::path_of(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

const nlohmann::json* ConfigObject::lookup(const std::string& key) {
  used_.insert(key);
  const auto it = j_.find(key);
  return it == j_.end() ? nullptr : &*it;
}

double ConfigObject::number(const std::string& key, double fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(path_of(key), "expected a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw ConfigError(path_of(key), "must be finite");
  return x;
}

double ConfigObject::number(const std::string& key) {
  if (!has(key)) throw ConfigError(path_of(key), "required");
  return number(key, 0.0);
}

int ConfigObject::integer(const std::string& key, int fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(path_of(key), "expected an integer");
  const auto x = v->get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError(path_of(key), "out of range");
  }
  return static_cast<int>(x);
}

std::uint64_t ConfigObject::seed(const std::string& key, std::uint64_t fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_number_unsigned()) throw ConfigError(path_of(key), "expected a non-negative integer");
  return v->get<std::uint64_t>();
}

bool ConfigObject::boolean(const std::string& key, bool fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(path_of(key), "expected true or false");
  return v->get<bool>();
}

std::string ConfigObject::string(const std::string& key, const std::string& fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(path_of(key), "expected a string");
  return v->get<std::string>();
}

std::vector<double> ConfigObject::numbers(const std::string& key,
                                          const std::vector<double>& fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_array()) throw ConfigError(path_of(key), "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : *v) {
    if (!x.is_number()) throw ConfigError(path_of(key), "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<int> ConfigObject::integers(const std::string& key, const std::vector<int>& fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_array()) throw ConfigError(path_of(key), "expected an array of integers");
  std::vector<int> out;
  for (const auto& x : *v) {
    if (!x.is_number_integer()) throw ConfigError(path_of(key), "expected an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<std::string> ConfigObject::strings(const std::string& key,
                                               const std::vector<std::string>& fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_array()) throw ConfigError(path_of(key), "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : *v) {
    if (!x.is_string()) throw ConfigError(path_of(key), "expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

const nlohmann::json& ConfigObject::raw(const std::string& key) {
  const auto* v = lookup(key);
  return v ? *v : null_json();
}

ConfigObject ConfigObject::object(const std::string& key) {
  const auto* v = lookup(key);
  if (!v) throw ConfigError(path_of(key), "required");
  return ConfigObject(*v, path_of(key));
}

void ConfigObject::finish() const {
  for (const auto& [key, value] : j_.items()) {
    if (!used_.contains(key)) throw ConfigError(path_of(key), "unknown field");
  }
}

nlohmann::json parse_config_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<root>", std::string("not valid JSON: ") + e.what());
  }
}

ConfigObject open_config(const nlohmann::json& root, const std::string& expected_command) {
  ConfigObject c(root, "");
  if (!c.has("command")) throw ConfigError("command", "required");
  const std::string command = c.string("command", "");
  if (command != expected_command) {
    throw ConfigError("command", "expected '" + expected_command + "', got '" + command + "'");
  }
  if (!c.has("version")) throw ConfigError("version", "required");
  if (c.integer("version", 0) != kConfigVersion) {
    throw ConfigError("version", "unsupported version (expected " +
                                     std::to_string(kConfigVersion) + ")");
  }
  return c;
}

}  // namespace lopp::cli
