// Copyright 2026 The adaptix authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef ADAPTIX_TOML_LITE_HPP_
#define ADAPTIX_TOML_LITE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace adaptix {

// Minimal TOML reader covering what the config format uses: [table] and
// [[table]] headers, `key = value` pairs, strings, integers, floats,
// booleans, flat arrays, and # comments. Dotted keys, inline tables, nested
// arrays, and multi-line strings are out of scope and rejected.
struct TomlValue {
  enum class Kind { String, Integer, Float, Boolean, Array };

  Kind kind = Kind::Integer;
  std::string str;
  int64_t integer = 0;
  double number = 0.0;
  bool boolean = false;
  std::vector<TomlValue> array;

  static TomlValue of_string(std::string s);
  static TomlValue of_int(int64_t v);
  static TomlValue of_float(double v);
  static TomlValue of_bool(bool v);
  static TomlValue of_array(std::vector<TomlValue> items);

  bool is_scalar() const { return kind != Kind::Array; }
  // Numeric coercion: integers read as doubles. Throws ConfigError on a
  // type mismatch.
  double as_double() const;
  int64_t as_int() const;
  bool as_bool() const;
  const std::string& as_string() const;
  std::vector<double> as_double_array() const;
  std::vector<int64_t> as_int_array() const;

  // Canonical text used for fingerprints and round-trip serialization.
  std::string render() const;
};

using TomlTable = std::map<std::string, TomlValue>;

// Parsed document: tables in file order; [[name]] repeats the same name.
struct TomlDocument {
  std::vector<std::pair<std::string, TomlTable>> tables;

  bool has(const std::string& name) const;
  // First table with the given name; throws ConfigError if absent.
  const TomlTable& table(const std::string& name) const;
  TomlTable& table_or_add(const std::string& name);
  std::vector<const TomlTable*> all(const std::string& name) const;
};

// Throws ParseError with the offending line number.
TomlDocument parse_toml(const std::string& text);
TomlDocument load_toml_file(const std::string& path);

std::string serialize_toml(const TomlDocument& doc);

}  // namespace adaptix

#endif  // ADAPTIX_TOML_LITE_HPP_
