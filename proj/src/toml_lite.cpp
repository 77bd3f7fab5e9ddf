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

#include "adaptix/toml_lite.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "adaptix/errors.hpp"

namespace adaptix {

TomlValue TomlValue::of_string(std::string s) {
  TomlValue v;
  v.kind = Kind::String;
  v.str = std::move(s);
  return v;
}

TomlValue TomlValue::of_int(int64_t i) {
  TomlValue v;
  v.kind = Kind::Integer;
  v.integer = i;
  return v;
}

TomlValue TomlValue::of_float(double d) {
  TomlValue v;
  v.kind = Kind::Float;
  v.number = d;
  return v;
}

TomlValue TomlValue::of_bool(bool b) {
  TomlValue v;
  v.kind = Kind::Boolean;
  v.boolean = b;
  return v;
}

TomlValue TomlValue::of_array(std::vector<TomlValue> items) {
  TomlValue v;
  v.kind = Kind::Array;
  v.array = std::move(items);
  return v;
}

double TomlValue::as_double() const {
  if (kind == Kind::Float) return number;
  if (kind == Kind::Integer) return static_cast<double>(integer);
  throw ConfigError("config value is not a number: " + render());
}

int64_t TomlValue::as_int() const {
  if (kind == Kind::Integer) return integer;
  throw ConfigError("config value is not an integer: " + render());
}

bool TomlValue::as_bool() const {
  if (kind == Kind::Boolean) return boolean;
  throw ConfigError("config value is not a boolean: " + render());
}

const std::string& TomlValue::as_string() const {
  if (kind == Kind::String) return str;
  throw ConfigError("config value is not a string: " + render());
}

std::vector<double> TomlValue::as_double_array() const {
  if (kind != Kind::Array) return {as_double()};
  std::vector<double> out;
  out.reserve(array.size());
  for (const TomlValue& v : array) out.push_back(v.as_double());
  return out;
}

std::vector<int64_t> TomlValue::as_int_array() const {
  if (kind != Kind::Array) return {as_int()};
  std::vector<int64_t> out;
  out.reserve(array.size());
  for (const TomlValue& v : array) out.push_back(v.as_int());
  return out;
}

std::string TomlValue::render() const {
  switch (kind) {
    case Kind::String: {
      std::string out = "\"";
      for (char c : str) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
      }
      out.push_back('"');
      return out;
    }
    case Kind::Integer:
      return std::to_string(integer);
    case Kind::Float: {
      char buf[40];
      for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, number);
        if (std::strtod(buf, nullptr) == number) break;
      }
      std::string out = buf;
      // Keep floats recognizable as floats on re-parse.
      if (out.find_first_of(".eE") == std::string::npos &&
          out.find_first_of("ni") == std::string::npos) {
        out += ".0";
      }
      return out;
    }
    case Kind::Boolean:
      return boolean ? "true" : "false";
    case Kind::Array: {
      std::string out = "[";
      for (std::size_t i = 0; i < array.size(); ++i) {
        if (i) out += ", ";
        out += array[i].render();
      }
      out += "]";
      return out;
    }
  }
  return "";
}

bool TomlDocument::has(const std::string& name) const {
  for (const auto& [table_name, table] : tables) {
    if (table_name == name) return true;
  }
  return false;
}

const TomlTable& TomlDocument::table(const std::string& name) const {
  for (const auto& [table_name, table] : tables) {
    if (table_name == name) return table;
  }
  throw ConfigError("missing config section [" + name + "]");
}

TomlTable& TomlDocument::table_or_add(const std::string& name) {
  for (auto& [table_name, table] : tables) {
    if (table_name == name) return table;
  }
  tables.emplace_back(name, TomlTable{});
  return tables.back().second;
}

std::vector<const TomlTable*> TomlDocument::all(const std::string& name) const {
  std::vector<const TomlTable*> out;
  for (const auto& [table_name, table] : tables) {
    if (table_name == name) out.push_back(&table);
  }
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  int line;

  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
};

TomlValue parse_value(Cursor& c, bool allow_array);

TomlValue parse_scalar(Cursor& c) {
  c.skip_ws();
  if (c.done()) throw ParseError("missing value", c.line);

  if (c.peek() == '"') {
    ++c.pos;
    std::string out;
    while (!c.done() && c.peek() != '"') {
      char ch = c.s[c.pos++];
      if (ch == '\\') {
        if (c.done()) throw ParseError("unterminated escape", c.line);
        char esc = c.s[c.pos++];
        switch (esc) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          default:
            throw ParseError(std::string("unsupported escape \\") + esc, c.line);
        }
      } else {
        out.push_back(ch);
      }
    }
    if (c.done()) throw ParseError("unterminated string", c.line);
    ++c.pos;  // closing quote
    return TomlValue::of_string(std::move(out));
  }

  std::size_t start = c.pos;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '#' &&
         c.peek() != ' ' && c.peek() != '\t') {
    ++c.pos;
  }
  std::string tok = c.s.substr(start, c.pos - start);
  if (tok.empty()) throw ParseError("missing value", c.line);
  if (tok == "true") return TomlValue::of_bool(true);
  if (tok == "false") return TomlValue::of_bool(false);

  bool looks_float = tok.find_first_of(".eE") != std::string::npos ||
                     tok == "inf" || tok == "-inf" || tok == "nan";
  try {
    std::size_t used = 0;
    if (looks_float) {
      double d = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return TomlValue::of_float(d);
    }
    int64_t i = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return TomlValue::of_int(i);
  } catch (const std::exception&) {
    throw ParseError("malformed value '" + tok + "'", c.line);
  }
}

TomlValue parse_value(Cursor& c, bool allow_array) {
  c.skip_ws();
  if (c.done()) throw ParseError("missing value", c.line);
  if (c.peek() == '[') {
    if (!allow_array) throw ParseError("nested arrays are not supported", c.line);
    ++c.pos;
    std::vector<TomlValue> items;
    c.skip_ws();
    if (!c.done() && c.peek() == ']') {
      ++c.pos;
      return TomlValue::of_array(std::move(items));
    }
    while (true) {
      items.push_back(parse_value(c, /*allow_array=*/false));
      c.skip_ws();
      if (c.done()) throw ParseError("unterminated array", c.line);
      char ch = c.s[c.pos++];
      if (ch == ']') break;
      if (ch != ',') throw ParseError("expected ',' or ']' in array", c.line);
    }
    return TomlValue::of_array(std::move(items));
  }
  return parse_scalar(c);
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (in_string) {
      if (ch == '\\') {
        ++i;
      } else if (ch == '"') {
        in_string = false;
      }
    } else if (ch == '"') {
      in_string = true;
    } else if (ch == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

}  // namespace

TomlDocument parse_toml(const std::string& text) {
  TomlDocument doc;
  TomlTable* current = nullptr;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      bool array_table = line.size() > 1 && line[1] == '[';
      std::string close = array_table ? "]]" : "]";
      std::size_t start = array_table ? 2 : 1;
      std::size_t end = line.find(close, start);
      if (end == std::string::npos || trim(line.substr(end + close.size())) != "") {
        throw ParseError("malformed table header", line_no);
      }
      std::string name = trim(line.substr(start, end - start));
      if (!valid_key(name)) throw ParseError("malformed table name", line_no);
      if (array_table) {
        doc.tables.emplace_back(name, TomlTable{});
        current = &doc.tables.back().second;
      } else {
        if (doc.has(name)) throw ParseError("duplicate table [" + name + "]", line_no);
        doc.tables.emplace_back(name, TomlTable{});
        current = &doc.tables.back().second;
      }
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) throw ParseError("malformed key '" + key + "'", line_no);
    if (current == nullptr) {
      throw ParseError("key outside of any [section]", line_no);
    }
    if (current->count(key)) throw ParseError("duplicate key '" + key + "'", line_no);

    std::string value_text = line.substr(eq + 1);
    Cursor c{value_text, 0, line_no};
    TomlValue value = parse_value(c, /*allow_array=*/true);
    c.skip_ws();
    if (!c.done()) throw ParseError("trailing characters after value", line_no);
    (*current)[key] = std::move(value);
  }
  return doc;
}

TomlDocument load_toml_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_toml(buf.str());
}

std::string serialize_toml(const TomlDocument& doc) {
  std::ostringstream out;
  // Array tables (repeated names) re-serialize as [[name]].
  std::map<std::string, int> name_counts;
  for (const auto& [name, table] : doc.tables) ++name_counts[name];

  bool first = true;
  for (const auto& [name, table] : doc.tables) {
    if (!first) out << '\n';
    first = false;
    if (name_counts[name] > 1) {
      out << "[[" << name << "]]\n";
    } else {
      out << '[' << name << "]\n";
    }
    for (const auto& [key, value] : table) {
      out << key << " = " << value.render() << '\n';
    }
  }
  return out.str();
}

}  // namespace adaptix
