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

#include "adaptix/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "adaptix/errors.hpp"

namespace adaptix {

const char* const kTrajectoryHeader =
    "seed,iter,f_val,grad_norm_sq,step_min,step_mean,step_max,update_linf,"
    "oracle_calls";

std::string format_double(double v) {
  if (std::isnan(v)) throw ConfigError("NaN is not representable in CSV output");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // Shortest representation that parses back to the same double.
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

double parse_csv_double(const std::string& tok, int line_no) {
  if (tok == "inf") return std::numeric_limits<double>::infinity();
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + tok + "'", line_no);
  }
}

int64_t parse_csv_int(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("malformed integer '" + tok + "'", line_no);
  }
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string trajectory_to_csv(const std::vector<TrajectoryRecord>& records) {
  std::ostringstream out;
  out << kTrajectoryHeader << '\n';
  for (const TrajectoryRecord& r : records) {
    double f_val = std::isnan(r.f_val) ? std::numeric_limits<double>::infinity()
                                       : r.f_val;
    out << r.seed << ',' << r.iter << ',' << format_double(f_val) << ','
        << format_double(r.grad_norm_sq) << ',' << format_double(r.step_min)
        << ',' << format_double(r.step_mean) << ',' << format_double(r.step_max)
        << ',' << format_double(r.update_linf) << ',' << r.oracle_calls << '\n';
  }
  return out.str();
}

std::vector<TrajectoryRecord> trajectory_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty CSV", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) throw ParseError("unexpected CSV header", 1);

  std::vector<TrajectoryRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_commas(line);
    if (cells.size() != 9) throw ParseError("expected 9 columns", line_no);
    TrajectoryRecord r;
    r.seed = parse_csv_int(cells[0], line_no);
    r.iter = parse_csv_int(cells[1], line_no);
    r.f_val = parse_csv_double(cells[2], line_no);
    r.grad_norm_sq = parse_csv_double(cells[3], line_no);
    r.step_min = parse_csv_double(cells[4], line_no);
    r.step_mean = parse_csv_double(cells[5], line_no);
    r.step_max = parse_csv_double(cells[6], line_no);
    r.update_linf = parse_csv_double(cells[7], line_no);
    r.oracle_calls = parse_csv_int(cells[8], line_no);
    records.push_back(r);
  }
  return records;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

double CsvTable::number_at(std::size_t row, int col) const {
  return parse_csv_double(rows[row][static_cast<std::size_t>(col)],
                          static_cast<int>(row) + 2);
}

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  CsvTable table;
  table.columns = split_commas(line);

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_commas(line);
    if (cells.size() != table.columns.size()) {
      throw ParseError("row width does not match header", line_no);
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace adaptix
