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

#ifndef ADAPTIX_CSV_IO_HPP_
#define ADAPTIX_CSV_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace adaptix {

// One recorded iteration of one seeded run. grad_norm_sq is the true
// (noiseless) gradient norm squared; oracle_calls counts only stochastic
// draws the optimizer consumed.
struct TrajectoryRecord {
  int64_t seed = 0;
  int64_t iter = 0;
  double f_val = 0.0;
  double grad_norm_sq = 0.0;
  double step_min = 0.0;
  double step_mean = 0.0;
  double step_max = 0.0;
  double update_linf = 0.0;
  int64_t oracle_calls = 0;
};

// Fixed schema, header mandatory, values at 17 significant digits so a
// write/read round trip is lossless. Non-finite f_val is written as the
// literal `inf` sentinel; NaN never appears.
extern const char* const kTrajectoryHeader;

std::string trajectory_to_csv(const std::vector<TrajectoryRecord>& records);
std::vector<TrajectoryRecord> trajectory_from_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Formats with up to 17 significant digits (round-trip exact for doubles).
std::string format_double(double v);

// Generic tabular CSV used by the plot command: a header naming columns,
// then rows. Cells are kept as text; numeric access parses on demand.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // -1 if absent
  double number_at(std::size_t row, int col) const;
};

CsvTable parse_csv(const std::string& text);

}  // namespace adaptix

#endif  // ADAPTIX_CSV_IO_HPP_
