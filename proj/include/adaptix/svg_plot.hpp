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

#ifndef ADAPTIX_SVG_PLOT_HPP_
#define ADAPTIX_SVG_PLOT_HPP_

#include <string>
#include <utility>
#include <vector>

namespace adaptix {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct PlotAxes {
  std::string x_label;
  std::string y_label;
  std::string title;
  bool log_x = false;
  bool log_y = false;
};

// Renders a standalone SVG 1.1 line plot: one polyline per series, legend,
// tick labels. Log axes drop nonpositive points; the drop count is recorded
// in a metadata comment. Deterministic: identical input yields byte-identical
// output. Throws ConfigError when no series keeps at least two points.
std::string emit_svg_lines(const std::vector<PlotSeries>& series,
                           const PlotAxes& axes);

}  // namespace adaptix

#endif  // ADAPTIX_SVG_PLOT_HPP_
