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

#include "adaptix/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "adaptix/errors.hpp"

namespace adaptix {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 160.0;  // legend space
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 52.0;

const char* const kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::vector<double> linear_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) return {lo};
  double raw = (hi - lo) / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double norm = raw / mag;
  double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
  std::vector<double> ticks;
  double first = std::ceil(lo / step) * step;
  for (double v = first; v <= hi + 1e-9 * step; v += step) ticks.push_back(v);
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  int e_lo = static_cast<int>(std::ceil(std::log10(lo) - 1e-12));
  int e_hi = static_cast<int>(std::floor(std::log10(hi) + 1e-12));
  for (int e = e_lo; e <= e_hi; ++e) ticks.push_back(std::pow(10.0, e));
  if (ticks.empty()) ticks = {lo, hi};
  return ticks;
}

}  // namespace

std::string emit_svg_lines(const std::vector<PlotSeries>& series,
                           const PlotAxes& axes) {
  if (series.empty()) throw ConfigError("plot: no series");

  long long dropped = 0;
  std::vector<PlotSeries> kept;
  for (const PlotSeries& s : series) {
    PlotSeries k;
    k.label = s.label;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y) || (axes.log_x && x <= 0.0) ||
          (axes.log_y && y <= 0.0)) {
        ++dropped;
        continue;
      }
      k.points.emplace_back(x, y);
    }
    if (k.points.size() >= 2) kept.push_back(std::move(k));
  }
  if (kept.empty()) {
    throw ConfigError("plot: all points dropped; nothing to draw");
  }

  double x_lo = kept[0].points[0].first, x_hi = x_lo;
  double y_lo = kept[0].points[0].second, y_hi = y_lo;
  for (const PlotSeries& s : kept) {
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi == x_lo) {
    x_hi = x_lo + 1.0;
    x_lo -= 1.0;
  }
  if (y_hi == y_lo) {
    y_hi = axes.log_y ? y_hi * 10.0 : y_hi + 1.0;
    y_lo = axes.log_y ? y_lo / 10.0 : y_lo - 1.0;
  }

  auto x_coord = [&](double v) {
    double u = axes.log_x ? (std::log10(v) - std::log10(x_lo)) /
                                (std::log10(x_hi) - std::log10(x_lo))
                          : (v - x_lo) / (x_hi - x_lo);
    return kMarginLeft + u * (kWidth - kMarginLeft - kMarginRight);
  };
  auto y_coord = [&](double v) {
    double u = axes.log_y ? (std::log10(v) - std::log10(y_lo)) /
                                (std::log10(y_hi) - std::log10(y_lo))
                          : (v - y_lo) / (y_hi - y_lo);
    return kHeight - kMarginBottom - u * (kHeight - kMarginTop - kMarginBottom);
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << fmt(kWidth) << "\" height=\"" << fmt(kHeight) << "\">\n";
  out << "<!-- dropped=" << dropped << " -->\n";
  out << "<rect width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" font-size=\"16\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\">"
      << escape_xml(axes.title) << "</text>\n";

  // Frame.
  out << "<rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kMarginTop)
      << "\" width=\"" << fmt(kWidth - kMarginLeft - kMarginRight)
      << "\" height=\"" << fmt(kHeight - kMarginTop - kMarginBottom)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  std::vector<double> x_ticks =
      axes.log_x ? log_ticks(x_lo, x_hi) : linear_ticks(x_lo, x_hi, 6);
  for (double v : x_ticks) {
    double px = x_coord(v);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(kHeight - kMarginBottom)
        << "\" x2=\"" << fmt(px) << "\" y2=\""
        << fmt(kHeight - kMarginBottom + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\""
        << fmt(kHeight - kMarginBottom + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\">" << fmt(v) << "</text>\n";
  }
  std::vector<double> y_ticks =
      axes.log_y ? log_ticks(y_lo, y_hi) : linear_ticks(y_lo, y_hi, 6);
  for (double v : y_ticks) {
    double py = y_coord(v);
    out << "<line x1=\"" << fmt(kMarginLeft - 5) << "\" y1=\"" << fmt(py)
        << "\" x2=\"" << fmt(kMarginLeft) << "\" y2=\"" << fmt(py)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(py + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" "
        << "font-family=\"sans-serif\">" << fmt(v) << "</text>\n";
  }

  out << "<text x=\"" << fmt(kMarginLeft + (kWidth - kMarginLeft - kMarginRight) / 2)
      << "\" y=\"" << fmt(kHeight - 12)
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << escape_xml(axes.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\""
      << fmt(kMarginTop + (kHeight - kMarginTop - kMarginBottom) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "transform=\"rotate(-90 18 "
      << fmt(kMarginTop + (kHeight - kMarginTop - kMarginBottom) / 2) << ")\">"
      << escape_xml(axes.y_label) << "</text>\n";

  for (std::size_t i = 0; i < kept.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < kept[i].points.size(); ++k) {
      if (k) out << ' ';
      out << fmt(x_coord(kept[i].points[k].first)) << ','
          << fmt(y_coord(kept[i].points[k].second));
    }
    out << "\"/>\n";

    double ly = kMarginTop + 16.0 + 18.0 * static_cast<double>(i);
    double lx = kWidth - kMarginRight + 12.0;
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(lx + 22) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << fmt(lx + 28) << "\" y=\"" << fmt(ly)
        << "\" font-size=\"12\" font-family=\"sans-serif\">"
        << escape_xml(kept[i].label) << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace adaptix
