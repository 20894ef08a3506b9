// Copyright 2026 The StructMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "structmia/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace structmia {
namespace {

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 360.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 50.0;
constexpr double kLegendHeight = 24.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void DrawPanel(std::ostringstream& svg, const PlotPanel& p, double left,
               double top) {
  const double w = kPanelWidth - kMarginLeft - kMarginRight;
  const double h = kPanelHeight - kMarginTop - kMarginBottom;
  const double x0 = left + kMarginLeft;
  const double y0 = top + kMarginTop;
  auto [xmin, xmax] = p.x_range;
  auto [ymin, ymax] = p.y_range;
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  auto sx = [&](double x) { return x0 + (x - xmin) / (xmax - xmin) * w; };
  auto sy = [&](double y) { return y0 + h - (y - ymin) / (ymax - ymin) * h; };

  svg << "<text x=\"" << Num(x0 + w / 2) << "\" y=\"" << Num(top + 30)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << Escape(p.title)
      << "</text>\n";
  svg << "<rect x=\"" << Num(x0) << "\" y=\"" << Num(y0) << "\" width=\""
      << Num(w) << "\" height=\"" << Num(h)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    svg << "<text x=\"" << Num(sx(fx)) << "\" y=\"" << Num(y0 + h + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << Tick(fx)
        << "</text>\n";
    svg << "<text x=\"" << Num(x0 - 6) << "\" y=\"" << Num(sy(fy) + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << Tick(fy)
        << "</text>\n";
  }
  svg << "<text x=\"" << Num(x0 + w / 2) << "\" y=\"" << Num(y0 + h + 34)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << Escape(p.x_label)
      << "</text>\n";
  svg << "<text x=\"" << Num(left + 16) << "\" y=\"" << Num(y0 + h / 2)
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 "
      << Num(left + 16) << " " << Num(y0 + h / 2) << ")\">"
      << Escape(p.y_label) << "</text>\n";
  if (p.diagonal) {
    svg << "<line x1=\"" << Num(sx(xmin)) << "\" y1=\"" << Num(sy(ymin))
        << "\" x2=\"" << Num(sx(xmax)) << "\" y2=\"" << Num(sy(ymax))
        << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
  }
  for (std::size_t i = 0; i < p.series.size(); ++i) {
    svg << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\""
        << kPalette[i % std::size(kPalette)] << "\" points=\"";
    for (const PlotPoint& pt : p.series[i].points) {
      const double x = std::clamp(pt.x, xmin, xmax);
      const double y = std::clamp(pt.y, ymin, ymax);
      svg << Num(sx(x)) << "," << Num(sy(y)) << " ";
    }
    svg << "\"/>\n";
  }
}

}  // namespace

std::string RenderPanels(const std::string& title,
                         const std::vector<PlotPanel>& panels) {
  const double width = kPanelWidth * std::max<std::size_t>(panels.size(), 1);
  const double height = kPanelHeight + kLegendHeight + 20.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width)
      << "\" height=\"" << Num(height) << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << Num(width / 2)
      << "\" y=\"16\" text-anchor=\"middle\" font-size=\"15\">"
      << Escape(title) << "</text>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    DrawPanel(svg, panels[i], kPanelWidth * i, 10.0);
  }
  if (!panels.empty()) {
    double x = kMarginLeft;
    const double y = kPanelHeight + 24.0;
    const auto& series = panels.front().series;
    for (std::size_t i = 0; i < series.size(); ++i) {
      svg << "<rect x=\"" << Num(x) << "\" y=\"" << Num(y - 9)
          << "\" width=\"12\" height=\"4\" fill=\""
          << kPalette[i % std::size(kPalette)] << "\"/>\n";
      svg << "<text x=\"" << Num(x + 16) << "\" y=\"" << Num(y - 4)
          << "\" font-size=\"11\">" << Escape(series[i].name) << "</text>\n";
      x += 24.0 + 7.0 * series[i].name.size();
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::pair<double, double> YRangeOf(const std::vector<PlotSeries>& series) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      if (!std::isfinite(p.y)) continue;
      lo = std::min(lo, p.y);
      hi = std::max(hi, p.y);
    }
  }
  if (!(hi >= lo)) return {0.0, 1.0};
  const double pad = hi > lo ? 0.05 * (hi - lo) : 0.5;
  return {lo - pad, hi + pad};
}

}  // namespace structmia
