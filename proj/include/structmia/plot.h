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

// Minimal SVG line charts. Output depends only on the inputs, so plots are
// as reproducible as the CSV files they accompany.

#ifndef STRUCTMIA_PLOT_H_
#define STRUCTMIA_PLOT_H_

#include <string>
#include <utility>
#include <vector>

namespace structmia {

struct PlotPoint {
  double x;
  double y;
};

struct PlotSeries {
  std::string name;
  std::vector<PlotPoint> points;
};

struct PlotPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::pair<double, double> x_range;
  std::pair<double, double> y_range;
  std::vector<PlotSeries> series;
  bool diagonal = false;  // dashed y = x reference line
};

// Panels are laid out side by side, sharing one legend.
std::string RenderPanels(const std::string& title,
                         const std::vector<PlotPanel>& panels);

// Axis range covering every point of every series, padded by 5%.
std::pair<double, double> YRangeOf(const std::vector<PlotSeries>& series);

}  // namespace structmia

#endif  // STRUCTMIA_PLOT_H_
