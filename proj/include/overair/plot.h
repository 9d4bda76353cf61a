// overair/plot.h

// Copyright 2026  Overair Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef OVERAIR_PLOT_H_
#define OVERAIR_PLOT_H_

#include <string>
#include <utility>
#include <vector>

namespace overair {

// One polyline of an SVG chart.
struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

// Writes a static SVG line chart with axes, tick labels, and a legend.
// Output is deterministic: fixed layout, fixed number formatting.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label,
                     const std::vector<PlotSeries>& series);

}  // namespace overair

#endif  // OVERAIR_PLOT_H_
