// overair/plot.cc

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

#include "overair/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "overair/error.h"

namespace overair {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label,
                     const std::vector<PlotSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const PlotSeries& s : series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!(x_min <= x_max)) {  // no finite points at all
    x_min = 0.0; x_max = 1.0; y_min = 0.0; y_max = 1.0;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kMarginTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kIo, "write_svg_chart: cannot write '" + path + "'");
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth)
      << "\" height=\"" << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' '
      << fmt(kHeight) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // Axes with 5 ticks per side.
  out << "<g stroke=\"#333\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(kMarginTop)
      << "\" x2=\"" << fmt(kMarginLeft) << "\" y2=\"" << fmt(kHeight - kMarginBottom)
      << "\"/>\n"
      << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(kHeight - kMarginBottom)
      << "\" x2=\"" << fmt(kWidth - kMarginRight) << "\" y2=\""
      << fmt(kHeight - kMarginBottom) << "\"/>\n</g>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = y_min + (y_max - y_min) * i / 5.0;
    out << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(kHeight - kMarginBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(xv) << "</text>\n"
        << "<text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(py(yv) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(yv) << "</text>\n"
        << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(py(yv)) << "\" x2=\""
        << fmt(kWidth - kMarginRight) << "\" y2=\"" << fmt(py(yv))
        << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
  }
  out << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\""
      << fmt(kHeight - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << x_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : series[s].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      out << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
    }
    out << "\"/>\n";
    const double ly = kMarginTop + 16.0 * static_cast<double>(s);
    out << "<line x1=\"" << fmt(kWidth - kMarginRight - 150) << "\" y1=\"" << fmt(ly)
        << "\" x2=\"" << fmt(kWidth - kMarginRight - 130) << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fmt(kWidth - kMarginRight - 124) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].name
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace overair
