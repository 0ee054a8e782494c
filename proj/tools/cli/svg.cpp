// Copyright 2026 The Substinet Authors
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

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "substinet/text_format.hpp"

namespace substinet::cli {

namespace {

constexpr double kCanvas = 512.0;

std::string hex(double r, double g, double b) {
  auto c = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
  return buf;
}

std::string color(double v, double scale, bool diverging) {
  if (scale <= 0.0) return "#ffffff";
  const double t = std::clamp(v / scale, -1.0, 1.0);
  if (!diverging) return hex(1.0, 1.0 - 0.85 * t, 1.0 - t);
  if (t >= 0.0) return hex(1.0, 1.0 - t, 1.0 - t);
  return hex(1.0 + t, 1.0 + t, 1.0);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

void write_heatmap_svg(std::ostream& out, const ContextLandscape& map, bool diverging,
                       const std::vector<Marker>& markers) {
  const std::size_t r = map.grid.resolution;
  double scale = 0.0;
  for (double v : map.values) scale = std::max(scale, std::abs(v));
  const double cell = kCanvas / static_cast<double>(r);
  const std::string size = format_double(kCanvas);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\" shape-rendering=\"crispEdges\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  const std::string w = format_double(cell);
  for (std::size_t j = 0; j < r; ++j) {
    // SVG y grows downward; row 0 is the bottom of the map.
    const std::string y = format_double(kCanvas - static_cast<double>(j + 1) * cell);
    for (std::size_t i = 0; i < r; ++i) {
      const double v = map.at(i, j);
      if (v == 0.0) continue;
      out << "<rect x=\"" << format_double(static_cast<double>(i) * cell) << "\" y=\"" << y << "\" width=\"" << w
          << "\" height=\"" << w << "\" fill=\"" << color(v, scale, diverging) << "\"/>\n";
    }
  }
  for (const auto& m : markers) {
    const double x = (m.point.x - map.grid.xmin) / (map.grid.xmax - map.grid.xmin) * kCanvas;
    const double y = kCanvas - (m.point.y - map.grid.ymin) / (map.grid.ymax - map.grid.ymin) * kCanvas;
    out << "<circle cx=\"" << format_double(x) << "\" cy=\"" << format_double(y)
        << "\" r=\"3\" fill=\"#000000\"/>\n";
    out << "<text x=\"" << format_double(x + 5.0) << "\" y=\"" << format_double(y - 5.0)
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape(m.label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace substinet::cli
