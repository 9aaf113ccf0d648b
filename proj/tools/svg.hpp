// Copyright 2026 The DCIL Authors
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

// Minimal SVG output: line charts and top-down maze drawings.

#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "dcil/env.hpp"
#include "dcil/skills.hpp"

namespace dcil::cli {

inline const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line chart with y fixed to [0, 1], as used for success-rate curves.
inline void write_line_chart(std::ostream& out, const std::string& title, const std::string& xlabel,
                             const std::string& ylabel, const std::vector<Series>& series) {
  const double w = 640, h = 400, ml = 60, mr = 150, mt = 40, mb = 50;
  const double pw = w - ml - mr, ph = h - mt - mb;
  double xmax = 1.0;
  for (const auto& s : series)
    for (double x : s.x) xmax = std::max(xmax, x);
  auto px = [&](double x) { return ml + pw * x / xmax; };
  auto py = [&](double y) { return mt + ph * (1.0 - y); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = i / 4.0;
    out << "<line x1=\"" << ml << "\" x2=\"" << ml + pw << "\" y1=\"" << fmt(py(y)) << "\" y2=\""
        << fmt(py(y)) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << fmt(py(y) + 4) << "\" text-anchor=\"end\">"
        << fmt(y) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double x = xmax * i / 5.0;
    out << "<text x=\"" << fmt(px(x)) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\">" << static_cast<long>(x) << "</text>\n";
  }
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">"
      << xlabel << "</text>\n";
  out << "<text transform=\"translate(16," << mt + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kPalette[k % 8];
    out << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) out << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    out << "\"/>\n";
    const double ly = mt + 16 + 18 * k;
    out << "<line x1=\"" << ml + pw + 10 << "\" x2=\"" << ml + pw + 30 << "\" y1=\"" << ly
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + pw + 36 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

struct MazeDrawing {
  const MazeMap* maze = nullptr;
  std::vector<std::vector<CarState>> paths;  // first path is drawn as the demonstration
  const SkillChain* skills = nullptr;
  double epsilon_success = 0.2;
};

inline void write_maze_svg(std::ostream& out, const MazeDrawing& d) {
  const MazeMap& m = *d.maze;
  const double scale = 80.0, pad = 10.0;
  const double w = (m.bounds.xmax - m.bounds.xmin) * scale + 2 * pad;
  const double h = (m.bounds.ymax - m.bounds.ymin) * scale + 2 * pad;
  auto px = [&](double x) { return fmt(pad + (x - m.bounds.xmin) * scale); };
  auto py = [&](double y) { return fmt(h - pad - (y - m.bounds.ymin) * scale); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\""
      << fmt(h) << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Rect& z : m.zones)
    out << "<rect x=\"" << px(z.xmin) << "\" y=\"" << py(z.ymax) << "\" width=\""
        << fmt((z.xmax - z.xmin) * scale) << "\" height=\"" << fmt((z.ymax - z.ymin) * scale)
        << "\" fill=\"none\" stroke=\"#eee\"/>\n";
  out << "<rect x=\"" << px(m.bounds.xmin) << "\" y=\"" << py(m.bounds.ymax) << "\" width=\""
      << fmt((m.bounds.xmax - m.bounds.xmin) * scale) << "\" height=\""
      << fmt((m.bounds.ymax - m.bounds.ymin) * scale)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const Wall& wall : m.walls) {
    const Rect r = wall.solid();
    out << "<rect x=\"" << px(r.xmin) << "\" y=\"" << py(r.ymax) << "\" width=\""
        << fmt((r.xmax - r.xmin) * scale) << "\" height=\"" << fmt((r.ymax - r.ymin) * scale)
        << "\" fill=\"#333\"/>\n";
  }
  for (std::size_t k = 0; k < d.paths.size(); ++k) {
    const char* color = k == 0 ? "#999" : kPalette[(k - 1) % 8];
    out << "<polyline fill=\"none\" stroke-width=\"" << (k == 0 ? 3 : 1.5) << "\" stroke=\""
        << color << "\" points=\"";
    for (const CarState& s : d.paths[k]) out << px(s.x) << ',' << py(s.y) << ' ';
    out << "\"/>\n";
  }
  if (d.skills)
    for (const Skill& s : d.skills->skills)
      out << "<circle cx=\"" << px(s.goal.x) << "\" cy=\"" << py(s.goal.y) << "\" r=\""
          << fmt(d.epsilon_success * scale) << "\" fill=\"#2ca02c\" fill-opacity=\"0.25\"/>\n";
  out << "<circle cx=\"" << px(m.start.x) << "\" cy=\"" << py(m.start.y)
      << "\" r=\"5\" fill=\"#1f77b4\"/>\n";
  out << "<circle cx=\"" << px(m.exit.x) << "\" cy=\"" << py(m.exit.y)
      << "\" r=\"5\" fill=\"#d62728\"/>\n</svg>\n";
}

}  // namespace dcil::cli
