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

// Maze map files.
//
// Line-oriented text, '#' starts a comment:
//
//   dcil-maze 1
//   name   <identifier>
//   bounds <xmin> <ymin> <xmax> <ymax>
//   start  <x> <y> <theta>
//   exit   <x> <y>
//   wall   <x0> <y0> <x1> <y1> <thickness>     (any number)
//   zone   <xmin> <ymin> <xmax> <ymax>         (ordered, any number >= 1)

#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcil/env.hpp"

namespace dcil {

inline constexpr int kMazeFormatVersion = 1;

class MazeParseError : public std::runtime_error {
 public:
  MazeParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "maze line " + std::to_string(line) + ": " + what
                                    : "maze: " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::vector<double> parse_numbers(std::istringstream& in, std::size_t n, int line,
                                         const std::string& key) {
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw MazeParseError(line, "'" + key + "' expects numbers, got '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(d))
      throw MazeParseError(line, "'" + key + "' has invalid number '" + tok + "'");
    v.push_back(d);
  }
  if (v.size() != n)
    throw MazeParseError(line, "'" + key + "' expects " + std::to_string(n) +
                                   " values, got " + std::to_string(v.size()));
  return v;
}

}  // namespace detail

inline MazeMap parse_maze(std::istream& in) {
  MazeMap maze;
  bool have_header = false, have_bounds = false, have_start = false, have_exit = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    if (!have_header) {
      int version = 0;
      if (key != "dcil-maze" || !(ls >> version))
        throw MazeParseError(line, "expected header 'dcil-maze <version>'");
      if (version != kMazeFormatVersion)
        throw MazeParseError(line, "unsupported maze format version " + std::to_string(version));
      have_header = true;
      continue;
    }
    if (key == "name") {
      if (!(ls >> maze.name)) throw MazeParseError(line, "'name' expects a value");
    } else if (key == "bounds") {
      auto v = detail::parse_numbers(ls, 4, line, key);
      maze.bounds = {v[0], v[1], v[2], v[3]};
      if (!maze.bounds.valid()) throw MazeParseError(line, "degenerate bounds");
      have_bounds = true;
    } else if (key == "start") {
      auto v = detail::parse_numbers(ls, 3, line, key);
      maze.start = {v[0], v[1], wrap_angle(v[2])};
      have_start = true;
    } else if (key == "exit") {
      auto v = detail::parse_numbers(ls, 2, line, key);
      maze.exit = {v[0], v[1]};
      have_exit = true;
    } else if (key == "wall") {
      auto v = detail::parse_numbers(ls, 5, line, key);
      Wall w{v[0], v[1], v[2], v[3], v[4]};
      if ((w.x0 == w.x1) == (w.y0 == w.y1))
        throw MazeParseError(line, "wall must be a non-degenerate axis-aligned segment");
      if (!(w.thickness > 0.0)) throw MazeParseError(line, "wall thickness must be > 0");
      maze.walls.push_back(w);
    } else if (key == "zone") {
      auto v = detail::parse_numbers(ls, 4, line, key);
      Rect z{v[0], v[1], v[2], v[3]};
      if (!z.valid()) throw MazeParseError(line, "degenerate zone");
      for (std::size_t j = 0; j < maze.zones.size(); ++j)
        if (z.interiors_overlap(maze.zones[j]))
          throw MazeParseError(line, "zone overlaps zone " + std::to_string(j));
      maze.zones.push_back(z);
    } else {
      throw MazeParseError(line, "unknown field '" + key + "'");
    }
  }
  if (!have_header) throw MazeParseError(0, "empty file");
  if (!have_bounds) throw MazeParseError(0, "missing 'bounds'");
  if (!have_start) throw MazeParseError(0, "missing 'start'");
  if (!have_exit) throw MazeParseError(0, "missing 'exit'");
  try {
    maze.validate();
  } catch (const std::invalid_argument& e) {
    throw MazeParseError(0, e.what());
  }
  return maze;
}

inline MazeMap load_maze(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open maze file '" + path + "'");
  return parse_maze(in);
}

inline void write_maze(std::ostream& out, const MazeMap& maze) {
  out << "dcil-maze " << kMazeFormatVersion << "\n";
  out << std::setprecision(17);
  out << "name " << maze.name << "\n";
  out << "bounds " << maze.bounds.xmin << ' ' << maze.bounds.ymin << ' ' << maze.bounds.xmax
      << ' ' << maze.bounds.ymax << "\n";
  out << "start " << maze.start.x << ' ' << maze.start.y << ' ' << maze.start.theta << "\n";
  out << "exit " << maze.exit.x << ' ' << maze.exit.y << "\n";
  for (const auto& w : maze.walls)
    out << "wall " << w.x0 << ' ' << w.y0 << ' ' << w.x1 << ' ' << w.y1 << ' ' << w.thickness
        << "\n";
  for (const auto& z : maze.zones)
    out << "zone " << z.xmin << ' ' << z.ymin << ' ' << z.xmax << ' ' << z.ymax << "\n";
}

}  // namespace dcil
