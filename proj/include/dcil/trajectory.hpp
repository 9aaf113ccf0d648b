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

// Demonstration trajectories and their text format.
//
//   # dcil-trajectory 1
//   # <key> <value>          metadata (seed, maze, config snapshot)
//   # states <N>
//   x y theta                N records, 17 significant digits

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcil/env.hpp"

namespace dcil {

inline constexpr int kTrajectoryFormatVersion = 1;

struct Trajectory {
  std::vector<CarState> states;
  std::map<std::string, std::string> meta;

  std::size_t size() const { return states.size(); }
};

/// Polyline length of the trajectory projected into goal space.
inline double goal_arc_length(const Trajectory& t) {
  double len = 0.0;
  for (std::size_t i = 1; i < t.states.size(); ++i)
    len += goal_distance(project_goal(t.states[i - 1]), project_goal(t.states[i]));
  return len;
}

/// Controls that reproduce each heading change, clamped to [-1, 1].
/// The demonstration file stores states only; this is used by replay oracles.
inline std::vector<double> recover_controls(const Trajectory& t, const EnvConfig& cfg) {
  std::vector<double> a;
  a.reserve(t.states.empty() ? 0 : t.states.size() - 1);
  for (std::size_t i = 1; i < t.states.size(); ++i) {
    const double dtheta = wrap_angle(t.states[i].theta - t.states[i - 1].theta);
    a.push_back(std::clamp(dtheta / (cfg.u_max * cfg.dt), -1.0, 1.0));
  }
  return a;
}

/// Parse failure. record() is the zero-based index of the offending state
/// record, or -1 for header problems.
class TrajectoryParseError : public std::runtime_error {
 public:
  TrajectoryParseError(long record, const std::string& what)
      : std::runtime_error(what), record_(record) {}
  long record() const { return record_; }

 private:
  long record_;
};

inline void write_trajectory(std::ostream& out, const Trajectory& t) {
  out << "# dcil-trajectory " << kTrajectoryFormatVersion << "\n";
  for (const auto& [k, v] : t.meta) out << "# " << k << ' ' << v << "\n";
  out << "# states " << t.states.size() << "\n";
  out << std::setprecision(17);
  for (const auto& s : t.states) out << s.x << ' ' << s.y << ' ' << s.theta << "\n";
}

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace detail

inline Trajectory parse_trajectory(std::istream& in) {
  Trajectory t;
  std::string line;
  bool header = false;
  long expected = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key;
      if (!(ls >> key)) continue;
      std::string value;
      std::getline(ls >> std::ws, value);
      if (!header) {
        if (key != "dcil-trajectory" || value != std::to_string(kTrajectoryFormatVersion))
          throw TrajectoryParseError(-1, "trajectory: expected '# dcil-trajectory " +
                                             std::to_string(kTrajectoryFormatVersion) + "'");
        header = true;
      } else if (key == "states") {
        try {
          expected = std::stol(value);
        } catch (const std::exception&) {
          throw TrajectoryParseError(-1, "trajectory: bad state count '" + value + "'");
        }
        if (expected < 0) throw TrajectoryParseError(-1, "trajectory: negative state count");
      } else {
        t.meta[key] = value;
      }
      continue;
    }
    const long index = static_cast<long>(t.states.size());
    if (!header) throw TrajectoryParseError(index, "trajectory: missing header");
    std::istringstream ls(line);
    std::string tok;
    double v[3];
    int n = 0;
    while (ls >> tok) {
      if (n == 3 || !detail::parse_double(tok, v[n]))
        throw TrajectoryParseError(index, "trajectory: record " + std::to_string(index) +
                                              " is malformed");
      ++n;
    }
    if (n != 3)
      throw TrajectoryParseError(index, "trajectory: record " + std::to_string(index) +
                                            " has " + std::to_string(n) + " fields, expected 3");
    if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2]))
      throw TrajectoryParseError(index, "trajectory: record " + std::to_string(index) +
                                            " has a non-finite coordinate");
    t.states.push_back({v[0], v[1], v[2]});
  }
  if (!header) throw TrajectoryParseError(-1, "trajectory: empty file");
  if (expected < 0) throw TrajectoryParseError(-1, "trajectory: missing '# states' count");
  if (static_cast<long>(t.states.size()) != expected) {
    const long last = static_cast<long>(t.states.size()) - 1;
    throw TrajectoryParseError(
        last, "trajectory: truncated, expected " + std::to_string(expected) +
                  " records, last valid record is " + std::to_string(last));
  }
  return t;
}

inline void save_trajectory(const Trajectory& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trajectory '" + path + "'");
  write_trajectory(out, t);
  if (!out) throw std::runtime_error("error while writing trajectory '" + path + "'");
}

inline Trajectory load_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory '" + path + "'");
  return parse_trajectory(in);
}

}  // namespace dcil
