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

// Dubins-car maze: state, goal space, collision geometry and dynamics.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcil {

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double theta) {
  double w = std::remainder(theta, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

struct CarState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  friend bool operator==(const CarState&, const CarState&) = default;
};

struct GoalXY {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const GoalXY&, const GoalXY&) = default;
};

inline GoalXY project_goal(const CarState& s) { return {s.x, s.y}; }

inline double goal_distance(const GoalXY& a, const GoalXY& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct EnvConfig {
  double speed = 0.5;
  double dt = 0.1;
  double u_max = 1.0;
  double epsilon_success = 0.2;

  void validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(speed)) throw std::invalid_argument("env: speed must be > 0");
    if (!positive(dt)) throw std::invalid_argument("env: dt must be > 0");
    if (!positive(u_max)) throw std::invalid_argument("env: u_max must be > 0");
    if (!positive(epsilon_success))
      throw std::invalid_argument("env: epsilon_success must be > 0");
  }

  double step_length() const { return speed * dt; }
};

/// Success test in goal space: L2 distance within epsilon_success.
inline bool is_success(const CarState& s, const GoalXY& g, const EnvConfig& cfg) {
  return goal_distance(project_goal(s), g) <= cfg.epsilon_success;
}

/// Axis-aligned rectangle; contains() is half-open so tilings stay disjoint.
struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool contains(double x, double y) const {
    return x >= xmin && x < xmax && y >= ymin && y < ymax;
  }
  bool contains_closed(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
  bool interiors_overlap(const Rect& o) const {
    return xmin < o.xmax && o.xmin < xmax && ymin < o.ymax && o.ymin < ymax;
  }
  bool valid() const {
    return std::isfinite(xmin) && std::isfinite(ymin) && std::isfinite(xmax) &&
           std::isfinite(ymax) && xmin < xmax && ymin < ymax;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Axis-aligned wall segment with thickness. The solid region spans the
/// segment along its axis and thickness/2 on either side across it.
struct Wall {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
  double thickness = 0.1;

  Rect solid() const {
    const double h = 0.5 * thickness;
    if (y0 == y1) {
      return {std::min(x0, x1), y0 - h, std::max(x0, x1), y0 + h};
    }
    return {x0 - h, std::min(y0, y1), x0 + h, std::max(y0, y1)};
  }

  friend bool operator==(const Wall&, const Wall&) = default;
};

/// True iff the closed segment p->q touches the closed rectangle r
/// (Liang-Barsky clipping).
inline bool segment_hits_rect(double px, double py, double qx, double qy,
                              const Rect& r) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = qx - px;
  const double dy = qy - py;
  auto clip = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;
    const double t = q / p;
    if (p < 0.0) {
      if (t > t1) return false;
      t0 = std::max(t0, t);
    } else {
      if (t < t0) return false;
      t1 = std::min(t1, t);
    }
    return true;
  };
  return clip(-dx, px - r.xmin) && clip(dx, r.xmax - px) &&
         clip(-dy, py - r.ymin) && clip(dy, r.ymax - py);
}

struct MazeMap {
  std::string name = "maze";
  Rect bounds{0.0, 0.0, 1.0, 1.0};
  std::vector<Wall> walls;
  std::vector<Rect> zones;
  CarState start;
  GoalXY exit;

  bool inside_bounds(double x, double y) const { return bounds.contains_closed(x, y); }

  bool point_in_wall(double x, double y) const {
    return std::any_of(walls.begin(), walls.end(),
                       [&](const Wall& w) { return w.solid().contains_closed(x, y); });
  }

  bool point_free(double x, double y) const {
    return inside_bounds(x, y) && !point_in_wall(x, y);
  }

  bool segment_free(double px, double py, double qx, double qy) const {
    if (!inside_bounds(qx, qy) || !inside_bounds(px, py)) return false;
    return std::none_of(walls.begin(), walls.end(), [&](const Wall& w) {
      return segment_hits_rect(px, py, qx, qy, w.solid());
    });
  }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const {
    if (!bounds.valid()) throw std::invalid_argument("maze: degenerate bounds");
    for (std::size_t i = 0; i < walls.size(); ++i) {
      const Wall& w = walls[i];
      const bool axis = (w.x0 == w.x1) != (w.y0 == w.y1);
      if (!axis || !(w.thickness > 0.0) || !std::isfinite(w.thickness))
        throw std::invalid_argument("maze: wall " + std::to_string(i) +
                                    " is not an axis-aligned segment with thickness");
    }
    if (zones.empty()) throw std::invalid_argument("maze: no zones");
    for (std::size_t i = 0; i < zones.size(); ++i) {
      if (!zones[i].valid())
        throw std::invalid_argument("maze: zone " + std::to_string(i) + " is degenerate");
      for (std::size_t j = 0; j < i; ++j)
        if (zones[i].interiors_overlap(zones[j]))
          throw std::invalid_argument("maze: zones " + std::to_string(j) + " and " +
                                      std::to_string(i) + " overlap");
    }
    if (!point_free(start.x, start.y))
      throw std::invalid_argument("maze: start state is not collision-free");
    if (!std::isfinite(exit.x) || !std::isfinite(exit.y) || !point_free(exit.x, exit.y))
      throw std::invalid_argument("maze: exit goal is not in free space");
    if (!zones.front().contains(start.x, start.y))
      throw std::invalid_argument("maze: first zone must contain the start state");
    if (!zones.back().contains(exit.x, exit.y))
      throw std::invalid_argument("maze: last zone must contain the exit goal");
  }
};

struct StepResult {
  CarState state;
  bool collided = false;
};

/// One Euler step of the Dubins car. On collision the heading still updates
/// and the position is frozen.
inline StepResult step(const CarState& s, double action, const EnvConfig& cfg,
                       const MazeMap& maze) {
  if (!std::isfinite(action)) throw std::invalid_argument("step: non-finite action");
  if (action < -1.0 || action > 1.0)
    throw std::invalid_argument("step: action outside [-1, 1]");
  StepResult out;
  out.state.theta = wrap_angle(s.theta + action * cfg.u_max * cfg.dt);
  const double nx = s.x + cfg.speed * std::cos(out.state.theta) * cfg.dt;
  const double ny = s.y + cfg.speed * std::sin(out.state.theta) * cfg.dt;
  if (maze.segment_free(s.x, s.y, nx, ny)) {
    out.state.x = nx;
    out.state.y = ny;
  } else {
    out.state.x = s.x;
    out.state.y = s.y;
    out.collided = true;
  }
  return out;
}

/// The environment holds no hidden state: resetting returns s0 unchanged.
inline CarState reset_to(const CarState& s0, const MazeMap& maze) {
  if (!std::isfinite(s0.x) || !std::isfinite(s0.y) || !std::isfinite(s0.theta))
    throw std::invalid_argument("reset_to: non-finite state");
  if (!maze.point_free(s0.x, s0.y))
    throw std::invalid_argument("reset_to: state intersects a wall or leaves the maze");
  return {s0.x, s0.y, wrap_angle(s0.theta)};
}

inline std::optional<int> zone_of(const CarState& s, const MazeMap& maze) {
  for (std::size_t i = 0; i < maze.zones.size(); ++i)
    if (maze.zones[i].contains(s.x, s.y)) return static_cast<int>(i);
  return std::nullopt;
}

}  // namespace dcil
