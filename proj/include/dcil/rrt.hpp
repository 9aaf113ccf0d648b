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

// Kinodynamic RRT over the Dubins dynamics. Each expansion picks a random
// goal-space target (the exit with probability goal_bias), takes the tree
// node nearest to it in goal space and applies one uniformly sampled
// constant control for expand_steps environment steps. Extensions that
// collide anywhere are discarded.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcil/env.hpp"
#include "dcil/rng.hpp"
#include "dcil/trajectory.hpp"

namespace dcil {

struct RrtLimits {
  int max_nodes = 50000;
  double goal_bias = 0.1;
  int expand_steps = 10;

  void validate() const {
    if (max_nodes <= 0) throw std::invalid_argument("rrt: max_nodes must be > 0");
    if (!(goal_bias >= 0.0 && goal_bias <= 1.0))
      throw std::invalid_argument("rrt: goal_bias must lie in [0, 1]");
    if (expand_steps <= 0) throw std::invalid_argument("rrt: expand_steps must be > 0");
  }
};

class PlannerFailure : public std::runtime_error {
 public:
  PlannerFailure(int nodes, long attempts)
      : std::runtime_error("rrt: no path found (" + std::to_string(nodes) + " nodes, " +
                           std::to_string(attempts) + " expansions)"),
        nodes_(nodes) {}
  int nodes() const { return nodes_; }

 private:
  int nodes_;
};

namespace detail {

/// Uniform bucket grid for exact nearest-neighbour queries in goal space.
class PointGrid {
 public:
  PointGrid(const Rect& bounds, double cell)
      : bounds_(bounds),
        cell_(cell),
        nx_(std::max(1, static_cast<int>(std::ceil((bounds.xmax - bounds.xmin) / cell)))),
        ny_(std::max(1, static_cast<int>(std::ceil((bounds.ymax - bounds.ymin) / cell)))),
        buckets_(static_cast<std::size_t>(nx_) * ny_) {}

  void insert(int id, double x, double y) {
    buckets_[index(cx(x), cy(y))].push_back({id, x, y});
  }

  /// Nearest point; ties go to the smallest id so results are order-independent.
  int nearest(double x, double y) const {
    const int ix = cx(x);
    const int iy = cy(y);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(nx_, ny_);
    for (int ring = 0; ring <= max_ring; ++ring) {
      // Any point in ring r is at least (r - 1) * cell away.
      if (best >= 0) {
        const double lower = (ring - 1) * cell_;
        if (lower > 0.0 && lower * lower > best_d2) break;
      }
      for (int j = iy - ring; j <= iy + ring; ++j) {
        if (j < 0 || j >= ny_) continue;
        const bool edge_row = (j == iy - ring || j == iy + ring);
        for (int i = ix - ring; i <= ix + ring; i += edge_row ? 1 : 2 * ring) {
          if (i >= 0 && i < nx_) {
            for (const auto& p : buckets_[index(i, j)]) {
              const double d2 = (p.x - x) * (p.x - x) + (p.y - y) * (p.y - y);
              if (d2 < best_d2 || (d2 == best_d2 && p.id < best)) {
                best_d2 = d2;
                best = p.id;
              }
            }
          }
          if (ring == 0) break;
        }
      }
    }
    return best;
  }

 private:
  struct Entry {
    int id;
    double x;
    double y;
  };
  int cx(double x) const {
    return std::clamp(static_cast<int>((x - bounds_.xmin) / cell_), 0, nx_ - 1);
  }
  int cy(double y) const {
    return std::clamp(static_cast<int>((y - bounds_.ymin) / cell_), 0, ny_ - 1);
  }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

  Rect bounds_;
  double cell_;
  int nx_;
  int ny_;
  std::vector<std::vector<Entry>> buckets_;
};

}  // namespace detail

inline Trajectory rrt_plan(const MazeMap& maze, const CarState& start, const GoalXY& exit_goal,
                           const EnvConfig& cfg, std::uint64_t seed,
                           const RrtLimits& limits = {}) {
  cfg.validate();
  limits.validate();
  const CarState root = reset_to(start, maze);

  Trajectory out;
  {
    std::ostringstream cs;
    cs << std::setprecision(17) << "speed=" << cfg.speed << " dt=" << cfg.dt
       << " u_max=" << cfg.u_max << " epsilon_success=" << cfg.epsilon_success;
    out.meta["env"] = cs.str();
    std::ostringstream rs;
    rs << std::setprecision(17) << "max_nodes=" << limits.max_nodes
       << " goal_bias=" << limits.goal_bias << " expand_steps=" << limits.expand_steps;
    out.meta["rrt"] = rs.str();
    out.meta["seed"] = std::to_string(seed);
    out.meta["maze"] = maze.name;
  }

  if (is_success(root, exit_goal, cfg)) {
    out.states.push_back(root);
    return out;
  }

  struct Node {
    int parent;
    std::vector<CarState> segment;  // states after each step; back() is the node state
  };
  std::vector<Node> nodes;
  nodes.push_back({-1, {root}});
  detail::PointGrid grid(maze.bounds, 0.25);
  grid.insert(0, root.x, root.y);

  auto build = [&](int leaf, std::size_t cut) {
    std::vector<const Node*> chain;
    for (int n = leaf; n >= 0; n = nodes[n].parent) chain.push_back(&nodes[n]);
    out.states.push_back(root);
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
      const auto& seg = (*it)->segment;
      const std::size_t n = (it + 1 == chain.rend()) ? cut : seg.size();
      out.states.insert(out.states.end(), seg.begin(), seg.begin() + n);
    }
  };

  Rng rng = make_rng(seed, Stream::kPlanner);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sx(maze.bounds.xmin, maze.bounds.xmax);
  std::uniform_real_distribution<double> sy(maze.bounds.ymin, maze.bounds.ymax);
  std::uniform_real_distribution<double> control(-1.0, 1.0);

  const long max_attempts = 20L * limits.max_nodes;
  long attempts = 0;
  while (static_cast<int>(nodes.size()) < limits.max_nodes && attempts < max_attempts) {
    ++attempts;
    GoalXY target = exit_goal;
    if (unit(rng) >= limits.goal_bias) target = {sx(rng), sy(rng)};
    const int near = grid.nearest(target.x, target.y);
    const double a = control(rng);

    std::vector<CarState> seg;
    seg.reserve(limits.expand_steps);
    CarState s = nodes[near].segment.back();
    bool ok = true;
    std::size_t reached = 0;
    for (int k = 0; k < limits.expand_steps; ++k) {
      const StepResult r = step(s, a, cfg, maze);
      if (r.collided) {
        ok = false;
        break;
      }
      s = r.state;
      seg.push_back(s);
      if (is_success(s, exit_goal, cfg)) {
        reached = seg.size();
        break;
      }
    }
    if (!ok) continue;
    nodes.push_back({near, std::move(seg)});
    const int id = static_cast<int>(nodes.size()) - 1;
    if (reached > 0) {
      build(id, reached);
      out.meta["nodes"] = std::to_string(nodes.size());
      return out;
    }
    grid.insert(id, s.x, s.y);
  }
  throw PlannerFailure(static_cast<int>(nodes.size()), attempts);
}

}  // namespace dcil
