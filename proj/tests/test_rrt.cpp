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

#include <gtest/gtest.h>

#include <cmath>

#include "dcil/mazes.hpp"
#include "dcil/rrt.hpp"

namespace dcil {
namespace {

MazeMap straight_corridor() {
  MazeMap m;
  m.name = "corridor";
  m.bounds = {0.0, 0.0, 3.6, 1.0};
  m.zones = {{0.0, 0.0, 3.6, 1.0}};
  m.start = {0.3, 0.5, 0.0};
  m.exit = {3.3, 0.5};
  return m;
}

// Consecutive states must be exactly one collision-free step apart.
void expect_feasible(const Trajectory& t, const MazeMap& m, const EnvConfig& env) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    ASSERT_TRUE(m.point_free(t.states[i].x, t.states[i].y)) << "state " << i;
    if (i == 0) continue;
    const auto& a = t.states[i - 1];
    const auto& b = t.states[i];
    EXPECT_NEAR(std::hypot(b.x - a.x, b.y - a.y), env.step_length(), 1e-12) << "state " << i;
    EXPECT_LE(std::abs(wrap_angle(b.theta - a.theta)), env.u_max * env.dt + 1e-12);
  }
}

TEST(RrtTest, StraightCorridorLengthMatchesPathOverStep) {
  const MazeMap m = straight_corridor();
  const EnvConfig env;
  // 3 units at 0.05 per step: about 60 states.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Trajectory t = rrt_plan(m, m.start, m.exit, env, seed);
    EXPECT_GE(t.size(), 48u) << "seed " << seed;
    EXPECT_LE(t.size(), 72u) << "seed " << seed;
    expect_feasible(t, m, env);
  }
}

TEST(RrtTest, StartAtGoalGivesSingleState) {
  const MazeMap m = straight_corridor();
  const Trajectory t = rrt_plan(m, m.start, {m.start.x + 0.1, m.start.y}, EnvConfig{}, 1);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.states[0], m.start);
}

TEST(RrtTest, SameSeedIsBitIdentical) {
  const MazeMap m = canonical_maze();
  const EnvConfig env;
  const Trajectory a = rrt_plan(m, m.start, m.exit, env, 7);
  const Trajectory b = rrt_plan(m, m.start, m.exit, env, 7);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.meta, b.meta);
  const Trajectory c = rrt_plan(m, m.start, m.exit, env, 8);
  EXPECT_NE(a.states, c.states);
}

TEST(RrtTest, CanonicalMazeDemosAreValid) {
  const MazeMap m = canonical_maze();
  const EnvConfig env;
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Trajectory t;
    try {
      t = rrt_plan(m, m.start, m.exit, env, seed);
    } catch (const PlannerFailure&) {
      continue;
    }
    ++solved;
    EXPECT_EQ(t.states.front(), m.start);
    EXPECT_TRUE(is_success(t.states.back(), m.exit, env));
    // Only the final state may be within the success radius.
    for (std::size_t i = 0; i + 1 < t.size(); ++i) EXPECT_FALSE(is_success(t.states[i], m.exit, env));
    EXPECT_GE(goal_arc_length(t), goal_distance(project_goal(m.start), m.exit));
    expect_feasible(t, m, env);
    // Replaying the recovered controls reproduces the demonstration.
    const auto controls = recover_controls(t, env);
    CarState s = t.states.front();
    for (std::size_t i = 0; i < controls.size(); ++i) {
      s = step(s, controls[i], env, m).state;
      ASSERT_NEAR(s.x, t.states[i + 1].x, 1e-9);
      ASSERT_NEAR(s.y, t.states[i + 1].y, 1e-9);
    }
    EXPECT_EQ(zone_of(t.states.front(), m), 0);
    EXPECT_EQ(zone_of(t.states.back(), m), 22);
  }
  EXPECT_GE(solved, 9);
}

TEST(RrtTest, NodeBudgetExhaustionIsReported) {
  const MazeMap m = canonical_maze();
  RrtLimits lim;
  lim.max_nodes = 10;
  try {
    rrt_plan(m, m.start, m.exit, EnvConfig{}, 1, lim);
    FAIL() << "expected planner failure";
  } catch (const PlannerFailure& e) {
    EXPECT_LE(e.nodes(), 10);
  }
}

TEST(RrtTest, InvalidInputsAreRejected) {
  const MazeMap m = canonical_maze();
  RrtLimits lim;
  lim.goal_bias = 1.5;
  EXPECT_THROW(rrt_plan(m, m.start, m.exit, EnvConfig{}, 1, lim), std::invalid_argument);
  EXPECT_THROW(rrt_plan(m, {2.5, 2.0, 0.0}, m.exit, EnvConfig{}, 1), std::invalid_argument);
}

}  // namespace
}  // namespace dcil
