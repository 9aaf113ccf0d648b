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

#include <memory>
#include <sstream>

#include "dcil/mazes.hpp"
#include "dcil/rrt.hpp"
#include "dcil/trainer.hpp"

namespace dcil {
namespace {

MazeMap corridor() {
  MazeMap m;
  m.name = "corridor";
  m.bounds = {0.0, 0.0, 3.6, 1.0};
  m.zones = {{0.0, 0.0, 1.2, 1.0}, {1.2, 0.0, 2.4, 1.0}, {2.4, 0.0, 3.6, 1.0}};
  m.start = {0.3, 0.5, 0.0};
  m.exit = {3.3, 0.5};
  return m;
}

// Straight demonstration along the corridor's centre line.
Trajectory corridor_demo(const EnvConfig& env) {
  Trajectory t;
  for (int i = 0; i <= 60; ++i) t.states.push_back({0.3 + env.step_length() * i, 0.5, 0.0});
  return t;
}

// Zone lookup written against the rectangles directly.
int highest_zone(const std::vector<CarState>& states, const MazeMap& m) {
  int best = -1;
  for (const auto& s : states)
    for (std::size_t z = 0; z < m.zones.size(); ++z) {
      const Rect& r = m.zones[z];
      if (s.x >= r.xmin && s.x < r.xmax && s.y >= r.ymin && s.y < r.ymax)
        best = std::max(best, static_cast<int>(z));
    }
  return best;
}

TrainConfig small_config(std::uint64_t seed) {
  TrainConfig c;
  c.seed = seed;
  c.sac.hidden = {32, 32};
  c.sac.batch_size = 32;
  c.warmup = 64;
  c.eval_period = 100;
  return c;
}

struct CanonicalSetup {
  MazeMap maze = canonical_maze();
  EnvConfig env;
  Trajectory demo;
  SkillChain chain;
  CanonicalSetup() {
    demo = rrt_plan(maze, maze.start, maze.exit, env, 3);
    chain = extract_skills(demo, goal_arc_length(demo) / 10.0, 1.25);
  }
};

// Policy replaying a fixed control sequence, then driving straight.
Policy replay_policy(const std::vector<double>& controls, std::size_t limit) {
  auto i = std::make_shared<std::size_t>(0);
  return [controls, limit, i](const CarState&, const GoalXY&) {
    const std::size_t k = (*i)++;
    return k < limit && k < controls.size() ? controls[k] : 0.0;
  };
}

TEST(TrainTest, ZeroBudgetGivesEmptyReport) {
  const MazeMap m = corridor();
  TrainConfig c = small_config(1);
  c.budget = 0;
  const TrainReport r = train(c, m, extract_skills(corridor_demo(c.env), 1.5, 1.25));
  EXPECT_TRUE(r.evals.empty());
  EXPECT_EQ(r.env_steps, 0);
  EXPECT_EQ(r.episodes, 0);
  EXPECT_FALSE(r.first_solve_step);
}

TEST(TrainTest, SkillSolvedAtResetRecordsOneSuccess) {
  const MazeMap m = corridor();
  SkillChain chain;
  Skill s;
  s.s0 = m.start;
  s.goal = project_goal(m.start);
  s.t_max = 5;
  chain.skills = {s};
  TrainConfig c = small_config(1);
  c.max_episodes = 1;
  const TrainReport r = train(c, m, chain);
  EXPECT_EQ(r.env_steps, 0);
  EXPECT_EQ(r.stats.trials[0], 1);
  EXPECT_EQ(r.stats.successes[0], 1);
}

TEST(TrainTest, InteractionAccountingIsExact) {
  const MazeMap m = corridor();
  TrainConfig c = small_config(2);
  c.budget = 700;
  const TrainReport r = train(c, m, extract_skills(corridor_demo(c.env), 1.5, 1.25));
  EXPECT_EQ(r.env_steps, 700);
  // One update per stored transition once the buffer holds `warmup` of them.
  EXPECT_EQ(r.updates, 700 - c.warmup + 1);
  ASSERT_FALSE(r.evals.empty());
  EXPECT_EQ(r.evals.front().step, 0);
  EXPECT_EQ(r.evals.back().step, 700);
  for (std::size_t i = 1; i < r.evals.size(); ++i) EXPECT_GT(r.evals[i].step, r.evals[i - 1].step);
}

TEST(TrainTest, WithoutOvershootEveryTrialIsAnEpisode) {
  const MazeMap m = corridor();
  TrainConfig c = small_config(3);
  c.budget = 2000;
  c.disable_overshoot = true;
  const SkillChain chain = extract_skills(corridor_demo(c.env), 0.75, 1.25);
  const TrainReport r = train(c, m, chain);
  long trials = 0;
  for (long t : r.stats.trials) trials += t;
  // The episode cut off by the budget records no outcome.
  EXPECT_GE(trials, r.episodes - 1);
  EXPECT_LE(trials, r.episodes);
}

TEST(TrainTest, EvaluationDoesNotPerturbTraining) {
  const MazeMap m = corridor();
  const SkillChain chain = extract_skills(corridor_demo(EnvConfig{}), 1.5, 1.25);
  TrainConfig a = small_config(4);
  a.budget = 600;
  TrainConfig b = a;
  b.eval_period = 7;
  Agent agent_a, agent_b;
  const TrainReport ra = train(a, m, chain, {}, &agent_a);
  const TrainReport rb = train(b, m, chain, {}, &agent_b);
  EXPECT_EQ(ra.env_steps, rb.env_steps);
  EXPECT_EQ(ra.stats.trials, rb.stats.trials);
  for (double x : {0.4, 1.0, 2.2})
    EXPECT_EQ(agent_a.deterministic_action({x, 0.5, 0.1}, {3.0, 0.5}),
              agent_b.deterministic_action({x, 0.5, 0.1}, {3.0, 0.5}));
}

TEST(TrainTest, SameSeedGivesIdenticalMetrics) {
  const MazeMap m = corridor();
  const SkillChain chain = extract_skills(corridor_demo(EnvConfig{}), 1.5, 1.25);
  auto run = [&] {
    TrainConfig c = small_config(5);
    c.budget = 800;
    const TrainReport r = train(c, m, chain);
    std::ostringstream out;
    write_metrics_header(out, chain.size());
    for (const auto& p : r.evals) write_metrics_row(out, p);
    return out.str();
  };
  const std::string first = run();
  EXPECT_EQ(first, run());
  EXPECT_NE(first.find("step,skill_success_ratio_0,skill_success_ratio_1,chain_solved,max_zone"),
            std::string::npos);
}

TEST(TrainTest, RejectsInvalidConfig) {
  const MazeMap m = corridor();
  TrainConfig c = small_config(1);
  c.eval_period = 0;
  EXPECT_THROW(train(c, m, extract_skills(corridor_demo(c.env), 1.5, 1.25)), std::invalid_argument);
  EXPECT_THROW(train(small_config(1), m, SkillChain{}), std::invalid_argument);
}

// Two skills along a straight corridor: full DCIL chains them within 20k
// interactions in at least 4 of 5 seeds.
TEST(TrainTest, TwoSkillCorridorIsSolved) {
  const MazeMap m = corridor();
  const SkillChain chain = extract_skills(corridor_demo(EnvConfig{}), 1.5, 1.25);
  ASSERT_EQ(chain.size(), 2u);
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TrainConfig c;
    c.seed = seed;
    c.budget = 20000;
    c.stop_on_solve = true;
    const TrainReport r = train(c, m, chain);
    EXPECT_FALSE(r.diverged) << r.divergence_message;
    solved += r.first_solve_step.has_value();
  }
  EXPECT_GE(solved, 4);
}

TEST(EvaluateChainTest, DemonstrationReplaySolvesTheMaze) {
  const CanonicalSetup cs;
  const auto controls = recover_controls(cs.demo, cs.env);
  const EvalResult r =
      evaluate_chain(replay_policy(controls, controls.size()), cs.chain, cs.maze, cs.env);
  EXPECT_TRUE(r.solved);
  EXPECT_EQ(r.skills_completed, static_cast<int>(cs.chain.size()));
  EXPECT_EQ(r.max_zone, 22);
  EXPECT_EQ(r.max_zone, highest_zone(r.trajectory, cs.maze));
}

// Following the demonstration through skill 0 and then holding a = 0: the
// reported progress matches an independent simulation of the same gates.
TEST(EvaluateChainTest, FirstSkillOnlyStub) {
  const CanonicalSetup cs;
  const auto controls = recover_controls(cs.demo, cs.env);
  const std::size_t n0 = static_cast<std::size_t>(cs.chain[0].demo_steps());
  const EvalResult r = evaluate_chain(replay_policy(controls, n0), cs.chain, cs.maze, cs.env);
  EXPECT_FALSE(r.solved);
  EXPECT_EQ(r.skills_completed, 1);

  std::vector<CarState> sim{cs.demo.states[0]};
  CarState s = sim.back();
  std::size_t k = 0;
  while (std::hypot(s.x - cs.chain[0].goal.x, s.y - cs.chain[0].goal.y) > cs.env.epsilon_success) {
    s = step(s, controls[k++], cs.env, cs.maze).state;
    sim.push_back(s);
  }
  for (int t = 0; t < cs.chain[1].t_max; ++t) {
    s = step(s, k < n0 ? controls[k++] : 0.0, cs.env, cs.maze).state;
    sim.push_back(s);
  }
  EXPECT_EQ(r.trajectory.size(), sim.size());
  EXPECT_EQ(r.max_zone, highest_zone(sim, cs.maze));
}

TEST(EvaluateChainTest, UntrainedAgentDoesNotSolve) {
  const CanonicalSetup cs;
  Rng rng(1);
  const Agent agent(SacConfig{}, FeatureScaling::from_bounds(cs.maze.bounds), rng);
  const EvalResult r = evaluate_chain(deterministic_policy(agent), cs.chain, cs.maze, cs.env);
  EXPECT_FALSE(r.solved);
  EXPECT_LE(r.max_zone, 3);
}

}  // namespace
}  // namespace dcil
