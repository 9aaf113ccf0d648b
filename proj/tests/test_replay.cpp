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
#include <random>

#include "dcil/replay.hpp"

namespace dcil {
namespace {

const EnvConfig kEnv;

Transition make_transition(long episode, int step, double x, int skill = 0) {
  Transition t;
  t.s = {x, 0.0, 0.0};
  t.s_next = {x + 0.05, 0.0, 0.0};
  t.a = 0.0;
  t.g = {100.0, 0.0};
  t.skill_index = skill;
  t.episode_id = episode;
  t.step_in_episode = step;
  return t;
}

// Pushes `n` consecutive transitions of one episode moving along +x.
void push_episode(ReplayBuffer& buf, long episode, int n, double x0 = 0.0) {
  for (int i = 0; i < n; ++i) buf.push(make_transition(episode, i, x0 + 0.05 * i));
}

SkillChain three_skill_chain() {
  SkillChain c;
  for (int i = 0; i < 3; ++i) {
    Skill s;
    s.index = i;
    s.goal = {1.0 + i, 0.0};
    s.t_max = 10;
    c.skills.push_back(s);
  }
  return c;
}

ValueQuery constant_value(double v) {
  return [v](const std::vector<CarState>& s, const std::vector<GoalXY>&) {
    return std::vector<double>(s.size(), v);
  };
}

TEST(ReplayBufferTest, SingleElementSamplesItself) {
  ReplayBuffer buf(4);
  buf.push(make_transition(0, 0, 1.5));
  Rng rng(1);
  EXPECT_EQ(buf.sample(rng).s.x, 1.5);
}

TEST(ReplayBufferTest, EvictsOldestFirst) {
  ReplayBuffer buf(2);
  buf.push(make_transition(0, 0, 1.0));
  buf.push(make_transition(0, 1, 2.0));
  buf.push(make_transition(0, 2, 3.0));
  ASSERT_EQ(buf.size(), 2u);
  EXPECT_EQ(buf[0].s.x, 2.0);
  EXPECT_EQ(buf[1].s.x, 3.0);
  EXPECT_THROW(buf.future_range(0, 0), std::out_of_range);
  EXPECT_EQ(buf.future_range(0, 1).second - buf.future_range(0, 1).first, 1u);
}

TEST(ReplayBufferTest, RejectsNonZeroRewardAndGaps) {
  ReplayBuffer buf(8);
  Transition t = make_transition(0, 0, 0.0);
  t.r = 1.0;
  EXPECT_THROW(buf.push(t), std::invalid_argument);
  buf.push(make_transition(0, 0, 0.0));
  EXPECT_THROW(buf.push(make_transition(0, 2, 0.0)), std::invalid_argument);
  buf.push(make_transition(1, 0, 0.0));
  EXPECT_THROW(buf.push(make_transition(0, 1, 0.0)), std::invalid_argument);
}

// Property: after random pushes through a small ring, the episode index only
// references stored transitions.
TEST(ReplayBufferTest, EpisodeIndexStaysConsistent) {
  Rng rng(2);
  std::uniform_int_distribution<int> len(1, 12);
  ReplayBuffer buf(37);
  for (long ep = 0; ep < 300; ++ep) {
    push_episode(buf, ep, len(rng));
    ASSERT_TRUE(buf.index_consistent()) << "episode " << ep;
  }
  EXPECT_LE(buf.num_episodes(), 37u);
  EXPECT_FALSE(buf.has_episode(0));
  EXPECT_TRUE(buf.has_episode(299));
}

TEST(ReplayBufferTest, SamplingIsUniform) {
  ReplayBuffer buf(10);
  push_episode(buf, 0, 10);
  Rng rng(3);
  std::vector<int> counts(10, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[buf.sample(rng).step_in_episode];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.1, 0.01);
}

TEST(HerTest, SelfRelabelIsASuccess) {
  ReplayBuffer buf(4);
  push_episode(buf, 0, 1);
  Rng rng(4);
  const Transition r = relabel_her(buf[0], buf, kEnv, rng);
  EXPECT_EQ(r.g, project_goal(buf[0].s_next));
  EXPECT_TRUE(r.success);
  EXPECT_TRUE(r.done);
  EXPECT_EQ(r.r, 1.0);
}

TEST(HerTest, FarFutureGoalIsAFailure) {
  ReplayBuffer buf(64);
  push_episode(buf, 0, 40);
  Rng rng(5);
  bool saw_failure = false;
  for (int i = 0; i < 200; ++i) {
    const Transition r = relabel_her(buf[0], buf, kEnv, rng);
    const double d = goal_distance(project_goal(buf[0].s_next), r.g);
    if (d > kEnv.epsilon_success) {
      saw_failure = true;
      EXPECT_FALSE(r.success);
      EXPECT_EQ(r.r, 0.0);
    }
  }
  EXPECT_TRUE(saw_failure);
}

TEST(HerTest, FutureStepsAreChosenUniformly) {
  ReplayBuffer buf(64);
  push_episode(buf, 0, 10);
  push_episode(buf, 1, 10, 5.0);
  Rng rng(6);
  std::vector<int> counts(10, 0);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const Transition r = relabel_her(buf[0], buf, kEnv, rng);
    const int k = static_cast<int>(std::lround((r.g.x - 0.05) / 0.05));
    ASSERT_GE(k, 0);
    ASSERT_LT(k, 10);
    ++counts[static_cast<std::size_t>(k)];
  }
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.1, 0.03);
}

TEST(HerTest, OnlyFutureStepsOfTheSameEpisode) {
  ReplayBuffer buf(64);
  push_episode(buf, 0, 10);
  push_episode(buf, 1, 10, 5.0);
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Transition r = relabel_her(buf[6], buf, kEnv, rng);
    EXPECT_GE(r.g.x, buf[6].s_next.x - 1e-12);
    EXPECT_LE(r.g.x, buf[9].s_next.x + 1e-12);
  }
}

// 10^4 random relabelled transitions: the finalized reward equals a direct
// evaluation of the sparse reward on the relabelled goal.
TEST(FinalizeBatchTest, HerRewardsMatchSparseRewardOracle) {
  Rng gen(8);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  ReplayBuffer buf(5000);
  for (long ep = 0; ep < 200; ++ep) {
    CarState s{0.0, 0.0, 0.0};
    for (int i = 0; i < 20; ++i) {
      Transition t;
      t.s = s;
      t.s_next = {s.x + u(gen) * 0.3, s.y + u(gen) * 0.3, 0.0};
      t.g = {u(gen), u(gen)};
      t.success = is_success(t.s_next, t.g, kEnv);
      t.done = t.success;
      t.episode_id = ep;
      t.step_in_episode = i;
      buf.push(t);
      s = t.s_next;
    }
  }
  FinalizeOptions opt;
  opt.batch_size = 200;
  Rng rng(9);
  long checked = 0, positives = 0;
  while (checked < 10000) {
    const FinalizedBatch b = finalize_batch(buf, three_skill_chain(), kEnv, opt, constant_value(0.0), rng);
    for (std::size_t i = 0; i < b.samples.size(); ++i) {
      if (!b.tags[i].her) continue;
      const SacSample& s = b.samples[i];
      const double dx = s.s_next.x - s.g.x;
      const double dy = s.s_next.y - s.g.y;
      const double oracle = std::sqrt(dx * dx + dy * dy) <= kEnv.epsilon_success ? 1.0 : 0.0;
      ASSERT_EQ(s.reward, oracle);
      ASSERT_EQ(s.terminal, oracle == 1.0);
      positives += oracle == 1.0;
      ++checked;
    }
  }
  EXPECT_GT(positives, 0);
  EXPECT_LT(positives, checked);
}

// Buffer of success transitions with skill indices 0..2 under a stubbed value.
ReplayBuffer success_buffer() {
  ReplayBuffer buf(64);
  for (int k = 0; k < 3; ++k) {
    Transition t = make_transition(k, 0, 0.0, k);
    t.g = project_goal(t.s_next);
    t.success = t.done = true;
    buf.push(t);
  }
  Transition f = make_transition(3, 0, 0.0, 1);
  buf.push(f);
  return buf;
}

TEST(FinalizeBatchTest, BonusUsesStubbedValueAndClamp) {
  const ReplayBuffer buf = success_buffer();
  const SkillChain chain = three_skill_chain();
  FinalizeOptions opt;
  opt.batch_size = 400;
  for (double v : {0.0, 3.5, -2.0, 1e6}) {
    Rng rng(10);
    const FinalizedBatch b = finalize_batch(buf, chain, kEnv, opt, constant_value(v), rng);
    const double clamped = std::clamp(v, 0.0, 1.0 / (1.0 - opt.gamma));
    for (std::size_t i = 0; i < b.samples.size(); ++i) {
      const SacSample& s = b.samples[i];
      EXPECT_GE(s.reward, 0.0);
      EXPECT_LE(s.reward, 1.0 + 1.0 / (1.0 - opt.gamma) + 1e-12);
      if (b.tags[i].her) {
        EXPECT_FALSE(b.tags[i].bonus);
        continue;
      }
      if (!s.terminal) {
        EXPECT_EQ(s.reward, 0.0);
        EXPECT_FALSE(b.tags[i].bonus);
      } else if (b.tags[i].bonus) {
        EXPECT_DOUBLE_EQ(s.reward, 1.0 + clamped);
        EXPECT_DOUBLE_EQ(b.tags[i].bonus_value, clamped);
      } else {
        EXPECT_EQ(s.reward, 1.0);  // final skill: no successor
      }
    }
  }
}

TEST(FinalizeBatchTest, BonusQueriesTheNextSkillGoal) {
  const ReplayBuffer buf = success_buffer();
  const SkillChain chain = three_skill_chain();
  std::vector<GoalXY> seen;
  const ValueQuery spy = [&](const std::vector<CarState>& s, const std::vector<GoalXY>& g) {
    seen.insert(seen.end(), g.begin(), g.end());
    return std::vector<double>(s.size(), 0.0);
  };
  Rng rng(11);
  FinalizeOptions opt;
  opt.batch_size = 200;
  const FinalizedBatch b = finalize_batch(buf, chain, kEnv, opt, spy, rng);
  ASSERT_FALSE(seen.empty());
  for (const GoalXY& g : seen) EXPECT_TRUE(g == chain[1].goal || g == chain[2].goal);
  for (std::size_t i = 0; i < b.samples.size(); ++i) {
    if (b.tags[i].bonus) {
      EXPECT_EQ(b.samples[i].reward, 1.0);
    }
  }
}

TEST(FinalizeBatchTest, DisabledBonusGivesPlainSparseReward) {
  const ReplayBuffer buf = success_buffer();
  FinalizeOptions opt;
  opt.batch_size = 100;
  opt.chaining_bonus = false;
  Rng rng(12);
  const FinalizedBatch b = finalize_batch(buf, three_skill_chain(), kEnv, opt, constant_value(10.0), rng);
  for (std::size_t i = 0; i < b.samples.size(); ++i) {
    EXPECT_FALSE(b.tags[i].bonus);
    EXPECT_TRUE(b.samples[i].reward == 0.0 || b.samples[i].reward == 1.0);
  }
}

TEST(FinalizeBatchTest, HalfOfTheBatchIsRelabelled) {
  const ReplayBuffer buf = success_buffer();
  FinalizeOptions opt;
  opt.batch_size = 9;
  Rng rng(13);
  const FinalizedBatch b = finalize_batch(buf, three_skill_chain(), kEnv, opt, constant_value(0.0), rng);
  int her = 0;
  for (const auto& t : b.tags) her += t.her;
  EXPECT_EQ(her, 4);
  EXPECT_EQ(b.samples.size(), 9u);
}

TEST(FinalizeBatchTest, TimeoutsStillBootstrap) {
  ReplayBuffer buf(4);
  Transition t = make_transition(0, 0, 0.0);
  t.done = true;  // timed out without success
  buf.push(t);
  FinalizeOptions opt;
  opt.batch_size = 2;
  Rng rng(14);
  const FinalizedBatch b = finalize_batch(buf, three_skill_chain(), kEnv, opt, constant_value(0.0), rng);
  EXPECT_FALSE(b.samples[0].terminal);
  EXPECT_EQ(b.samples[0].reward, 0.0);
}

}  // namespace
}  // namespace dcil
