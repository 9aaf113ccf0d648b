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

// The skill-training outer loop: pick a skill, reset into its demonstrated
// start, roll out until success or budget, chain into the next skill on
// success (overshoot), and run one SAC update per stored transition.

#pragma once

#include <cstdint>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dcil/env.hpp"
#include "dcil/replay.hpp"
#include "dcil/rng.hpp"
#include "dcil/sac.hpp"
#include "dcil/skills.hpp"

namespace dcil {

using Agent = SacAgent<float>;

struct TrainConfig {
  long budget = 100000;  // environment interactions
  long eval_period = 2000;
  std::uint64_t seed = 1;
  EnvConfig env;
  SacConfig sac;
  std::size_t replay_capacity = 1000000;
  long warmup = 1000;
  int gradient_steps = 1;
  bool disable_bonus = false;
  bool disable_overshoot = false;
  bool stop_on_solve = false;
  long max_episodes = 0;  // 0 = unlimited

  void validate() const {
    if (budget < 0) throw std::invalid_argument("trainer: budget must be >= 0");
    if (eval_period <= 0) throw std::invalid_argument("trainer: eval_period must be > 0");
    if (replay_capacity == 0) throw std::invalid_argument("trainer: replay capacity must be > 0");
    if (warmup < 0) throw std::invalid_argument("trainer: warmup must be >= 0");
    if (gradient_steps <= 0) throw std::invalid_argument("trainer: gradient_steps must be > 0");
    if (max_episodes < 0) throw std::invalid_argument("trainer: max_episodes must be >= 0");
    env.validate();
    sac.validate();
  }
};

struct EvalResult {
  bool solved = false;
  int max_zone = -1;  // -1 when no visited state lies in a zone
  int skills_completed = 0;
  std::vector<CarState> trajectory;
};

struct EvalPoint {
  long step = 0;
  std::vector<double> skill_success_ratio;
  bool chain_solved = false;
  int max_zone = -1;
};

struct TrainReport {
  std::vector<EvalPoint> evals;
  std::optional<long> first_solve_step;
  bool diverged = false;
  std::string divergence_message;
  long env_steps = 0;
  long episodes = 0;
  long updates = 0;
  SkillStats stats;
};

/// Deterministic policy signature used by chain evaluation.
using Policy = std::function<double(const CarState&, const GoalXY&)>;

/// Replays the skill chain from the demonstration's initial state: the
/// policy is conditioned on each skill-goal in turn, gets that skill's
/// budget, and moves on when the goal is reached.
inline EvalResult evaluate_chain(const Policy& policy, const SkillChain& chain,
                                 const MazeMap& maze, const EnvConfig& env) {
  EvalResult res;
  if (chain.size() == 0) return res;
  CarState s = reset_to(chain[0].s0, maze);
  res.trajectory.push_back(s);
  auto visit = [&](const CarState& st) {
    if (auto z = zone_of(st, maze)) res.max_zone = std::max(res.max_zone, *z);
  };
  visit(s);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const Skill& skill = chain[k];
    bool reached = is_success(s, skill.goal, env);
    for (int t = 0; t < skill.t_max && !reached; ++t) {
      const double a = std::clamp(policy(s, skill.goal), -1.0, 1.0);
      s = step(s, a, env, maze).state;
      res.trajectory.push_back(s);
      visit(s);
      reached = is_success(s, skill.goal, env);
    }
    if (!reached) return res;
    ++res.skills_completed;
  }
  res.solved = true;
  return res;
}

template <typename Scalar>
Policy deterministic_policy(const SacAgent<Scalar>& agent) {
  return [&agent](const CarState& s, const GoalXY& g) { return agent.deterministic_action(s, g); };
}

struct TrainHooks {
  // Called at every evaluation point with the current agent.
  std::function<void(const EvalPoint&, const Agent&, const EvalResult&)> on_eval;
};

/// Runs the training loop until the interaction budget is spent.
/// `agent_out`, when given, receives the final agent.
inline TrainReport train(const TrainConfig& cfg, const MazeMap& maze, const SkillChain& chain,
                         const TrainHooks& hooks = {}, Agent* agent_out = nullptr) {
  cfg.validate();
  if (chain.size() == 0) throw std::invalid_argument("train: empty skill chain");
  TrainReport rep;
  rep.stats = SkillStats(chain.size());
  if (cfg.budget == 0) return rep;

  Rng init_rng = make_rng(cfg.seed, Stream::kInit);
  Rng act_rng = make_rng(cfg.seed, Stream::kActor);
  Rng sel_rng = make_rng(cfg.seed, Stream::kSelection);
  Rng batch_rng = make_rng(cfg.seed, Stream::kBatch);
  Rng update_rng = make_rng(cfg.seed, Stream::kHer);

  Agent agent(cfg.sac, FeatureScaling::from_bounds(maze.bounds), init_rng);
  ReplayBuffer buffer(cfg.replay_capacity);
  const ValueQuery bonus_query = target_value_query(agent);
  const FinalizeOptions fopt{cfg.sac.batch_size, cfg.sac.gamma, !cfg.disable_bonus};

  long next_eval = 0;
  bool stop = false;
  auto evaluate = [&]() {
    EvalPoint p;
    p.step = rep.env_steps;
    for (std::size_t i = 0; i < chain.size(); ++i)
      p.skill_success_ratio.push_back(rep.stats.success_ratio(i));
    const EvalResult r = evaluate_chain(deterministic_policy(agent), chain, maze, cfg.env);
    p.chain_solved = r.solved;
    p.max_zone = r.max_zone;
    if (r.solved && !rep.first_solve_step) rep.first_solve_step = rep.env_steps;
    rep.evals.push_back(p);
    if (hooks.on_eval) hooks.on_eval(p, agent, r);
    if (r.solved && cfg.stop_on_solve) stop = true;
    next_eval += cfg.eval_period;
  };

  long idle_episodes = 0;
  try {
    evaluate();
    while (!stop && rep.env_steps < cfg.budget &&
           (cfg.max_episodes == 0 || rep.episodes < cfg.max_episodes)) {
      const std::size_t first = select_skill(rep.stats, sel_rng);
      const long episode = rep.episodes++;
      const long steps_before = rep.env_steps;
      CarState s = reset_to(chain[first].s0, maze);
      std::size_t cur = first;
      int t = 0;
      int step_in_episode = 0;
      while (!stop && rep.env_steps < cfg.budget) {
        const Skill& skill = chain[cur];
        bool success = false;
        if (t == 0 && is_success(s, skill.goal, cfg.env)) {
          success = true;
        } else {
          const auto sample = agent.sample_action(s, skill.goal, act_rng);
          const StepResult r = step(s, sample.action, cfg.env, maze);
          ++rep.env_steps;
          success = is_success(r.state, skill.goal, cfg.env);
          const bool timeout = t + 1 >= skill.t_max;
          Transition tr;
          tr.s = s;
          tr.a = sample.action;
          tr.s_next = r.state;
          tr.g = skill.goal;
          tr.skill_index = static_cast<int>(cur);
          tr.done = success || timeout;
          tr.success = success;
          tr.episode_id = episode;
          tr.step_in_episode = step_in_episode++;
          buffer.push(tr);
          if (static_cast<long>(buffer.size()) >= std::max(1L, cfg.warmup)) {
            const FinalizedBatch batch =
                finalize_batch(buffer, chain, cfg.env, fopt, bonus_query, batch_rng);
            agent.update(batch.samples, cfg.gradient_steps, update_rng);
            ++rep.updates;
          }
          s = r.state;
          ++t;
          if (rep.env_steps >= next_eval) evaluate();
          if (!success && timeout) {
            rep.stats.record(cur, false);
            break;
          }
          if (!success) continue;
        }
        rep.stats.record(cur, true);
        if (cfg.disable_overshoot || cur + 1 >= chain.size()) break;
        ++cur;
        t = 0;
      }
      idle_episodes = rep.env_steps == steps_before ? idle_episodes + 1 : 0;
      if (idle_episodes >= 1000) break;  // every selected skill is already solved at reset
    }
  } catch (const DivergenceError& e) {
    rep.diverged = true;
    rep.divergence_message = e.what();
  }
  if (!rep.diverged && !stop && rep.env_steps > 0 &&
      (rep.evals.empty() || rep.evals.back().step != rep.env_steps))
    evaluate();
  if (agent_out) *agent_out = agent;
  return rep;
}

/// metrics.csv: a schema row, a header row, then one row per evaluation point.
inline void write_metrics_header(std::ostream& out, std::size_t n_skills) {
  out << "# dcil-metrics v1\n";
  out << "step";
  for (std::size_t i = 0; i < n_skills; ++i) out << ",skill_success_ratio_" << i;
  out << ",chain_solved,max_zone\n";
}

inline void write_metrics_row(std::ostream& out, const EvalPoint& p) {
  out << p.step;
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(6);
  for (double r : p.skill_success_ratio) out << ',' << r;
  out.flags(flags);
  out << ',' << (p.chain_solved ? 1 : 0) << ',' << p.max_zone << "\n";
}

}  // namespace dcil
