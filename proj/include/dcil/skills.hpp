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

// Goal-based skills cut from a single demonstration.

#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcil/env.hpp"
#include "dcil/rng.hpp"
#include "dcil/trajectory.hpp"

namespace dcil {

struct Skill {
  int index = 0;
  CarState s0;
  GoalXY goal;
  int t_max = 1;
  // Demonstration indices [first, last] of the sub-trajectory.
  int first = 0;
  int last = 0;

  int demo_steps() const { return last - first; }
};

struct SkillChain {
  std::vector<Skill> skills;
  double epsilon_dist = 0.0;
  double beta = 1.25;
  // Set when the demonstration was shorter than epsilon_dist and a single
  // whole-trajectory skill was emitted instead.
  bool degenerate = false;

  std::size_t size() const { return skills.size(); }
  const Skill& operator[](std::size_t i) const { return skills[i]; }
};

/// Splits the goal-space projection of `traj` into sub-trajectories of
/// arc length epsilon_dist. Skill i starts at the first state of its piece
/// and targets the first state of the next piece; its budget is
/// ceil(beta * piece length in steps).
inline SkillChain extract_skills(const Trajectory& traj, double epsilon_dist, double beta) {
  if (traj.states.size() < 2)
    throw std::invalid_argument("extract_skills: trajectory needs at least 2 states");
  if (!(epsilon_dist > 0.0) || !std::isfinite(epsilon_dist))
    throw std::invalid_argument("extract_skills: epsilon_dist must be > 0");
  if (!(beta > 1.0) || !std::isfinite(beta))
    throw std::invalid_argument("extract_skills: beta must be > 1");

  SkillChain chain;
  chain.epsilon_dist = epsilon_dist;
  chain.beta = beta;

  // Cut tolerance absorbs rounding in the running sum of equal steps.
  const double tol = 1e-9 * epsilon_dist;
  std::vector<int> cuts{0};
  double acc = 0.0;
  const int n = static_cast<int>(traj.states.size());
  for (int i = 1; i < n; ++i) {
    acc += goal_distance(project_goal(traj.states[i - 1]), project_goal(traj.states[i]));
    if (acc + tol >= epsilon_dist) {
      cuts.push_back(i);
      acc = 0.0;
    }
  }
  if (cuts.size() == 1) chain.degenerate = true;
  if (cuts.back() != n - 1) cuts.push_back(n - 1);

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Skill s;
    s.index = static_cast<int>(k);
    s.first = cuts[k];
    s.last = cuts[k + 1];
    s.s0 = traj.states[s.first];
    s.goal = project_goal(traj.states[s.last]);
    s.t_max = static_cast<int>(std::ceil(beta * (s.last - s.first)));
    chain.skills.push_back(s);
  }
  return chain;
}

inline const Skill* next_skill(const SkillChain& chain, std::size_t i) {
  if (i >= chain.size()) throw std::out_of_range("next_skill: index out of range");
  return i + 1 < chain.size() ? &chain.skills[i + 1] : nullptr;
}

struct SkillStats {
  std::vector<long> trials;
  std::vector<long> successes;

  explicit SkillStats(std::size_t n = 0) : trials(n, 0), successes(n, 0) {}

  std::size_t size() const { return trials.size(); }

  void record(std::size_t i, bool success) {
    ++trials.at(i);
    if (success) ++successes.at(i);
  }

  /// Raw success ratio; 0 for untried skills.
  double success_ratio(std::size_t i) const {
    return trials[i] == 0 ? 0.0 : static_cast<double>(successes[i]) / trials[i];
  }

  /// Laplace-smoothed ratio (successes + 1) / (trials + 1); its inverse is
  /// the selection fitness.
  double smoothed_ratio(std::size_t i) const {
    return static_cast<double>(successes[i] + 1) / static_cast<double>(trials[i] + 1);
  }

  std::vector<double> selection_probabilities() const {
    std::vector<double> p(size());
    double total = 0.0;
    for (std::size_t i = 0; i < size(); ++i) total += p[i] = 1.0 / smoothed_ratio(i);
    for (auto& v : p) v /= total;
    return p;
  }
};

/// Fitness-proportionate (roulette-wheel) selection favouring skills with a
/// low success ratio.
inline std::size_t select_skill(const SkillStats& stats, Rng& rng) {
  if (stats.size() == 0) throw std::invalid_argument("select_skill: no skills");
  std::vector<double> fitness(stats.size());
  double total = 0.0;
  for (std::size_t i = 0; i < stats.size(); ++i) total += fitness[i] = 1.0 / stats.smoothed_ratio(i);
  std::uniform_real_distribution<double> u(0.0, total);
  double r = u(rng);
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    if (r < fitness[i]) return i;
    r -= fitness[i];
  }
  return fitness.size() - 1;
}

// Skill file: one record per line, "index s0.x s0.y s0.theta goal.x goal.y t_max first last".
inline void write_skills(std::ostream& out, const SkillChain& chain) {
  out << "# dcil-skills 1\n";
  out << std::setprecision(17);
  out << "# epsilon_dist " << chain.epsilon_dist << "\n";
  out << "# beta " << chain.beta << "\n";
  out << "# index s0_x s0_y s0_theta goal_x goal_y t_max demo_first demo_last\n";
  for (const auto& s : chain.skills)
    out << s.index << ' ' << s.s0.x << ' ' << s.s0.y << ' ' << s.s0.theta << ' ' << s.goal.x
        << ' ' << s.goal.y << ' ' << s.t_max << ' ' << s.first << ' ' << s.last << "\n";
}

inline SkillChain parse_skills(std::istream& in) {
  SkillChain chain;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "dcil-skills") header = true;
      else if (key == "epsilon_dist") ls >> chain.epsilon_dist;
      else if (key == "beta") ls >> chain.beta;
      continue;
    }
    if (!header) throw std::runtime_error("skills line " + std::to_string(lineno) + ": missing header");
    Skill s;
    if (!(ls >> s.index >> s.s0.x >> s.s0.y >> s.s0.theta >> s.goal.x >> s.goal.y >> s.t_max >>
          s.first >> s.last) ||
        s.index != static_cast<int>(chain.skills.size()) || s.t_max < 1)
      throw std::runtime_error("skills line " + std::to_string(lineno) + ": malformed record");
    chain.skills.push_back(s);
  }
  if (chain.skills.empty()) throw std::runtime_error("skills: no records");
  return chain;
}

inline void save_skills(const SkillChain& chain, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write skills '" + path + "'");
  write_skills(out, chain);
}

inline SkillChain load_skills(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open skills '" + path + "'");
  return parse_skills(in);
}

}  // namespace dcil
