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

// Replay buffer with episode bookkeeping, "future" hindsight relabelling and
// sample-time reward finalisation including the chaining bonus.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "dcil/env.hpp"
#include "dcil/rng.hpp"
#include "dcil/sac.hpp"
#include "dcil/skills.hpp"

namespace dcil {

struct Transition {
  CarState s;
  double a = 0.0;
  CarState s_next;
  double r = 0.0;  // always 0 when stored
  GoalXY g;
  int skill_index = 0;
  bool done = false;
  bool success = false;
  long episode_id = 0;
  int step_in_episode = 0;
};

/// FIFO ring buffer. Transitions of one episode must be pushed contiguously.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be > 0");
    data_.reserve(std::min<std::size_t>(capacity, 1 << 16));
  }

  std::size_t size() const { return std::min<std::size_t>(pushed_, capacity_); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return pushed_ == 0; }
  std::uint64_t total_pushed() const { return pushed_; }

  /// i-th oldest stored transition.
  const Transition& operator[](std::size_t i) const { return by_global(first_global() + i); }

  void push(const Transition& t) {
    if (t.r != 0.0) throw std::invalid_argument("ReplayBuffer::push: stored reward must be 0");
    auto it = episodes_.find(t.episode_id);
    if (it == episodes_.end()) {
      episodes_.emplace(t.episode_id, Span{pushed_, pushed_, t.step_in_episode});
      order_.push_back(t.episode_id);
    } else {
      if (order_.back() != t.episode_id || it->second.last + 1 != pushed_ ||
          t.step_in_episode != it->second.first_step + static_cast<int>(pushed_ - it->second.first))
        throw std::invalid_argument("ReplayBuffer::push: episode transitions must be contiguous");
      it->second.last = pushed_;
    }
    if (data_.size() < capacity_) {
      data_.push_back(t);
    } else {
      data_[pushed_ % capacity_] = t;
    }
    ++pushed_;
    evict();
  }

  /// Uniformly random stored transition.
  const Transition& sample(Rng& rng) const {
    if (empty()) throw std::logic_error("ReplayBuffer::sample: empty buffer");
    std::uniform_int_distribution<std::size_t> u(0, size() - 1);
    return (*this)[u(rng)];
  }

  /// Stored transitions of an episode from step_in_episode `from` onwards.
  /// Returns {global index of `from`, global index of the episode's last transition}.
  std::pair<std::uint64_t, std::uint64_t> future_range(long episode_id, int from) const {
    auto it = episodes_.find(episode_id);
    if (it == episodes_.end()) throw std::out_of_range("ReplayBuffer: unknown episode");
    const std::uint64_t g = it->second.first + static_cast<std::uint64_t>(from - it->second.first_step);
    if (from < it->second.first_step || g > it->second.last || g < first_global())
      throw std::out_of_range("ReplayBuffer: transition not stored");
    return {g, it->second.last};
  }

  const Transition& by_global(std::uint64_t g) const {
    if (g < first_global() || g >= pushed_) throw std::out_of_range("ReplayBuffer: evicted index");
    return data_[static_cast<std::size_t>(g % capacity_)];
  }

  std::size_t num_episodes() const { return episodes_.size(); }
  bool has_episode(long id) const { return episodes_.count(id) != 0; }

  /// Every indexed episode span lies within the stored window.
  bool index_consistent() const {
    for (const auto& [id, span] : episodes_) {
      if (span.last < first_global() || span.last >= pushed_) return false;
      if (by_global(span.last).episode_id != id) return false;
    }
    return true;
  }

 private:
  struct Span {
    std::uint64_t first;  // global index of the episode's first transition (may be evicted)
    std::uint64_t last;
    int first_step;
  };

  std::uint64_t first_global() const { return pushed_ - size(); }

  void evict() {
    while (!order_.empty()) {
      auto it = episodes_.find(order_.front());
      if (it->second.last >= first_global()) break;
      episodes_.erase(it);
      order_.pop_front();
    }
  }

  std::size_t capacity_;
  std::vector<Transition> data_;
  std::uint64_t pushed_ = 0;
  std::map<long, Span> episodes_;
  std::deque<long> order_;
};

/// Hindsight relabelling with the "future" strategy: the goal becomes the
/// achieved goal of a uniformly chosen transition at or after t in t's
/// episode. Reward, success and done follow the sparse reward.
inline Transition relabel_her(const Transition& t, const ReplayBuffer& buf, const EnvConfig& env,
                              Rng& rng) {
  const auto [from, to] = buf.future_range(t.episode_id, t.step_in_episode);
  std::uniform_int_distribution<std::uint64_t> u(from, to);
  const Transition& future = buf.by_global(u(rng));
  Transition out = t;
  out.g = project_goal(future.s_next);
  out.success = is_success(t.s_next, out.g, env);
  out.done = out.success;
  out.r = out.success ? 1.0 : 0.0;
  return out;
}

struct BatchTag {
  bool her = false;
  bool bonus = false;  // chaining bonus term was added
  double bonus_value = 0.0;
};

struct FinalizedBatch {
  std::vector<SacSample> samples;
  std::vector<BatchTag> tags;
};

/// Values the successor skill at (state, goal) pairs, used for the chaining bonus.
using ValueQuery =
    std::function<std::vector<double>(const std::vector<CarState>&, const std::vector<GoalXY>&)>;

/// Bonus query backed by an agent: min target critic at the deterministic action.
template <typename Scalar>
ValueQuery target_value_query(const SacAgent<Scalar>& agent) {
  return [&agent](const std::vector<CarState>& s, const std::vector<GoalXY>& g) {
    const auto v = agent.target_value(s, g);
    std::vector<double> out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
    return out;
  };
}

struct FinalizeOptions {
  int batch_size = 256;
  double gamma = 0.98;
  bool chaining_bonus = true;
};

/// Samples batch_size transitions uniformly; the second half is relabelled
/// with HER. Successful transitions of the first half receive
/// 1 + clamp(V(s', g_next), 0, 1/(1-gamma)) when a next skill exists and the
/// bonus is enabled, 1 otherwise. Bootstrapping is masked on success only.
inline FinalizedBatch finalize_batch(const ReplayBuffer& buf, const SkillChain& chain,
                                     const EnvConfig& env, const FinalizeOptions& opt,
                                     const ValueQuery& value, Rng& rng) {
  if (buf.empty()) throw std::logic_error("finalize_batch: empty buffer");
  const int n = opt.batch_size;
  const int n_her = n / 2;
  const int n_plain = n - n_her;
  FinalizedBatch out;
  out.samples.resize(static_cast<std::size_t>(n));
  out.tags.resize(static_cast<std::size_t>(n));

  std::vector<std::size_t> bonus_rows;
  std::vector<CarState> bonus_states;
  std::vector<GoalXY> bonus_goals;
  for (int i = 0; i < n_plain; ++i) {
    const Transition& t = buf.sample(rng);
    SacSample& s = out.samples[static_cast<std::size_t>(i)];
    s = {t.s, t.a, t.s_next, t.g, 0.0, t.success};
    if (!t.success) continue;
    s.reward = 1.0;
    if (!opt.chaining_bonus) continue;
    const Skill* next =
        t.skill_index >= 0 && static_cast<std::size_t>(t.skill_index) < chain.size()
            ? next_skill(chain, static_cast<std::size_t>(t.skill_index))
            : nullptr;
    if (!next) continue;
    bonus_rows.push_back(static_cast<std::size_t>(i));
    bonus_states.push_back(t.s_next);
    bonus_goals.push_back(next->goal);
  }
  if (!bonus_rows.empty()) {
    const std::vector<double> v = value(bonus_states, bonus_goals);
    const double vmax = 1.0 / (1.0 - opt.gamma);
    for (std::size_t k = 0; k < bonus_rows.size(); ++k) {
      const double b = std::clamp(std::isfinite(v[k]) ? v[k] : 0.0, 0.0, vmax);
      out.samples[bonus_rows[k]].reward = 1.0 + b;
      out.tags[bonus_rows[k]].bonus = true;
      out.tags[bonus_rows[k]].bonus_value = b;
    }
  }
  for (int i = n_plain; i < n; ++i) {
    const Transition t = relabel_her(buf.sample(rng), buf, env, rng);
    out.samples[static_cast<std::size_t>(i)] = {t.s, t.a, t.s_next, t.g, t.r, t.success};
    out.tags[static_cast<std::size_t>(i)].her = true;
  }
  return out;
}

}  // namespace dcil
