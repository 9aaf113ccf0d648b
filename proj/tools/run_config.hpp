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

// Hierarchical run configuration: built-in defaults, patched by a JSON file,
// then by `section.key=value` overrides. Unknown keys are rejected.

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dcil/env.hpp"
#include "dcil/rrt.hpp"
#include "dcil/trainer.hpp"

namespace dcil::cli {

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SkillsConfig {
  // Skill length in goal space; 0 means demo arc length / num_skills.
  double epsilon_dist = 0.0;
  int num_skills = 10;
  double beta = 1.25;

  void validate() const {
    if (!(epsilon_dist >= 0.0)) throw std::invalid_argument("skills: epsilon_dist must be >= 0");
    if (num_skills <= 0) throw std::invalid_argument("skills: num_skills must be > 0");
    if (!(beta > 1.0)) throw std::invalid_argument("skills: beta must be > 1");
  }

  double resolve_epsilon(double arc_length) const {
    return epsilon_dist > 0.0 ? epsilon_dist : arc_length / num_skills;
  }
};

struct RunConfig {
  std::uint64_t seed = 1;
  EnvConfig env;
  RrtLimits rrt;
  SkillsConfig skills;
  TrainConfig train;
};

inline json default_config() {
  const RunConfig d;
  const SacConfig& s = d.train.sac;
  return {
      {"seed", d.seed},
      {"env",
       {{"speed", d.env.speed},
        {"dt", d.env.dt},
        {"u_max", d.env.u_max},
        {"epsilon_success", d.env.epsilon_success}}},
      {"rrt",
       {{"goal_bias", d.rrt.goal_bias},
        {"expand_steps", d.rrt.expand_steps},
        {"max_nodes", d.rrt.max_nodes}}},
      {"skills",
       {{"epsilon_dist", d.skills.epsilon_dist},
        {"num_skills", d.skills.num_skills},
        {"beta", d.skills.beta}}},
      {"sac",
       {{"hidden", s.hidden},
        {"gamma", s.gamma},
        {"lr", s.lr},
        {"tau", s.tau},
        {"batch_size", s.batch_size},
        {"adaptive_alpha", s.adaptive_alpha},
        {"alpha", s.alpha},
        {"target_entropy", s.target_entropy},
        {"log_std_min", s.log_std_min},
        {"log_std_max", s.log_std_max},
        {"output_init_scale", s.output_init_scale},
        {"divergence_threshold", s.divergence_threshold}}},
      {"replay", {{"capacity", d.train.replay_capacity}, {"warmup", d.train.warmup}}},
      {"trainer",
       {{"budget", d.train.budget},
        {"eval_period", d.train.eval_period},
        {"gradient_steps", d.train.gradient_steps},
        {"disable_bonus", d.train.disable_bonus},
        {"disable_overshoot", d.train.disable_overshoot},
        {"stop_on_solve", d.train.stop_on_solve}}},
  };
}

namespace detail {

// Recursive patch that refuses keys absent from the defaults and values of
// a different JSON type (integers may stand in for floats).
inline void patch(json& base, const json& p, const std::string& path) {
  if (!p.is_object()) throw ConfigError("config: '" + path + "' must be an object");
  for (auto it = p.begin(); it != p.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("config: unknown key '" + key + "'");
    json& dst = base[it.key()];
    const json& src = it.value();
    if (dst.is_object()) {
      patch(dst, src, key);
    } else if (dst.is_number_float() && src.is_number()) {
      dst = src.get<double>();
    } else if (dst.is_number_integer() && src.is_number_integer()) {
      dst = src;
    } else if (dst.type() == src.type()) {
      dst = src;
    } else {
      throw ConfigError("config: '" + key + "' expects " + std::string(dst.type_name()) +
                        ", got " + src.type_name());
    }
  }
}

}  // namespace detail

inline void apply_file(json& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json p;
  try {
    p = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  detail::patch(cfg, p, "");
}

/// Applies `a.b=value`; the value is parsed as JSON, falling back to a string.
inline void apply_override(json& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json p = value;
  std::string rest = key;
  std::vector<std::string> parts;
  for (std::size_t pos; (pos = rest.find('.')) != std::string::npos; rest = rest.substr(pos + 1))
    parts.push_back(rest.substr(0, pos));
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) p = json{{*it, p}};
  detail::patch(cfg, p, "");
}

/// Converts a patched configuration into module configs and validates each.
inline RunConfig resolve(const json& j) {
  RunConfig c;
  try {
    c.seed = j.at("seed").get<std::uint64_t>();
    const json& e = j.at("env");
    c.env.speed = e.at("speed").get<double>();
    c.env.dt = e.at("dt").get<double>();
    c.env.u_max = e.at("u_max").get<double>();
    c.env.epsilon_success = e.at("epsilon_success").get<double>();
    const json& r = j.at("rrt");
    c.rrt.goal_bias = r.at("goal_bias").get<double>();
    c.rrt.expand_steps = r.at("expand_steps").get<int>();
    c.rrt.max_nodes = r.at("max_nodes").get<int>();
    const json& k = j.at("skills");
    c.skills.epsilon_dist = k.at("epsilon_dist").get<double>();
    c.skills.num_skills = k.at("num_skills").get<int>();
    c.skills.beta = k.at("beta").get<double>();
    const json& s = j.at("sac");
    SacConfig& sac = c.train.sac;
    sac.hidden = s.at("hidden").get<std::vector<int>>();
    sac.gamma = s.at("gamma").get<double>();
    sac.lr = s.at("lr").get<double>();
    sac.tau = s.at("tau").get<double>();
    sac.batch_size = s.at("batch_size").get<int>();
    sac.adaptive_alpha = s.at("adaptive_alpha").get<bool>();
    sac.alpha = s.at("alpha").get<double>();
    sac.target_entropy = s.at("target_entropy").get<double>();
    sac.log_std_min = s.at("log_std_min").get<double>();
    sac.log_std_max = s.at("log_std_max").get<double>();
    sac.output_init_scale = s.at("output_init_scale").get<double>();
    sac.divergence_threshold = s.at("divergence_threshold").get<double>();
    const json& rp = j.at("replay");
    c.train.replay_capacity = rp.at("capacity").get<std::size_t>();
    c.train.warmup = rp.at("warmup").get<long>();
    const json& t = j.at("trainer");
    c.train.budget = t.at("budget").get<long>();
    c.train.eval_period = t.at("eval_period").get<long>();
    c.train.gradient_steps = t.at("gradient_steps").get<int>();
    c.train.disable_bonus = t.at("disable_bonus").get<bool>();
    c.train.disable_overshoot = t.at("disable_overshoot").get<bool>();
    c.train.stop_on_solve = t.at("stop_on_solve").get<bool>();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config: ") + ex.what());
  }
  c.train.seed = c.seed;
  c.train.env = c.env;
  try {
    c.rrt.validate();
    c.skills.validate();
    c.train.validate();
    if (c.train.budget == 0) throw std::invalid_argument("trainer: budget must be > 0");
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
  return c;
}

}  // namespace dcil::cli
