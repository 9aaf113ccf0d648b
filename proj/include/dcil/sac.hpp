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

// Goal-conditioned soft actor-critic with a tanh-squashed Gaussian actor,
// twin critics and Polyak-averaged target critics.

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcil/env.hpp"
#include "dcil/mlp.hpp"
#include "dcil/rng.hpp"

namespace dcil {

struct SacConfig {
  std::vector<int> hidden{64, 64};
  double gamma = 0.98;
  double lr = 3e-4;
  double tau = 0.005;
  int batch_size = 128;
  bool adaptive_alpha = true;
  double alpha = 0.1;  // fixed value, or the initial value when adaptive
  double target_entropy = -1.0;
  double log_std_min = -20.0;
  double log_std_max = 2.0;
  double output_init_scale = 1.0;
  // Any loss whose magnitude exceeds this is reported as divergence.
  double divergence_threshold = 1e8;

  void validate() const {
    if (hidden.empty()) throw std::invalid_argument("sac: need at least one hidden layer");
    for (int h : hidden)
      if (h <= 0) throw std::invalid_argument("sac: hidden sizes must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("sac: gamma must lie in (0, 1)");
    if (!(lr > 0.0)) throw std::invalid_argument("sac: lr must be > 0");
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("sac: tau must lie in [0, 1]");
    if (batch_size <= 0) throw std::invalid_argument("sac: batch_size must be > 0");
    if (!(alpha >= 0.0)) throw std::invalid_argument("sac: alpha must be >= 0");
    if (adaptive_alpha && !(alpha > 0.0))
      throw std::invalid_argument("sac: adaptive alpha needs a positive initial value");
    if (!(log_std_min < log_std_max)) throw std::invalid_argument("sac: empty log-std range");
  }
};

/// Maps maze coordinates to roughly [-1, 1] for the networks.
struct FeatureScaling {
  double cx = 0.0;
  double cy = 0.0;
  double sx = 1.0;
  double sy = 1.0;

  static FeatureScaling from_bounds(const Rect& b) {
    return {0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax), 0.5 * (b.xmax - b.xmin),
            0.5 * (b.ymax - b.ymin)};
  }
};

// x, y, cos, sin, gx, gy, then the goal offset in the car's own frame.
inline constexpr int kObsFeatures = 8;

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One transition as consumed by the gradient step. `terminal` masks the
/// bootstrap term; `reward` is final.
struct SacSample {
  CarState s;
  double a = 0.0;
  CarState s_next;
  GoalXY g;
  double reward = 0.0;
  bool terminal = false;
};

struct LossReport {
  double critic_loss = 0.0;
  double actor_loss = 0.0;
  double alpha = 0.0;
  double mean_q = 0.0;
  double mean_log_prob = 0.0;
};

template <typename Scalar>
class SacAgent {
 public:
  using Net = Mlp<Scalar>;
  using Matrix = typename Net::Matrix;
  using Vector = typename Net::Vector;
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

  struct ActionSample {
    double action = 0.0;
    double log_prob = 0.0;
  };

  SacAgent() = default;

  SacAgent(const SacConfig& cfg, const FeatureScaling& scaling, Rng& init_rng)
      : cfg_(cfg), scaling_(scaling) {
    cfg_.validate();
    std::vector<int> actor_sizes{kObsFeatures};
    std::vector<int> critic_sizes{kObsFeatures + 1};
    for (int h : cfg_.hidden) {
      actor_sizes.push_back(h);
      critic_sizes.push_back(h);
    }
    actor_sizes.push_back(2);
    critic_sizes.push_back(1);
    actor_ = Net::random(actor_sizes, init_rng, cfg_.output_init_scale);
    critic1_ = Net::random(critic_sizes, init_rng, cfg_.output_init_scale);
    critic2_ = Net::random(critic_sizes, init_rng, cfg_.output_init_scale);
    target1_ = critic1_;
    target2_ = critic2_;
    reset_optimizers();
    log_alpha_ = cfg_.alpha > 0.0 ? std::log(cfg_.alpha) : -std::numeric_limits<double>::infinity();
  }

  const SacConfig& config() const { return cfg_; }
  const FeatureScaling& scaling() const { return scaling_; }
  double alpha() const { return std::exp(log_alpha_); }
  double log_alpha() const { return log_alpha_; }
  void set_log_alpha(double v) { log_alpha_ = v; }
  std::int64_t update_count() const { return updates_; }
  void set_update_count(std::int64_t n) { updates_ = n; }

  Net& actor() { return actor_; }
  Net& critic1() { return critic1_; }
  Net& critic2() { return critic2_; }
  Net& target1() { return target1_; }
  Net& target2() { return target2_; }
  const Net& actor() const { return actor_; }
  const Net& critic1() const { return critic1_; }
  const Net& critic2() const { return critic2_; }
  const Net& target1() const { return target1_; }
  const Net& target2() const { return target2_; }

  void reset_optimizers() {
    actor_opt_ = AdamState<Scalar>(actor_.num_params(), cfg_.lr);
    critic1_opt_ = AdamState<Scalar>(critic1_.num_params(), cfg_.lr);
    critic2_opt_ = AdamState<Scalar>(critic2_.num_params(), cfg_.lr);
    alpha_opt_ = AdamState<double>(1, cfg_.lr);
  }

  void write_obs(Scalar* col, const CarState& s, const GoalXY& g) const {
    col[0] = static_cast<Scalar>((s.x - scaling_.cx) / scaling_.sx);
    col[1] = static_cast<Scalar>((s.y - scaling_.cy) / scaling_.sy);
    col[2] = static_cast<Scalar>(std::cos(s.theta));
    col[3] = static_cast<Scalar>(std::sin(s.theta));
    col[4] = static_cast<Scalar>((g.x - scaling_.cx) / scaling_.sx);
    col[5] = static_cast<Scalar>((g.y - scaling_.cy) / scaling_.sy);
    const double dx = g.x - s.x;
    const double dy = g.y - s.y;
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    const double scale = std::max(scaling_.sx, scaling_.sy);
    col[6] = static_cast<Scalar>((c * dx + sn * dy) / scale);
    col[7] = static_cast<Scalar>((c * dy - sn * dx) / scale);
  }

  /// Stochastic action a = tanh(mu + sigma * xi) with its log-density.
  ActionSample sample_action(const CarState& s, const GoalXY& g, Rng& rng) const {
    Matrix x(kObsFeatures, 1);
    write_obs(x.data(), s, g);
    const Matrix out = actor_.forward(x);
    const double mu = out(0, 0);
    const double log_std = std::clamp<double>(out(1, 0), cfg_.log_std_min, cfg_.log_std_max);
    std::normal_distribution<double> n01(0.0, 1.0);
    const double xi = n01(rng);
    const double u = mu + std::exp(log_std) * xi;
    return {std::tanh(u), squashed_log_prob(u, xi, log_std)};
  }

  /// Deterministic mode tanh(mu).
  double deterministic_action(const CarState& s, const GoalXY& g) const {
    Matrix x(kObsFeatures, 1);
    write_obs(x.data(), s, g);
    return std::tanh(static_cast<double>(actor_.forward(x)(0, 0)));
  }

  /// Pre-squash Gaussian parameters (mu, clamped log-std) at (s, g).
  std::pair<double, double> gaussian(const CarState& s, const GoalXY& g) const {
    Matrix x(kObsFeatures, 1);
    write_obs(x.data(), s, g);
    const Matrix out = actor_.forward(x);
    return {out(0, 0), std::clamp<double>(out(1, 0), cfg_.log_std_min, cfg_.log_std_max)};
  }

  /// log density of a = tanh(u) where u = mu + exp(log_std) * xi.
  static double squashed_log_prob(double u, double xi, double log_std) {
    const double gauss = -0.5 * xi * xi - log_std - 0.5 * std::log(2.0 * std::numbers::pi);
    return gauss - log_one_minus_tanh_sq(u);
  }

  /// log(1 - tanh(u)^2) = 2 (log 2 - u - softplus(-2u)), stable for large |u|.
  static double log_one_minus_tanh_sq(double u) {
    return 2.0 * (std::log(2.0) - u - softplus(-2.0 * u));
  }

  static double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  }

  /// min(target1, target2)(s, a, g) per column.
  Vector target_min_q(const Matrix& obs, const RowVector& actions) const {
    Matrix in(kObsFeatures + 1, obs.cols());
    in.topRows(kObsFeatures) = obs;
    in.row(kObsFeatures) = actions;
    const Matrix q1 = target1_.forward(in);
    const Matrix q2 = target2_.forward(in);
    return q1.cwiseMin(q2).transpose();
  }

  /// min target-critic value of the deterministic action at each (s, g).
  Vector target_value(const std::vector<CarState>& s, const std::vector<GoalXY>& g) const {
    Matrix obs = make_obs(s, g);
    const Matrix out = actor_.forward(obs);
    RowVector act = out.row(0).array().tanh();
    return target_min_q(obs, act);
  }

  Matrix make_obs(const std::vector<CarState>& s, const std::vector<GoalXY>& g) const {
    if (s.size() != g.size()) throw std::invalid_argument("make_obs: size mismatch");
    Matrix obs(kObsFeatures, static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
      write_obs(obs.col(static_cast<Eigen::Index>(i)).data(), s[i], g[i]);
    return obs;
  }

  /// Critic value Q_k(s, a, g) for k in {1, 2}.
  double q_value(int k, const CarState& s, double a, const GoalXY& g) const {
    Matrix in(kObsFeatures + 1, 1);
    write_obs(in.data(), s, g);
    in(kObsFeatures, 0) = static_cast<Scalar>(a);
    return (k == 1 ? critic1_ : critic2_).forward(in)(0, 0);
  }

  /// Runs n_steps gradient steps on the same batch.
  LossReport update(const std::vector<SacSample>& batch, int n_steps, Rng& rng) {
    if (batch.empty()) throw std::invalid_argument("SacAgent::update: empty batch");
    const auto n = static_cast<Eigen::Index>(batch.size());
    Matrix obs(kObsFeatures, n), next_obs(kObsFeatures, n);
    RowVector act(n);
    Vector reward(n), cont(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const SacSample& t = batch[static_cast<std::size_t>(i)];
      if (!std::isfinite(t.reward))
        throw std::invalid_argument("SacAgent::update: non-finite reward");
      write_obs(obs.col(i).data(), t.s, t.g);
      write_obs(next_obs.col(i).data(), t.s_next, t.g);
      act(i) = static_cast<Scalar>(t.a);
      reward(i) = static_cast<Scalar>(t.reward);
      cont(i) = t.terminal ? Scalar(0) : Scalar(1);
    }
    LossReport rep;
    for (int k = 0; k < n_steps; ++k) rep = gradient_step(obs, act, next_obs, reward, cont, rng);
    return rep;
  }

  /// Critic regression targets r + gamma * cont * (min target Q - alpha log pi)
  /// at actions freshly sampled from the current actor.
  Vector critic_targets(const Matrix& next_obs, const Vector& reward, const Vector& cont,
                        Rng& rng) const {
    const Eigen::Index n = next_obs.cols();
    const Matrix out = actor_.forward(next_obs);
    RowVector next_act(n);
    Vector next_logp(n);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double log_std = std::clamp<double>(out(1, i), cfg_.log_std_min, cfg_.log_std_max);
      const double xi = n01(rng);
      const double u = out(0, i) + std::exp(log_std) * xi;
      next_act(i) = static_cast<Scalar>(std::tanh(u));
      next_logp(i) = static_cast<Scalar>(squashed_log_prob(u, xi, log_std));
    }
    const Vector qmin = target_min_q(next_obs, next_act);
    const auto a = static_cast<Scalar>(alpha());
    const auto gamma = static_cast<Scalar>(cfg_.gamma);
    return reward.array() + gamma * cont.array() * (qmin.array() - a * next_logp.array());
  }

  struct ActorLoss {
    double loss = 0.0;
    double mean_log_prob = 0.0;
  };

  /// Reparameterised actor objective mean(alpha * log pi - min(Q1, Q2)) for
  /// the given standard-normal draws. Adds d loss / d actor-params into *grad.
  ActorLoss actor_loss(const Matrix& obs, const std::vector<double>& xi, Vector* grad) const {
    const Eigen::Index n = obs.cols();
    if (static_cast<Eigen::Index>(xi.size()) != n)
      throw std::invalid_argument("actor_loss: noise size mismatch");
    const double inv_n = 1.0 / static_cast<double>(n);
    typename Net::Tape atape;
    const Matrix out = actor_.forward(obs, atape);
    RowVector new_act(n);
    std::vector<double> u(static_cast<std::size_t>(n)), log_std(static_cast<std::size_t>(n));
    std::vector<char> clamped(static_cast<std::size_t>(n));
    double sum_logp = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(i);
      const double raw = out(1, i);
      log_std[j] = std::clamp(raw, cfg_.log_std_min, cfg_.log_std_max);
      clamped[j] = raw < cfg_.log_std_min || raw > cfg_.log_std_max;
      u[j] = out(0, i) + std::exp(log_std[j]) * xi[j];
      new_act(i) = static_cast<Scalar>(std::tanh(u[j]));
      sum_logp += squashed_log_prob(u[j], xi[j], log_std[j]);
    }
    Matrix qin(kObsFeatures + 1, n);
    qin.topRows(kObsFeatures) = obs;
    qin.row(kObsFeatures) = new_act;
    typename Net::Tape t1, t2;
    const Matrix q1 = critic1_.forward(qin, t1);
    const Matrix q2 = critic2_.forward(qin, t2);
    Matrix pick1 = Matrix::Zero(1, n), pick2 = Matrix::Zero(1, n);
    double q_term = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (q1(0, i) <= q2(0, i)) {
        pick1(0, i) = Scalar(1);
        q_term += q1(0, i);
      } else {
        pick2(0, i) = Scalar(1);
        q_term += q2(0, i);
      }
    }
    const double a = alpha();
    ActorLoss res;
    res.mean_log_prob = sum_logp * inv_n;
    res.loss = a * res.mean_log_prob - q_term * inv_n;
    if (!grad) return res;
    const Matrix dq_in1 = critic1_.backward(t1, pick1, nullptr);
    const Matrix dq_in2 = critic2_.backward(t2, pick2, nullptr);
    Matrix dout(2, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(i);
      const double dq_da = static_cast<double>(dq_in1(kObsFeatures, i)) + dq_in2(kObsFeatures, i);
      const double th = std::tanh(u[j]);
      const double da_du = 1.0 - th * th;
      const double sigma = std::exp(log_std[j]);
      // d log pi / du = 2 tanh(u); du / d log_std = sigma * xi.
      const double dmu = a * 2.0 * th - dq_da * da_du;
      double dls = a * (-1.0 + 2.0 * th * sigma * xi[j]) - dq_da * da_du * sigma * xi[j];
      if (clamped[j]) dls = 0.0;
      dout(0, i) = static_cast<Scalar>(dmu * inv_n);
      dout(1, i) = static_cast<Scalar>(dls * inv_n);
    }
    actor_.backward(atape, dout, grad);
    return res;
  }

 private:
  LossReport gradient_step(const Matrix& obs, const RowVector& act, const Matrix& next_obs,
                           const Vector& reward, const Vector& cont, Rng& rng) {
    const Eigen::Index n = obs.cols();
    const Scalar inv_n = Scalar(1) / static_cast<Scalar>(n);
    LossReport rep;

    // Critics.
    const Vector y = critic_targets(next_obs, reward, cont, rng);
    Matrix cin(kObsFeatures + 1, n);
    cin.topRows(kObsFeatures) = obs;
    cin.row(kObsFeatures) = act;
    double critic_loss = 0.0;
    double mean_q = 0.0;
    for (int k = 0; k < 2; ++k) {
      Net& critic = k == 0 ? critic1_ : critic2_;
      AdamState<Scalar>& opt = k == 0 ? critic1_opt_ : critic2_opt_;
      typename Net::Tape tape;
      const Matrix q = critic.forward(cin, tape);
      const RowVector diff = q.row(0) - y.transpose();
      critic_loss += 0.5 * static_cast<double>(diff.squaredNorm()) / n;
      mean_q += 0.5 * static_cast<double>(q.sum()) / n;
      Vector grad = Vector::Zero(critic.num_params());
      critic.backward(tape, (Scalar(2) * inv_n) * diff, &grad);
      adam_step(opt, critic.params(), grad);
    }

    // Actor, through the freshly updated critics.
    std::normal_distribution<double> n01(0.0, 1.0);
    std::vector<double> xi(static_cast<std::size_t>(n));
    for (auto& v : xi) v = n01(rng);
    Vector agrad = Vector::Zero(actor_.num_params());
    const ActorLoss al = actor_loss(obs, xi, &agrad);
    adam_step(actor_opt_, actor_.params(), agrad);
    const double mean_logp = al.mean_log_prob;
    rep.actor_loss = al.loss;

    if (cfg_.adaptive_alpha) {
      Eigen::VectorXd la(1), g(1);
      la(0) = log_alpha_;
      g(0) = -(mean_logp + cfg_.target_entropy);
      adam_step(alpha_opt_, la, g);
      log_alpha_ = la(0);
    }

    polyak_update(target1_, critic1_, cfg_.tau);
    polyak_update(target2_, critic2_, cfg_.tau);
    ++updates_;

    rep.critic_loss = critic_loss;
    rep.mean_q = mean_q;
    rep.alpha = alpha();
    rep.mean_log_prob = mean_logp;
    check_divergence(rep);
    return rep;
  }

  void check_divergence(const LossReport& rep) const {
    auto bad = [&](double v) { return !std::isfinite(v) || std::abs(v) > cfg_.divergence_threshold; };
    if (bad(rep.critic_loss) || bad(rep.actor_loss) || bad(rep.mean_q) || !std::isfinite(rep.alpha) ||
        !critic1_.all_finite() || !critic2_.all_finite() || !actor_.all_finite()) {
      std::ostringstream os;
      os << "SAC diverged after " << updates_ << " updates: critic_loss=" << rep.critic_loss
         << " actor_loss=" << rep.actor_loss << " mean_q=" << rep.mean_q << " alpha=" << rep.alpha;
      throw DivergenceError(os.str());
    }
  }

  SacConfig cfg_;
  FeatureScaling scaling_;
  Net actor_, critic1_, critic2_, target1_, target2_;
  AdamState<Scalar> actor_opt_, critic1_opt_, critic2_opt_;
  AdamState<double> alpha_opt_;
  double log_alpha_ = 0.0;
  std::int64_t updates_ = 0;
};

// Agent checkpoint directory: one parameter file per network plus a
// manifest with hyperparameters and the temperature.
template <typename Scalar>
void save_agent(const SacAgent<Scalar>& agent, const std::filesystem::path& dir,
                std::uint64_t seed, std::int64_t env_step) {
  std::filesystem::create_directories(dir);
  const CheckpointInfo info{seed, env_step};
  save_mlp(agent.actor(), (dir / "actor.ckpt").string(), info);
  save_mlp(agent.critic1(), (dir / "critic1.ckpt").string(), info);
  save_mlp(agent.critic2(), (dir / "critic2.ckpt").string(), info);
  save_mlp(agent.target1(), (dir / "target1.ckpt").string(), info);
  save_mlp(agent.target2(), (dir / "target2.ckpt").string(), info);
  std::ofstream m(dir / "manifest.txt");
  const SacConfig& c = agent.config();
  const FeatureScaling& f = agent.scaling();
  m << "dcil-agent 1\n" << std::hexfloat;
  m << "gamma " << c.gamma << "\nlr " << c.lr << "\ntau " << c.tau << "\nbatch_size "
    << std::defaultfloat << c.batch_size << std::hexfloat << "\nadaptive_alpha "
    << (c.adaptive_alpha ? 1 : 0) << "\nalpha " << c.alpha << "\ntarget_entropy "
    << c.target_entropy << "\nlog_std_min " << c.log_std_min << "\nlog_std_max "
    << c.log_std_max << "\nlog_alpha " << agent.log_alpha() << "\nscaling " << f.cx << ' '
    << f.cy << ' ' << f.sx << ' ' << f.sy << "\n"
    << std::defaultfloat << "updates " << agent.update_count() << "\nseed " << seed
    << "\nenv_step " << env_step << "\n";
  if (!m) throw std::runtime_error("cannot write agent manifest in '" + dir.string() + "'");
}

template <typename Scalar>
SacAgent<Scalar> load_agent(const std::filesystem::path& dir) {
  std::ifstream m(dir / "manifest.txt");
  if (!m) throw std::runtime_error("cannot open agent manifest in '" + dir.string() + "'");
  std::string line, key;
  if (!std::getline(m, line) || line != "dcil-agent 1")
    throw std::runtime_error("agent manifest: bad header");
  SacConfig c;
  FeatureScaling f;
  double log_alpha = 0.0;
  std::int64_t updates = 0;
  auto num = [](std::istringstream& ls) {
    std::string tok;
    ls >> tok;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0') throw std::runtime_error("agent manifest: bad number '" + tok + "'");
    return v;
  };
  while (std::getline(m, line)) {
    std::istringstream ls(line);
    if (!(ls >> key)) continue;
    if (key == "gamma") c.gamma = num(ls);
    else if (key == "lr") c.lr = num(ls);
    else if (key == "tau") c.tau = num(ls);
    else if (key == "batch_size") c.batch_size = static_cast<int>(num(ls));
    else if (key == "adaptive_alpha") c.adaptive_alpha = num(ls) != 0.0;
    else if (key == "alpha") c.alpha = num(ls);
    else if (key == "target_entropy") c.target_entropy = num(ls);
    else if (key == "log_std_min") c.log_std_min = num(ls);
    else if (key == "log_std_max") c.log_std_max = num(ls);
    else if (key == "log_alpha") log_alpha = num(ls);
    else if (key == "scaling") {
      f.cx = num(ls);
      f.cy = num(ls);
      f.sx = num(ls);
      f.sy = num(ls);
    } else if (key == "updates") updates = static_cast<std::int64_t>(num(ls));
  }
  SacAgent<Scalar> agent;
  auto actor = load_mlp<Scalar>((dir / "actor.ckpt").string());
  auto c1 = load_mlp<Scalar>((dir / "critic1.ckpt").string());
  auto c2 = load_mlp<Scalar>((dir / "critic2.ckpt").string());
  auto t1 = load_mlp<Scalar>((dir / "target1.ckpt").string());
  auto t2 = load_mlp<Scalar>((dir / "target2.ckpt").string());
  if (actor.input_size() != kObsFeatures || actor.output_size() != 2 ||
      c1.input_size() != kObsFeatures + 1 || c1.output_size() != 1 || c1.sizes() != c2.sizes() ||
      c1.sizes() != t1.sizes() || c1.sizes() != t2.sizes())
    throw std::runtime_error("agent checkpoint: inconsistent network shapes");
  c.hidden.assign(actor.sizes().begin() + 1, actor.sizes().end() - 1);
  Rng dummy(0);
  c.validate();
  agent = SacAgent<Scalar>(c, f, dummy);
  agent.actor() = std::move(actor);
  agent.critic1() = std::move(c1);
  agent.critic2() = std::move(c2);
  agent.target1() = std::move(t1);
  agent.target2() = std::move(t2);
  agent.set_log_alpha(log_alpha);
  agent.set_update_count(updates);
  return agent;
}

}  // namespace dcil
