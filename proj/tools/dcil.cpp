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

// dcil: demo generation, skill extraction, training, evaluation, ablation
// and plotting. Exit codes: 0 success, 2 usage or input error, 3 planner
// failure, 4 training divergence.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "dcil/ablation.hpp"
#include "dcil/maze_io.hpp"
#include "dcil/mazes.hpp"
#include "dcil/rrt.hpp"
#include "dcil/skills.hpp"
#include "dcil/trainer.hpp"
#include "run_config.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using namespace dcil;
using namespace dcil::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPlanner = 3;
constexpr int kExitDiverged = 4;

fs::path run_root() {
  const char* env = std::getenv("DCIL_RUN_ROOT");
  return env && *env ? fs::path(env) : fs::path("runs");
}

struct ConfigArgs {
  std::string file;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<long> steps;

  void add_to(CLI::App* app, bool with_steps) {
    app->add_option("--config", file, "JSON file patching the default configuration")
        ->check(CLI::ExistingFile);
    app->add_option("--set", overrides, "Override one value, e.g. --set sac.lr=1e-4");
    app->add_option("--seed", seed, "Master seed");
    if (with_steps) app->add_option("--steps", steps, "Environment interaction budget");
  }

  json build() const {
    json j = default_config();
    if (!file.empty()) apply_file(j, file);
    for (const auto& o : overrides) apply_override(j, o);
    if (seed) j["seed"] = *seed;
    if (steps) j["trainer"]["budget"] = *steps;
    return j;
  }
};

MazeMap maze_from(const std::string& path) {
  if (path.empty()) return canonical_maze();
  if (!fs::exists(path)) throw ConfigError("maze file '" + path + "' does not exist");
  return load_maze(path);
}

Trajectory demo_from(const std::string& path) {
  if (!fs::exists(path)) throw ConfigError("demonstration file '" + path + "' does not exist");
  return load_trajectory(path);
}

SkillChain skills_for(const Trajectory& demo, const SkillsConfig& sc) {
  return extract_skills(demo, sc.resolve_epsilon(goal_arc_length(demo)), sc.beta);
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p);
  out << s;
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
}

std::string skill_table(const SkillChain& c) {
  std::ostringstream os;
  os << "skill  goal_x  goal_y  t_max  demo_steps\n";
  for (const Skill& s : c.skills)
    os << s.index << "  " << fmt(s.goal.x) << "  " << fmt(s.goal.y) << "  " << s.t_max << "  "
       << s.demo_steps() << "\n";
  return os.str();
}

// ---- gen-demo -------------------------------------------------------------

struct GenDemoArgs {
  ConfigArgs cfg;
  std::string maze, out;
  std::optional<int> max_nodes;
};

int cmd_gen_demo(const GenDemoArgs& a) {
  json j = a.cfg.build();
  if (a.max_nodes) j["rrt"]["max_nodes"] = *a.max_nodes;
  const RunConfig rc = resolve(j);
  const MazeMap maze = maze_from(a.maze);
  try {
    const Trajectory t = rrt_plan(maze, maze.start, maze.exit, rc.env, rc.seed, rc.rrt);
    save_trajectory(t, a.out);
    std::cout << "demo " << a.out << ": " << t.size() - 1 << " steps, arc length "
              << goal_arc_length(t) << ", " << t.meta.at("nodes") << " tree nodes\n";
  } catch (const PlannerFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPlanner;
  }
  return kExitOk;
}

// ---- extract-skills -------------------------------------------------------

struct ExtractArgs {
  ConfigArgs cfg;
  std::string demo, out;
  std::optional<int> num_skills;
  std::optional<double> epsilon_dist, beta;
};

int cmd_extract(const ExtractArgs& a) {
  json j = a.cfg.build();
  if (a.num_skills) j["skills"]["num_skills"] = *a.num_skills;
  if (a.epsilon_dist) j["skills"]["epsilon_dist"] = *a.epsilon_dist;
  if (a.beta) j["skills"]["beta"] = *a.beta;
  const RunConfig rc = resolve(j);
  const SkillChain chain = skills_for(demo_from(a.demo), rc.skills);
  save_skills(chain, a.out);
  std::cout << chain.size() << " skills, epsilon_dist " << chain.epsilon_dist
            << (chain.degenerate ? " (demonstration shorter than one skill)" : "") << "\n"
            << skill_table(chain);
  return kExitOk;
}

// ---- train ----------------------------------------------------------------

json report_json(const TrainReport& r, const SkillChain& chain, double seconds) {
  json skills = json::array();
  for (std::size_t i = 0; i < chain.size(); ++i)
    skills.push_back({{"index", i},
                      {"goal", {chain[i].goal.x, chain[i].goal.y}},
                      {"t_max", chain[i].t_max},
                      {"trials", r.stats.trials[i]},
                      {"successes", r.stats.successes[i]}});
  json j = {{"schema", "dcil-report v1"},
            {"env_steps", r.env_steps},
            {"episodes", r.episodes},
            {"updates", r.updates},
            {"first_solve_step", nullptr},
            {"final_chain_solved", !r.evals.empty() && r.evals.back().chain_solved},
            {"final_max_zone", r.evals.empty() ? -1 : r.evals.back().max_zone},
            {"diverged", r.diverged},
            {"divergence_message", r.divergence_message},
            {"skills", skills},
            {"elapsed_seconds", seconds}};
  if (r.first_solve_step) j["first_solve_step"] = *r.first_solve_step;
  return j;
}

/// Runs one training job into `dir`: resolved config, maze, demonstration,
/// skills, metrics.csv, checkpoints and report.json.
TrainReport run_training(const json& resolved, const MazeMap& maze, const Trajectory& demo,
                         const fs::path& dir, bool verbose) {
  const RunConfig rc = resolve(resolved);
  const SkillChain chain = skills_for(demo, rc.skills);
  fs::create_directories(dir);
  write_text(dir / "config.json", resolved.dump(2) + "\n");
  {
    std::ofstream m(dir / "maze.txt");
    write_maze(m, maze);
  }
  save_trajectory(demo, (dir / "demo.txt").string());
  save_skills(chain, (dir / "skills.txt").string());

  std::ofstream metrics(dir / "metrics.csv");
  write_metrics_header(metrics, chain.size());
  bool saved_first = false;
  TrainHooks hooks;
  hooks.on_eval = [&](const EvalPoint& p, const Agent& agent, const EvalResult&) {
    write_metrics_row(metrics, p);
    metrics.flush();
    save_agent(agent, dir / "checkpoints" / "latest", rc.seed, p.step);
    if (p.chain_solved && !saved_first) {
      save_agent(agent, dir / "checkpoints" / "first_solve", rc.seed, p.step);
      saved_first = true;
    }
    if (verbose)
      std::cerr << "step " << p.step << "  chain_solved " << p.chain_solved << "  max_zone "
                << p.max_zone << "\n";
  };
  const auto t0 = std::chrono::steady_clock::now();
  Agent agent;
  const TrainReport rep = train(rc.train, maze, chain, hooks, &agent);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!rep.diverged) save_agent(agent, dir / "checkpoints" / "final", rc.seed, rep.env_steps);
  write_text(dir / "report.json", report_json(rep, chain, secs).dump(2) + "\n");
  if (!metrics) throw std::runtime_error("cannot write '" + (dir / "metrics.csv").string() + "'");
  return rep;
}

struct TrainArgs {
  ConfigArgs cfg;
  std::string demo, maze, out, ablate;
  bool stop_on_solve = false;
  bool quiet = false;
};

int cmd_train(const TrainArgs& a) {
  json j = a.cfg.build();
  if (!a.ablate.empty()) {
    TrainConfig flags;
    apply_variant(flags, parse_variant(a.ablate));
    j["trainer"]["disable_bonus"] = flags.disable_bonus;
    j["trainer"]["disable_overshoot"] = flags.disable_overshoot;
  }
  if (a.stop_on_solve) j["trainer"]["stop_on_solve"] = true;
  const RunConfig rc = resolve(j);
  const MazeMap maze = maze_from(a.maze);
  const Trajectory demo = demo_from(a.demo);
  const fs::path dir =
      a.out.empty() ? run_root() / ("train-seed" + std::to_string(rc.seed)) : fs::path(a.out);
  const TrainReport rep = run_training(j, maze, demo, dir, !a.quiet);
  std::cout << "run " << dir.string() << ": " << rep.env_steps << " steps, first solve "
            << (rep.first_solve_step ? std::to_string(*rep.first_solve_step) : "never") << "\n";
  if (rep.diverged) {
    std::cerr << "error: training diverged: " << rep.divergence_message << "\n";
    return kExitDiverged;
  }
  return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  ConfigArgs cfg;
  std::string run, checkpoint, skills, maze, trajectory_out;
  int runs = 1;
  bool deterministic = false;
};

int cmd_eval(const EvalArgs& a) {
  ConfigArgs cargs = a.cfg;
  fs::path ckpt = a.checkpoint, skills_path = a.skills;
  std::string maze_path = a.maze;
  if (!a.run.empty()) {
    const fs::path d = a.run;
    if (ckpt.empty()) ckpt = d / "checkpoints" / "final";
    if (skills_path.empty()) skills_path = d / "skills.txt";
    if (maze_path.empty()) maze_path = (d / "maze.txt").string();
    if (cargs.file.empty()) cargs.file = (d / "config.json").string();
  }
  if (ckpt.empty() || skills_path.empty())
    throw ConfigError("eval needs --run, or --checkpoint together with --skills");
  const RunConfig rc = resolve(cargs.build());
  const MazeMap maze = maze_from(maze_path);
  if (!fs::exists(skills_path)) throw ConfigError("skills file '" + skills_path.string() + "' does not exist");
  const SkillChain chain = load_skills(skills_path.string());
  const Agent agent = load_agent<float>(ckpt);
  if (a.runs <= 0) throw ConfigError("--runs must be > 0");

  Rng rng = make_rng(rc.seed, Stream::kActor);
  const Policy stochastic = [&](const CarState& s, const GoalXY& g) {
    return agent.sample_action(s, g, rng).action;
  };
  const Policy policy = a.deterministic ? deterministic_policy(agent) : stochastic;
  std::unique_ptr<std::ofstream> traj;
  if (!a.trajectory_out.empty()) {
    traj = std::make_unique<std::ofstream>(a.trajectory_out);
    *traj << "# dcil-eval-trajectory v1\nrun,step,x,y,theta\n" << std::setprecision(17);
  }
  int solved = 0, best_zone = -1;
  double zone_sum = 0.0;
  for (int k = 0; k < a.runs; ++k) {
    const EvalResult r = evaluate_chain(policy, chain, maze, rc.env);
    solved += r.solved;
    best_zone = std::max(best_zone, r.max_zone);
    zone_sum += r.max_zone;
    if (traj)
      for (std::size_t i = 0; i < r.trajectory.size(); ++i)
        *traj << k << ',' << i << ',' << r.trajectory[i].x << ',' << r.trajectory[i].y << ','
              << r.trajectory[i].theta << "\n";
  }
  std::cout << "runs " << a.runs << "  solved_fraction " << static_cast<double>(solved) / a.runs
            << "  mean_max_zone " << zone_sum / a.runs << "  best_max_zone " << best_zone << "\n";
  return kExitOk;
}

// ---- ablate ---------------------------------------------------------------

struct AblateArgs {
  ConfigArgs cfg;
  std::string demo, maze, out;
  std::vector<std::string> variants;
  int seeds = 5;
};

// Chain-solved flag of a run at `step`: the last evaluation at or before it.
bool solved_now(const TrainReport& r, long step) {
  bool v = false;
  for (const auto& p : r.evals) {
    if (p.step > step) break;
    v = p.chain_solved;
  }
  return v;
}

int cmd_ablate(const AblateArgs& a) {
  const json base = a.cfg.build();
  const RunConfig rc = resolve(base);
  if (a.seeds <= 0) throw ConfigError("--seeds must be > 0");
  std::vector<Variant> variants;
  for (const auto& v : a.variants) variants.push_back(parse_variant(v));
  if (variants.empty()) variants.assign(kAllVariants.begin(), kAllVariants.end());
  const MazeMap maze = maze_from(a.maze);
  const Trajectory demo = demo_from(a.demo);
  const fs::path dir = a.out.empty() ? run_root() / "ablation" : fs::path(a.out);

  std::map<Variant, std::vector<TrainReport>> reports;
  bool any_diverged = false;
  for (Variant v : variants)
    for (int k = 1; k <= a.seeds; ++k) {
      json j = base;
      TrainConfig flags;
      apply_variant(flags, v);
      j["seed"] = rc.seed + static_cast<std::uint64_t>(k - 1);
      j["trainer"]["disable_bonus"] = flags.disable_bonus;
      j["trainer"]["disable_overshoot"] = flags.disable_overshoot;
      const fs::path run_dir = dir / variant_name(v) / ("seed_" + std::to_string(k));
      const TrainReport r = run_training(j, maze, demo, run_dir, false);
      any_diverged |= r.diverged;
      std::cerr << variant_name(v) << " seed " << k << ": first solve "
                << (r.first_solve_step ? std::to_string(*r.first_solve_step) : "never")
                << (r.diverged ? " (diverged)" : "") << "\n";
      reports[v].push_back(r);
    }

  const long budget = rc.train.budget;
  std::vector<long> grid;
  for (long s = 0; s < budget; s += rc.train.eval_period) grid.push_back(s);
  grid.push_back(budget);

  std::ofstream csv(dir / "ablation.csv");
  csv << "# dcil-ablation v1\nstep";
  for (Variant v : variants) csv << ',' << variant_name(v) << "_solved_by," << variant_name(v) << "_solved_now";
  csv << "\n" << std::fixed << std::setprecision(6);
  std::vector<Series> series;
  for (Variant v : variants) series.push_back({"DCIL " + variant_name(v), {}, {}});
  for (long s : grid) {
    csv << s;
    for (std::size_t i = 0; i < variants.size(); ++i) {
      const auto& runs = reports[variants[i]];
      std::vector<std::optional<long>> firsts;
      double now = 0.0;
      for (const auto& r : runs) {
        firsts.push_back(r.first_solve_step);
        now += solved_now(r, s);
      }
      const double by = solved_fraction(firsts, s);
      csv << ',' << by << ',' << now / runs.size();
      series[i].x.push_back(static_cast<double>(s));
      series[i].y.push_back(by);
    }
    csv << "\n";
  }
  std::ofstream svg(dir / "ablation.svg");
  write_line_chart(svg, "Fraction of runs that solved the maze", "environment interactions",
                   "solved fraction", series);

  json summary = {{"schema", "dcil-ablation-summary v1"}, {"seeds", a.seeds}, {"budget", budget}};
  std::map<Variant, std::vector<double>> indicator;
  for (Variant v : variants) {
    json firsts = json::array();
    for (const auto& r : reports[v]) {
      firsts.push_back(r.first_solve_step ? json(*r.first_solve_step) : json(nullptr));
      indicator[v].push_back(solved_by(r.first_solve_step, budget) ? 1.0 : 0.0);
    }
    summary["variants"][variant_name(v)] = {{"first_solve_steps", firsts},
                                            {"solved_fraction", mean(indicator[v])}};
  }
  if (indicator.count(Variant::kFull) && indicator.count(Variant::kNoBonus) && a.seeds >= 2) {
    const WelchResult w = welch_t_test(indicator[Variant::kFull], indicator[Variant::kNoBonus]);
    summary["welch_full_vs_no_bonus"] = {
        {"t", std::isfinite(w.t) ? json(w.t) : json(nullptr)}, {"df", w.df}, {"p", w.p}};
  }
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << "ablation " << dir.string() << ":";
  for (Variant v : variants) std::cout << "  " << variant_name(v) << " " << mean(indicator[v]);
  std::cout << "\n";
  return any_diverged ? kExitDiverged : kExitOk;
}

// ---- plot -----------------------------------------------------------------

struct PlotArgs {
  std::string ablation, metrics, maze, demo, skills, trajectory, out;
  bool use_maze = false;
};

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  if (rows.size() < 2) throw ConfigError("'" + path + "' has no data rows");
  return rows;
}

double cell(const std::string& s, const std::string& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ConfigError("'" + path + "': bad number '" + s + "'");
  return v;
}

// Columns whose header ends in `suffix` become one series each.
std::vector<Series> csv_series(const std::string& path, const std::string& suffix) {
  const auto rows = read_csv(path);
  std::vector<Series> out;
  const auto& head = rows[0];
  for (std::size_t c = 1; c < head.size(); ++c) {
    if (head[c].size() < suffix.size() ||
        head[c].compare(head[c].size() - suffix.size(), suffix.size(), suffix) != 0)
      continue;
    Series s{head[c].substr(0, head[c].size() - suffix.size()), {}, {}};
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (rows[r].size() != head.size()) throw ConfigError("'" + path + "': ragged row");
      s.x.push_back(cell(rows[r][0], path));
      s.y.push_back(cell(rows[r][c], path));
    }
    out.push_back(s);
  }
  return out;
}

int cmd_plot(const PlotArgs& a) {
  const int modes = !a.ablation.empty() + !a.metrics.empty() + a.use_maze;
  if (modes != 1) throw ConfigError("plot needs exactly one of --ablation, --metrics or --maze");
  std::ofstream out(a.out);
  if (!out) throw ConfigError("cannot write '" + a.out + "'");
  if (!a.ablation.empty()) {
    write_line_chart(out, "Fraction of runs that solved the maze", "environment interactions",
                     "solved fraction", csv_series(a.ablation, "_solved_by"));
  } else if (!a.metrics.empty()) {
    auto series = csv_series(a.metrics, "");
    std::erase_if(series, [](const Series& s) { return s.label == "max_zone"; });
    write_line_chart(out, "Training progress", "environment interactions", "success", series);
  } else {
    const MazeMap maze = maze_from(a.maze);
    MazeDrawing d;
    d.maze = &maze;
    SkillChain chain;
    if (!a.demo.empty()) d.paths.push_back(demo_from(a.demo).states);
    if (!a.skills.empty()) {
      chain = load_skills(a.skills);
      d.skills = &chain;
    }
    if (!a.trajectory.empty()) {
      const auto rows = read_csv(a.trajectory);
      if (a.demo.empty()) d.paths.emplace_back();
      std::string current;
      for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 5) throw ConfigError("'" + a.trajectory + "': expected 5 columns");
        if (rows[r][0] != current) {
          current = rows[r][0];
          d.paths.emplace_back();
        }
        d.paths.back().push_back({cell(rows[r][2], a.trajectory), cell(rows[r][3], a.trajectory),
                                  cell(rows[r][4], a.trajectory)});
      }
    }
    write_maze_svg(out, d);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Demonstration-conditioned skill chaining on a Dubins maze.\n"
               "Run directories default to $DCIL_RUN_ROOT (or ./runs)."};
  app.require_subcommand(1);

  GenDemoArgs gd;
  auto* c_gd = app.add_subcommand("gen-demo", "Plan one demonstration with kinodynamic RRT");
  gd.cfg.add_to(c_gd, false);
  c_gd->add_option("--maze", gd.maze, "Maze file (default: built-in canonical maze)");
  c_gd->add_option("--out", gd.out, "Output trajectory file")->required();
  c_gd->add_option("--max-nodes", gd.max_nodes, "Planner node budget");

  ExtractArgs ex;
  auto* c_ex = app.add_subcommand("extract-skills", "Split a demonstration into skills");
  ex.cfg.add_to(c_ex, false);
  c_ex->add_option("--demo", ex.demo, "Demonstration file")->required();
  c_ex->add_option("--out", ex.out, "Output skills file")->required();
  c_ex->add_option("--num-skills", ex.num_skills, "Number of equal-length skills");
  c_ex->add_option("--epsilon-dist", ex.epsilon_dist, "Skill length in goal space (overrides --num-skills)");
  c_ex->add_option("--beta", ex.beta, "Step budget factor over the demonstrated length");

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Train the goal-conditioned policy on the skill chain");
  tr.cfg.add_to(c_tr, true);
  c_tr->add_option("--demo", tr.demo, "Demonstration file")->required();
  c_tr->add_option("--maze", tr.maze, "Maze file (default: built-in canonical maze)");
  c_tr->add_option("--out", tr.out, "Run directory");
  c_tr->add_option("--ablate", tr.ablate, "Variant: full, no-bonus, no-overshoot or no-both");
  c_tr->add_flag("--stop-on-solve", tr.stop_on_solve, "Stop at the first solved evaluation");
  c_tr->add_flag("--quiet", tr.quiet, "No per-evaluation progress on stderr");

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Evaluate a checkpoint on the skill chain");
  ev.cfg.add_to(c_ev, false);
  c_ev->add_option("--run", ev.run, "Run directory (uses its final checkpoint, skills, maze and config)");
  c_ev->add_option("--checkpoint", ev.checkpoint, "Checkpoint directory");
  c_ev->add_option("--skills", ev.skills, "Skills file");
  c_ev->add_option("--maze", ev.maze, "Maze file");
  c_ev->add_option("--runs", ev.runs, "Number of evaluation rollouts");
  c_ev->add_flag("--deterministic", ev.deterministic, "Use the policy mode instead of sampling");
  c_ev->add_option("--trajectory-out", ev.trajectory_out, "CSV dump of the visited states");

  AblateArgs ab;
  auto* c_ab = app.add_subcommand("ablate", "Train every variant over several seeds and compare");
  ab.cfg.add_to(c_ab, true);
  c_ab->add_option("--demo", ab.demo, "Demonstration file")->required();
  c_ab->add_option("--maze", ab.maze, "Maze file (default: built-in canonical maze)");
  c_ab->add_option("--out", ab.out, "Output directory");
  c_ab->add_option("--seeds", ab.seeds, "Seeds per variant, counted up from --seed");
  c_ab->add_option("--variants", ab.variants, "Subset of full, no-overshoot, no-bonus, no-both");

  PlotArgs pl;
  auto* c_pl = app.add_subcommand("plot", "Write an SVG chart or maze drawing");
  c_pl->add_option("--ablation", pl.ablation, "ablation.csv to chart");
  c_pl->add_option("--metrics", pl.metrics, "metrics.csv to chart");
  auto* maze_opt = c_pl->add_option("--maze", pl.maze, "Maze file to draw (no value: built-in canonical)")
                       ->expected(0, 1);
  c_pl->add_option("--demo", pl.demo, "Demonstration drawn over the maze");
  c_pl->add_option("--skills", pl.skills, "Skill goals drawn over the maze");
  c_pl->add_option("--trajectory", pl.trajectory, "Evaluation trajectory CSV drawn over the maze");
  c_pl->add_option("--out", pl.out, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_gd) return cmd_gen_demo(gd);
    if (*c_ex) return cmd_extract(ex);
    if (*c_tr) return cmd_train(tr);
    if (*c_ev) return cmd_eval(ev);
    if (*c_ab) return cmd_ablate(ab);
    if (*c_pl) {
      pl.use_maze = maze_opt->count() > 0;
      return cmd_plot(pl);
    }
  } catch (const PlannerFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPlanner;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
