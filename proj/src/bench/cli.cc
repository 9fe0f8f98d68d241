// Copyright 2026 The PhyPlan Authors
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

#include "phyplan/bench/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "phyplan/adapt/adaptive_loop.h"
#include "phyplan/adapt/grid_optimum.h"
#include "phyplan/bench/experiment.h"
#include "phyplan/bench/model_zoo.h"
#include "phyplan/bench/results_csv.h"
#include "phyplan/numerics/random.h"
#include "phyplan/planner/mcts.h"
#include "phyplan/skills/training.h"
#include "phyplan/worldsim/config.h"
#include "phyplan/worldsim/dataset_generation.h"
#include "phyplan/worldsim/simulator.h"

namespace phyplan::bench {
namespace {

using skills::SkillKind;
using worldsim::TaskKind;

std::uint64_t env_seed() {
  const char* s = std::getenv("PHYPLAN_SEED");
  if (s == nullptr || *s == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw std::invalid_argument("PHYPLAN_SEED is not an unsigned integer");
  return v;
}

std::vector<TaskKind> parse_tasks(const std::vector<std::string>& names) {
  std::vector<TaskKind> out;
  for (const std::string& n : names) {
    if (n == "all") return {std::begin(worldsim::kAllTasks), std::end(worldsim::kAllTasks)};
    out.push_back(worldsim::task_from_string(n));
  }
  return out;
}

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;

  worldsim::WorldConfig world() const {
    return config.empty() ? worldsim::default_world_config() : worldsim::load_world_config(config);
  }
  std::uint64_t seed_or_env() const { return seed ? *seed : env_seed(); }
};

struct PlannerFlags {
  int D = 20;
  int K = 10;
  double alpha = 1.4142135623730951;
  double beta = 0.25;
  double t_step = 0.01;

  void add(CLI::App* app) {
    app->add_option("--D", D, "Arms sampled per expansion")->capture_default_str();
    app->add_option("--K", K, "MCTS iterations per attempt")->capture_default_str();
    app->add_option("--alpha", alpha, "UCB exploration constant")->capture_default_str();
    app->add_option("--beta", beta, "GP-UCB weight")->capture_default_str();
    app->add_option("--t-step", t_step, "Rollout query step in seconds")->capture_default_str();
  }
  planner::PlannerConfig config(std::uint64_t seed) const {
    planner::PlannerConfig c;
    c.D = D;
    c.K = K;
    c.alpha = alpha;
    c.beta = beta;
    c.t_query_step = t_step;
    c.seed = seed;
    c.validate();
    return c;
  }
};

// Skill models for the chain of `tasks` from `backend`.
struct Models {
  std::unique_ptr<skills::SkillPredictor> owned;

  Models(const std::string& backend, const std::string& dir, const worldsim::WorldConfig& world,
         const std::vector<TaskKind>& tasks) {
    if (backend == "oracle") {
      owned = std::make_unique<worldsim::OracleSkillSet>(world.physics);
    } else if (backend == "slow_oracle") {
      owned = std::make_unique<worldsim::OracleSkillSet>(world.physics, worldsim::Fidelity::kNumeric);
    } else if (backend == "skill_models") {
      std::vector<SkillKind> need;
      for (TaskKind t : tasks) {
        for (SkillKind s : world.task(t).skill_chain) {
          if (std::find(need.begin(), need.end(), s) == need.end()) need.push_back(s);
        }
      }
      owned = std::make_unique<skills::ModelPredictor>(skills::ModelPredictor::load_directory(dir, need));
    } else {
      throw std::invalid_argument("unknown backend '" + backend +
                                  "' (expected skill_models, oracle or slow_oracle)");
    }
  }
};

void print_action(std::ostream& out, const worldsim::TaskDef& task, std::span<const double> a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << (i ? " " : "") << task.action_dims[i].name << '=' << a[i];
  }
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Physics-informed skill learning and planning toolkit", "phyplan"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config, "World config file (INI)")->check(CLI::ExistingFile);

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Random seed (default: $PHYPLAN_SEED, else 0)");
  };

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate a skill dataset from the ground truth");
  std::string gen_skill, gen_out;
  int gen_n = 1000;
  double gen_noise = 0.0;
  gen->add_option("--skill", gen_skill, "Skill name")->required();
  gen->add_option("--n", gen_n, "Number of samples")->capture_default_str();
  gen->add_option("--noise", gen_noise, "Target noise sigma")->capture_default_str();
  gen->add_option("--out", gen_out, "Output CSV")->required();
  add_seed(gen);

  // train
  auto* train = app.add_subcommand("train", "Train a skill model");
  std::string tr_skill, tr_data, tr_out;
  int tr_ratio = skills::kCollocationRatio, tr_iters = 1000, tr_n = 400;
  bool tr_data_only = false;
  train->add_option("--skill", tr_skill, "Skill name")->required();
  train->add_option("--data", tr_data, "Training CSV (generated from the ground truth if omitted)");
  train->add_option("--n", tr_n, "Samples to generate when --data is omitted")->capture_default_str();
  train->add_option("--colloc-ratio", tr_ratio, "Collocation points per data point")
      ->capture_default_str();
  train->add_option("--iterations", tr_iters, "L-BFGS iterations")->capture_default_str();
  train->add_flag("--data-only", tr_data_only, "Disable the physics loss");
  train->add_option("--out", tr_out, "Output model file")->required();
  add_seed(train);

  // eval
  auto* eval = app.add_subcommand("eval", "Validation MSE of a model on a dataset");
  std::string ev_model, ev_data;
  eval->add_option("--model", ev_model, "Model file")->required()->check(CLI::ExistingFile);
  eval->add_option("--data", ev_data, "Validation CSV")->required()->check(CLI::ExistingFile);

  // identify
  auto* ident = app.add_subcommand("identify", "Recover an unknown physical parameter from data");
  std::string id_skill = "sliding", id_data;
  int id_iters = skills::kIdentificationIterations, id_ratio = skills::kCollocationRatio;
  std::optional<double> id_true;
  ident->add_option("--skill", id_skill, "Skill name")->capture_default_str();
  ident->add_option("--data", id_data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  ident->add_option("--iterations", id_iters, "L-BFGS iterations")->capture_default_str();
  ident->add_option("--colloc-ratio", id_ratio, "Collocation points per data point")
      ->capture_default_str();
  ident->add_option("--true", id_true, "True value, to report the relative error");
  ident->add_option("--out", tr_out, "Also save the trained model");
  add_seed(ident);

  // plan
  auto* planc = app.add_subcommand("plan", "Plan an action (optionally with adaptive attempts)");
  std::string pl_task, pl_backend = "skill_models", pl_models = "models", pl_log;
  int pl_attempts = 0;
  bool pl_trace = false, pl_no_gp = false;
  double pl_noise = 0.0;
  PlannerFlags pl_flags;
  planc->add_option("--task", pl_task, "Task name")->required();
  planc->add_option("--backend", pl_backend, "skill_models, oracle or slow_oracle")
      ->capture_default_str();
  planc->add_option("--models", pl_models, "Directory of <skill>.bin files")->capture_default_str();
  planc->add_option("--attempts", pl_attempts,
                    "Run the adaptive loop for this many executed attempts")
      ->capture_default_str();
  planc->add_option("--noise", pl_noise, "Execution velocity noise sigma")->capture_default_str();
  planc->add_option("--log", pl_log, "Attempt log CSV (with --attempts)");
  planc->add_flag("--trace", pl_trace, "Print one line per MCTS iteration");
  planc->add_flag("--no-gp", pl_no_gp, "Disable the GP-UCB correction");
  pl_flags.add(planc);
  add_seed(planc);

  // bench
  auto* benchc = app.add_subcommand("bench", "Regret-curve experiment");
  std::vector<std::string> b_tasks{"all"}, b_agents{"phyplan", "random"};
  std::vector<std::uint64_t> b_seeds;
  std::string b_out, b_backend = "skill_models", b_models = "models";
  int b_attempts = 10, b_res = adapt::kGridResolution;
  double b_noise = 0.0;
  PlannerFlags b_flags;
  benchc->add_option("--tasks", b_tasks, "Tasks or 'all'")->delimiter(',')->capture_default_str();
  benchc->add_option("--agents", b_agents, "phyplan, phyplan_no_gp, random")
      ->delimiter(',')
      ->capture_default_str();
  benchc->add_option("--seeds", b_seeds, "Seed list (default: $PHYPLAN_SEED, else 0)")
      ->delimiter(',');
  benchc->add_option("--attempts", b_attempts, "Attempts per run")->capture_default_str();
  benchc->add_option("--backend", b_backend, "skill_models or slow_oracle")->capture_default_str();
  benchc->add_option("--models", b_models, "Directory of <skill>.bin files")->capture_default_str();
  benchc->add_option("--noise", b_noise, "Execution velocity noise sigma")->capture_default_str();
  benchc->add_option("--grid-resolution", b_res, "Grid points per dimension for opt_reward")
      ->capture_default_str();
  benchc->add_option("--out", b_out, "Results CSV")->required();
  b_flags.add(benchc);

  // grid-opt
  auto* grid = app.add_subcommand("grid-opt", "Best reward on a dense action grid");
  std::vector<std::string> g_tasks{"all"};
  int g_res = adapt::kGridResolution;
  grid->add_option("--task", g_tasks, "Tasks or 'all'")->delimiter(',')->capture_default_str();
  grid->add_option("--resolution", g_res, "Grid points per dimension")->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "phyplan: error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  try {
    const worldsim::WorldConfig world = common.world();
    out << std::setprecision(8);

    if (*gen) {
      const SkillKind skill = skills::skill_from_string(gen_skill);
      const skills::Dataset d =
          worldsim::generate_dataset(skill, world.physics, gen_n, {}, gen_noise, common.seed_or_env());
      skills::write_dataset_csv(gen_out, d);
      out << "wrote " << d.size() << " " << gen_skill << " samples to " << gen_out << '\n';
      return 0;
    }

    if (*train) {
      const SkillKind skill = skills::skill_from_string(tr_skill);
      const skills::SkillSpec spec = skills::build_skill(skill);
      const std::uint64_t seed = common.seed_or_env();
      const skills::Dataset data =
          tr_data.empty() ? worldsim::generate_dataset(skill, world.physics, tr_n, {}, 0.0,
                                                       numerics::derive_seed(seed, 1))
                          : skills::read_dataset_csv(tr_data, skill);
      if (tr_ratio < 0) throw std::invalid_argument("--colloc-ratio must be >= 0");
      const bool physics = spec.has_physics_loss && !tr_data_only;
      const skills::CollocationSet colloc = skills::sample_collocation(
          spec.input_bounds, physics ? tr_ratio * data.size() : 0, numerics::derive_seed(seed, 2));
      numerics::LBFGSConfig cfg;
      cfg.max_iterations = tr_iters;
      const skills::SkillModel m = skills::train(spec, data, colloc, cfg, seed, physics);
      skills::save_skill_model(tr_out, m);
      out << "trained " << tr_skill << ": data_loss=" << m.report.data_loss
          << " physics_loss=" << m.report.physics_loss << " iterations=" << m.report.iterations
          << " (" << m.report.status << ")\n";
      for (const auto& [name, v] : m.learned_params) out << "learned " << name << '=' << v << '\n';
      out << "saved " << tr_out << '\n';
      return 0;
    }

    if (*eval) {
      const skills::SkillModel m = skills::load_skill_model(ev_model);
      const skills::Dataset d = skills::read_dataset_csv(ev_data, m.spec.kind);
      out << "validation MSE: " << skills::validation_mse(m, d) << " (" << d.size()
          << " samples)\n";
      return 0;
    }

    if (*ident) {
      skills::SkillSpec spec = skills::build_skill(skills::skill_from_string(id_skill));
      const skills::Dataset d = skills::read_dataset_csv(id_data, spec.kind);
      numerics::LBFGSConfig cfg;
      cfg.max_iterations = id_iters;
      const skills::Identification r =
          skills::identify_parameter(spec, d, cfg, common.seed_or_env(), id_ratio);
      for (const auto& [name, v] : r.estimate) {
        out << name << '=' << v;
        if (id_true) out << " relative_error=" << std::abs(v - *id_true) / std::abs(*id_true);
        out << '\n';
      }
      if (!tr_out.empty()) skills::save_skill_model(tr_out, r.model);
      return 0;
    }

    if (*planc) {
      const TaskKind kind = worldsim::task_from_string(pl_task);
      const worldsim::TaskDef& task = world.task(kind);
      const Models models(pl_backend, pl_models, world, {kind});
      const std::uint64_t seed = common.seed_or_env();
      planner::PlannerConfig pc = pl_flags.config(seed);
      if (pl_attempts <= 0) {
        pc.trace = pl_trace;
        adapt::GaussianProcess gp({0.2, 1.0, 1e-4, pl_flags.beta});
        const planner::PlanResult r = planner::plan(task, *models.owned, pl_no_gp ? nullptr : &gp, pc);
        if (pl_trace) planner::write_trace(out, r.trace);
        worldsim::SimNoise noise{pl_noise, numerics::derive_seed(seed, 3)};
        out << "best_action: ";
        print_action(out, task, r.best_action);
        out << "\nphy_reward: " << r.phy_reward << "\nmodel_reward: " << r.model_reward
            << "\nreward_sim: " << worldsim::simulate_reward(task, r.best_action, noise) << '\n';
        return 0;
      }
      adapt::AdaptConfig ac;
      ac.planner = pc;
      ac.gp.beta = pl_flags.beta;
      ac.use_gp = !pl_no_gp;
      ac.noise = {pl_noise, numerics::derive_seed(seed, 3)};
      const double opt = adapt::grid_optimum(task);
      const adapt::AdaptiveResult r = adapt::adaptive_loop(task, *models.owned, ac, pl_attempts, opt);
      adapt::write_attempt_log(out, task, r.log);
      if (!pl_log.empty()) {
        std::ofstream f(pl_log);
        if (!f) throw std::runtime_error("cannot write " + pl_log);
        adapt::write_attempt_log(f, task, r.log);
      }
      out << "opt_reward: " << opt << "\nregret: " << r.regret << '\n';
      return 0;
    }

    if (*benchc) {
      ExperimentConfig cfg;
      cfg.world = world;
      cfg.tasks = parse_tasks(b_tasks);
      for (const std::string& a : b_agents) cfg.agents.push_back(agent_from_string(a));
      cfg.seeds = b_seeds.empty() ? std::vector<std::uint64_t>{env_seed()} : b_seeds;
      cfg.num_attempts = b_attempts;
      cfg.noise.sigma_velocity = b_noise;
      cfg.planner = b_flags.config(0);
      cfg.gp.beta = b_flags.beta;
      cfg.rollout_backend = backend_from_string(b_backend);
      cfg.grid_resolution = b_res;
      cfg.validate();
      std::optional<skills::ModelPredictor> models;
      const std::vector<SkillKind> need = required_skills(cfg);
      if (cfg.rollout_backend == RolloutBackend::kSkillModels && !need.empty()) {
        models = skills::ModelPredictor::load_directory(b_models, need);
      }
      std::ofstream f(b_out);
      if (!f) throw std::runtime_error("cannot write " + b_out);
      write_results_header(f);
      const std::vector<ResultRow> rows =
          run_experiment(cfg, models ? &*models : nullptr, [&](const ResultRow& r) {
            write_result_row(f, r);
            f.flush();
          });
      write_summary(out, rows);
      out << "wrote " << rows.size() << " rows to " << b_out << '\n';
      return 0;
    }

    if (*grid) {
      for (TaskKind kind : parse_tasks(g_tasks)) {
        const worldsim::TaskDef& task = world.task(kind);
        const adapt::GridOptimum g = adapt::grid_search(task, g_res);
        out << task.name() << ": opt_reward=" << g.reward << " at ";
        print_action(out, task, g.action);
        out << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "phyplan: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace phyplan::bench
