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

#include "phyplan/bench/experiment.h"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "phyplan/adapt/adaptive_loop.h"
#include "phyplan/adapt/grid_optimum.h"
#include "phyplan/numerics/random.h"
#include "phyplan/worldsim/oracle.h"

namespace phyplan::bench {

using numerics::derive_seed;

std::string_view to_string(Agent a) {
  switch (a) {
    case Agent::kPhyplan: return "phyplan";
    case Agent::kPhyplanNoGp: return "phyplan_no_gp";
    case Agent::kRandom: return "random";
  }
  return "?";
}

Agent agent_from_string(std::string_view s) {
  for (Agent a : {Agent::kPhyplan, Agent::kPhyplanNoGp, Agent::kRandom}) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown agent '" + std::string(s) + "'");
}

std::string_view to_string(RolloutBackend b) {
  return b == RolloutBackend::kSkillModels ? "skill_models" : "slow_oracle";
}

RolloutBackend backend_from_string(std::string_view s) {
  if (s == "skill_models") return RolloutBackend::kSkillModels;
  if (s == "slow_oracle") return RolloutBackend::kSlowOracle;
  throw std::invalid_argument("unknown rollout backend '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  if (tasks.empty()) throw std::invalid_argument("experiment needs at least one task");
  if (agents.empty()) throw std::invalid_argument("experiment needs at least one agent");
  if (seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
  if (num_attempts < 1) throw std::invalid_argument("attempts must be >= 1");
  if (grid_resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  if (noise.sigma_velocity < 0.0) throw std::invalid_argument("noise must be >= 0");
  planner.validate();
}

std::vector<skills::SkillKind> required_skills(const ExperimentConfig& cfg) {
  const bool plans = std::any_of(cfg.agents.begin(), cfg.agents.end(),
                                 [](Agent a) { return a != Agent::kRandom; });
  std::set<skills::SkillKind> s;
  if (plans) {
    for (worldsim::TaskKind t : cfg.tasks) {
      for (skills::SkillKind k : cfg.world.task(t).skill_chain) s.insert(k);
    }
  }
  return {s.begin(), s.end()};
}

std::vector<ResultRow> run_random(const worldsim::TaskDef& task, int num_attempts,
                                  std::uint64_t seed, double opt_reward,
                                  const worldsim::SimNoise& noise) {
  std::mt19937_64 rng(seed);
  std::vector<ResultRow> rows;
  double best = 0.0;
  for (int i = 0; i < num_attempts; ++i) {
    std::vector<double> a;
    for (const worldsim::ActionDim& d : task.action_dims) {
      a.push_back(std::uniform_real_distribution<double>(d.lo, d.hi)(rng));
    }
    worldsim::SimNoise n = noise;
    n.seed = derive_seed(noise.seed, static_cast<std::uint64_t>(i));
    const double r = worldsim::simulate_reward(task, a, n);
    best = std::max(best, r);
    rows.push_back({std::string(task.name()), "random", seed, i, r, best,
                    adapt::regret_of(opt_reward, best), 0.0});
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg,
                                      const skills::SkillPredictor* models,
                                      const std::function<void(const ResultRow&)>& on_row) {
  cfg.validate();
  std::vector<ResultRow> rows;
  auto emit = [&](std::vector<ResultRow> cell) {
    check_regret_curves(cell);
    for (ResultRow& r : cell) {
      if (on_row) on_row(r);
      rows.push_back(std::move(r));
    }
  };
  for (worldsim::TaskKind kind : cfg.tasks) {
    const worldsim::TaskDef& task = cfg.world.task(kind);
    const double opt = adapt::grid_optimum(task, cfg.grid_resolution);
    const auto tid = static_cast<std::uint64_t>(kind);
    const worldsim::OracleSkillSet slow(task.physics, worldsim::Fidelity::kNumeric);
    const skills::SkillPredictor* rollout_models =
        cfg.rollout_backend == RolloutBackend::kSlowOracle ? &slow : models;
    for (Agent agent : cfg.agents) {
      for (std::uint64_t seed : cfg.seeds) {
        worldsim::SimNoise noise = cfg.noise;
        noise.seed = derive_seed(seed ^ cfg.noise.seed, 20 + tid);
        if (agent == Agent::kRandom) {
          emit(run_random(task, cfg.num_attempts, derive_seed(seed, 30 + tid), opt, noise));
          continue;
        }
        if (rollout_models == nullptr) {
          throw std::runtime_error("no skill models loaded; run `phyplan train` for each skill");
        }
        for (skills::SkillKind s : task.skill_chain) {
          if (!rollout_models->has(s)) {
            throw std::runtime_error("missing skill model '" + std::string(skills::to_string(s)) +
                                     "'; run `phyplan train --skill " +
                                     std::string(skills::to_string(s)) + "`");
          }
        }
        adapt::AdaptConfig ac;
        ac.planner = cfg.planner;
        ac.planner.seed = derive_seed(seed, 10 + tid);
        ac.gp = cfg.gp;
        ac.use_gp = agent == Agent::kPhyplan;
        ac.noise = noise;
        const adapt::AdaptiveResult res =
            adapt::adaptive_loop(task, *rollout_models, ac, cfg.num_attempts, opt);
        std::vector<ResultRow> cell;
        for (const adapt::AttemptRecord& a : res.log) {
          cell.push_back({std::string(task.name()), std::string(to_string(agent)), seed, a.attempt,
                          a.reward_sim, a.best_reward, a.regret, a.plan_ms});
        }
        emit(std::move(cell));
      }
    }
  }
  return rows;
}

void write_summary(std::ostream& out, std::span<const ResultRow> rows) {
  // Final regret of each (task, agent, seed) curve, then the mean per pair.
  std::map<std::tuple<std::string, std::string, std::uint64_t>, const ResultRow*> last;
  for (const ResultRow& r : rows) {
    auto& slot = last[{r.task, r.agent, r.seed}];
    if (slot == nullptr || r.attempt >= slot->attempt) slot = &r;
  }
  struct Acc {
    double regret = 0.0, plan_ms = 0.0;
    int n = 0;
  };
  std::map<std::pair<std::string, std::string>, Acc> acc;
  for (const auto& [key, r] : last) {
    Acc& a = acc[{std::get<0>(key), std::get<1>(key)}];
    a.regret += r->regret;
    ++a.n;
  }
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> timing;
  for (const ResultRow& r : rows) {
    auto& t = timing[{r.task, r.agent}];
    t.first += r.plan_ms;
    ++t.second;
  }
  out << std::left << std::setw(8) << "task" << std::setw(15) << "agent" << std::setw(7) << "seeds"
      << std::setw(14) << "final_regret" << "plan_ms/attempt\n";
  const auto old = out.precision(4);
  for (const auto& [key, a] : acc) {
    const auto& t = timing[key];
    out << std::setw(8) << key.first << std::setw(15) << key.second << std::setw(7) << a.n
        << std::setw(14) << a.regret / a.n << t.first / t.second << '\n';
  }
  out.precision(old);
}

}  // namespace phyplan::bench
