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

#include "phyplan/adapt/adaptive_loop.h"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "phyplan/numerics/random.h"

namespace phyplan::adapt {

AdaptiveResult adaptive_loop(const worldsim::TaskDef& task, const skills::SkillPredictor& models,
                             const AdaptConfig& cfg, int num_attempts, double opt_reward) {
  if (!(opt_reward > 0.0)) throw std::invalid_argument("opt_reward must be > 0");
  if (num_attempts < 0) throw std::invalid_argument("num_attempts must be >= 0");
  GaussianProcess gp(cfg.gp);
  std::vector<std::vector<double>> actions;
  std::vector<double> residuals;
  AdaptiveResult result;
  double best_reward = 0.0;
  for (int i = 0; i < num_attempts; ++i) {
    gp.fit(actions, residuals);
    planner::PlannerConfig pc = cfg.planner;
    pc.seed = numerics::derive_seed(cfg.planner.seed, static_cast<std::uint64_t>(i));
    pc.beta = cfg.gp.beta;

    const auto t0 = std::chrono::steady_clock::now();
    const planner::PlanResult plan = planner::plan(task, models, cfg.use_gp ? &gp : nullptr, pc);
    const auto t1 = std::chrono::steady_clock::now();

    worldsim::SimNoise noise = cfg.noise;
    noise.seed = numerics::derive_seed(cfg.noise.seed, static_cast<std::uint64_t>(i));
    const double reward_sim = worldsim::simulate_reward(task, plan.best_action, noise, cfg.fidelity);
    best_reward = std::max(best_reward, reward_sim);

    actions.push_back(worldsim::to_unit_cube(task, plan.best_action));
    residuals.push_back(reward_sim - plan.model_reward);

    AttemptRecord rec;
    rec.attempt = i;
    rec.action = plan.best_action;
    rec.phy_reward = plan.model_reward;
    rec.reward_sim = reward_sim;
    rec.best_reward = best_reward;
    rec.regret = regret_of(opt_reward, best_reward);
    rec.plan_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.log.push_back(std::move(rec));
  }
  result.regret = regret_of(opt_reward, best_reward);
  return result;
}

void write_attempt_log(std::ostream& out, const worldsim::TaskDef& task,
                       std::span<const AttemptRecord> log) {
  out << "attempt";
  for (const auto& d : task.action_dims) out << ',' << d.name;
  out << ",phy_reward,reward_sim,best_reward,regret_so_far\n";
  const auto old = out.precision(10);
  for (const AttemptRecord& r : log) {
    out << r.attempt;
    for (double a : r.action) out << ',' << a;
    out << ',' << r.phy_reward << ',' << r.reward_sim << ',' << r.best_reward << ',' << r.regret
        << '\n';
  }
  out.precision(old);
}

}  // namespace phyplan::adapt
