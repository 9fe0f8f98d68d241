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

#ifndef PHYPLAN_ADAPT_ADAPTIVE_LOOP_H_
#define PHYPLAN_ADAPT_ADAPTIVE_LOOP_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "phyplan/adapt/gaussian_process.h"
#include "phyplan/planner/mcts.h"
#include "phyplan/skills/predictor.h"
#include "phyplan/worldsim/simulator.h"
#include "phyplan/worldsim/tasks.h"

namespace phyplan::adapt {

struct AdaptConfig {
  planner::PlannerConfig planner;
  GPHyperparameters gp;
  // false plans on the raw skill-model reward with no GP term at all.
  bool use_gp = true;
  // Execution noise; its seed is mixed with the attempt index.
  worldsim::SimNoise noise;
  worldsim::Fidelity fidelity = worldsim::Fidelity::kAnalytic;
};

struct AttemptRecord {
  int attempt = 0;
  std::vector<double> action;
  double phy_reward = 0.0;  // skill-model reward of the executed action
  double reward_sim = 0.0;
  double best_reward = 0.0;
  double regret = 1.0;  // after this attempt
  double plan_ms = 0.0;
};

struct AdaptiveResult {
  double regret = 1.0;
  std::vector<AttemptRecord> log;
};

// Plans, executes in the simulator, and refits the GP on the residuals
// reward_sim - phy_reward of all executed actions, for num_attempts attempts.
// Attempt i plans with seed derive_seed(cfg.planner.seed, i). Throws
// std::invalid_argument unless opt_reward > 0.
AdaptiveResult adaptive_loop(const worldsim::TaskDef& task, const skills::SkillPredictor& models,
                             const AdaptConfig& cfg, int num_attempts, double opt_reward);

inline double regret_of(double opt_reward, double best_reward) {
  return (opt_reward - best_reward) / opt_reward;
}

// Header "attempt,a0..,phy_reward,reward_sim,best_reward,regret_so_far" with
// the task's action names, then one row per attempt.
void write_attempt_log(std::ostream& out, const worldsim::TaskDef& task,
                       std::span<const AttemptRecord> log);

}  // namespace phyplan::adapt

#endif  // PHYPLAN_ADAPT_ADAPTIVE_LOOP_H_
