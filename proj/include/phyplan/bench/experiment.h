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

#ifndef PHYPLAN_BENCH_EXPERIMENT_H_
#define PHYPLAN_BENCH_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "phyplan/adapt/gaussian_process.h"
#include "phyplan/bench/results_csv.h"
#include "phyplan/planner/mcts.h"
#include "phyplan/skills/predictor.h"
#include "phyplan/worldsim/config.h"
#include "phyplan/worldsim/simulator.h"

namespace phyplan::bench {

enum class Agent { kPhyplan, kPhyplanNoGp, kRandom };
enum class RolloutBackend { kSkillModels, kSlowOracle };

std::string_view to_string(Agent a);
Agent agent_from_string(std::string_view s);
std::string_view to_string(RolloutBackend b);
RolloutBackend backend_from_string(std::string_view s);

struct ExperimentConfig {
  std::vector<worldsim::TaskKind> tasks;
  std::vector<Agent> agents;
  int num_attempts = 10;
  std::vector<std::uint64_t> seeds;
  worldsim::SimNoise noise;
  planner::PlannerConfig planner;
  adapt::GPHyperparameters gp;
  RolloutBackend rollout_backend = RolloutBackend::kSkillModels;
  worldsim::WorldConfig world = worldsim::default_world_config();
  int grid_resolution = 200;

  // Throws std::invalid_argument.
  void validate() const;
};

// Skills needed by the planning agents of `cfg`.
std::vector<skills::SkillKind> required_skills(const ExperimentConfig& cfg);

// Uniform random actions executed in the simulator.
std::vector<ResultRow> run_random(const worldsim::TaskDef& task, int num_attempts,
                                  std::uint64_t seed, double opt_reward,
                                  const worldsim::SimNoise& noise = {});

// Every (task, agent, seed) cell in that order. `models` serves the
// skill_models backend and may be null for slow_oracle or random-only runs;
// a missing model raises std::runtime_error naming the train command. Each
// finished row is also passed to `on_row` when given.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg,
                                      const skills::SkillPredictor* models,
                                      const std::function<void(const ResultRow&)>& on_row = {});

// Mean final regret per (task, agent) as an aligned text table.
void write_summary(std::ostream& out, std::span<const ResultRow> rows);

}  // namespace phyplan::bench

#endif  // PHYPLAN_BENCH_EXPERIMENT_H_
