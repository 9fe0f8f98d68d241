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

#ifndef PHYPLAN_PLANNER_ROLLOUT_H_
#define PHYPLAN_PLANNER_ROLLOUT_H_

#include <span>

#include "phyplan/skills/predictor.h"
#include "phyplan/worldsim/tasks.h"

namespace phyplan::planner {

struct RolloutOptions {
  double t_query_step = 0.01;
  // Query times handed to the predictor per call.
  int block = 16;
  // A skill that has not terminated by then is cut off at its last query.
  double max_skill_time = 3.0;
};

struct RolloutOutcome {
  worldsim::WorldState final_state;
  double reward = 0.0;  // reward_of the predicted final state, no correction
};

// Chains the task's skills through `predictor` for a full action (clamped
// into bounds). Time-dependent skills are stepped at t_query increments until
// their termination event, located by linear interpolation between the two
// bracketing queries; the terminal outputs seed the next skill. Throws
// std::runtime_error when the predictor lacks a skill of the chain.
RolloutOutcome skill_rollout(const worldsim::TaskDef& task, const skills::SkillPredictor& predictor,
                             std::span<const double> action, const RolloutOptions& options = {});

}  // namespace phyplan::planner

#endif  // PHYPLAN_PLANNER_ROLLOUT_H_
