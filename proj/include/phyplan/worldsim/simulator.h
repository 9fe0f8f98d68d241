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

#ifndef PHYPLAN_WORLDSIM_SIMULATOR_H_
#define PHYPLAN_WORLDSIM_SIMULATOR_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "phyplan/worldsim/oracle.h"
#include "phyplan/worldsim/tasks.h"

namespace phyplan::worldsim {

// Gaussian noise added to every velocity component at each skill transition.
struct SimNoise {
  double sigma_velocity = 0.0;
  std::uint64_t seed = 0;
};

struct TrajectoryPoint {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Phase phase = Phase::kResting;
  // Total mechanical energy of every moving body, joules.
  double energy = 0.0;
};

struct ExecutionResult {
  WorldState final_state;
  double reward = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  bool clamped = false;
};

// Runs the task's skill chain on the ground-truth physics. Out-of-bounds
// actions are clamped (reported through `clamped`). Every phase terminates:
// flights end on the floor (or the wedge), slides at rest or at a table
// boundary.
ExecutionResult execute_action(const TaskDef& task, std::span<const double> action,
                               const SimNoise& noise = {},
                               Fidelity fidelity = Fidelity::kAnalytic,
                               bool record_trajectory = true);

// Reward only, without a trajectory.
double simulate_reward(const TaskDef& task, std::span<const double> action,
                       const SimNoise& noise = {}, Fidelity fidelity = Fidelity::kAnalytic);

// Rows "t,x,y,z,vx,vy,vz,phase" with a header line.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryPoint>& trajectory);

}  // namespace phyplan::worldsim

#endif  // PHYPLAN_WORLDSIM_SIMULATOR_H_
