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

#ifndef PHYPLAN_WORLDSIM_TASKS_H_
#define PHYPLAN_WORLDSIM_TASKS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "phyplan/skills/skill_spec.h"
#include "phyplan/worldsim/oracle.h"

namespace phyplan::worldsim {

enum class TaskKind { kLaunch, kBounce, kSlide, kBridge };

inline constexpr TaskKind kAllTasks[] = {TaskKind::kLaunch, TaskKind::kBounce, TaskKind::kSlide,
                                         TaskKind::kBridge};

std::string_view to_string(TaskKind kind);
// Throws std::invalid_argument for an unknown name.
TaskKind task_from_string(std::string_view name);

enum class Phase { kAttachedToPendulum, kSliding, kAirborne, kResting, kInGap };
std::string_view to_string(Phase phase);

// z is up; the floor is z = 0.
struct WorldState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Phase phase = Phase::kResting;
};

struct GoalRegion {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.08;
};

struct ActionDim {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
};

struct Geometry {
  double table_height = 0.5;
  // Horizontal position of the pendulum pivot; the bob's lowest point is at
  // table height, where it releases the ball or strikes the puck.
  Eigen::Vector2d pivot_xy = Eigen::Vector2d::Zero();
  // Ball drop point and wedge contact point (bounce).
  Eigen::Vector3d wedge_contact{0.0, 0.0, 0.3};
  // Gap in the table along +x, bridge and far table edge (bridge).
  double gap_start = 0.4;
  double gap_end = 0.6;
  double bridge_length = 0.3;
  double table_edge = 1.0;
};

struct TaskDef {
  TaskKind kind = TaskKind::kLaunch;
  std::vector<SkillKind> skill_chain;
  std::vector<ActionDim> action_dims;
  Geometry geometry;
  GoalRegion goal;
  PhysicsParams physics;
  // Normalizes the distance reward; the object's initial horizontal distance
  // to the goal (never below the goal radius).
  double d_ref = 1.0;

  std::string_view name() const { return to_string(kind); }
  std::size_t num_dims() const { return action_dims.size(); }
  // Horizontal start position of the manipulated object.
  Eigen::Vector2d start_xy() const;
  void validate() const;
};

// Default task with the standard geometry, goals and action bounds.
TaskDef make_task(TaskKind kind);

// 1 inside the goal disc, else max(0, 1 - d / d_ref) for horizontal distance d.
double reward_of(const WorldState& final_state, const TaskDef& task);
double horizontal_distance(const WorldState& state, const GoalRegion& goal);

// Clamps each component into its bounds; returns true when anything moved.
bool clamp_action(const TaskDef& task, std::vector<double>& action);
// Maps an action to and from the unit cube over the task bounds.
std::vector<double> to_unit_cube(const TaskDef& task, std::span<const double> action);
std::vector<double> from_unit_cube(const TaskDef& task, std::span<const double> unit);

}  // namespace phyplan::worldsim

#endif  // PHYPLAN_WORLDSIM_TASKS_H_
