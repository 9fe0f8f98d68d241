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

#include "phyplan/worldsim/tasks.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace phyplan::worldsim {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kLaunch: return "launch";
    case TaskKind::kBounce: return "bounce";
    case TaskKind::kSlide: return "slide";
    case TaskKind::kBridge: return "bridge";
  }
  return "unknown";
}

TaskKind task_from_string(std::string_view name) {
  for (TaskKind k : kAllTasks) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kAttachedToPendulum: return "attached_to_pendulum";
    case Phase::kSliding: return "sliding";
    case Phase::kAirborne: return "airborne";
    case Phase::kResting: return "resting";
    case Phase::kInGap: return "in_gap";
  }
  return "unknown";
}

Eigen::Vector2d TaskDef::start_xy() const {
  return kind == TaskKind::kBounce ? Eigen::Vector2d(geometry.wedge_contact.head<2>())
                                   : geometry.pivot_xy;
}

void TaskDef::validate() const {
  for (const ActionDim& d : action_dims) {
    if (!(d.lo < d.hi)) throw std::invalid_argument("action dim " + d.name + " has lo >= hi");
  }
  if (!(goal.radius > 0.0)) throw std::invalid_argument("goal radius must be positive");
  if (!(d_ref > 0.0)) throw std::invalid_argument("d_ref must be positive");
  if (kind == TaskKind::kBridge &&
      !(geometry.gap_start < geometry.gap_end && geometry.gap_end < geometry.table_edge)) {
    throw std::invalid_argument("bridge geometry needs gap_start < gap_end < table_edge");
  }
}

TaskDef make_task(TaskKind kind) {
  TaskDef t;
  t.kind = kind;
  const ActionDim theta_rel{"theta_rel", 5.0 * kDeg, 85.0 * kDeg};
  const ActionDim phi{"phi", -45.0 * kDeg, 45.0 * kDeg};
  switch (kind) {
    case TaskKind::kLaunch:
      t.skill_chain = {SkillKind::kSwinging, SkillKind::kThrowing};
      t.action_dims = {theta_rel, phi};
      t.goal.center = {0.6, 0.25, 0.0};
      break;
    case TaskKind::kBounce:
      t.skill_chain = {SkillKind::kThrowing, SkillKind::kBouncing, SkillKind::kThrowing};
      t.action_dims = {{"h", 0.2, 1.5}, {"theta_w", 15.0 * kDeg, 75.0 * kDeg}};
      t.goal.center = {-0.9, 0.0, 0.0};
      break;
    case TaskKind::kSlide:
      t.skill_chain = {SkillKind::kSwinging, SkillKind::kHitting, SkillKind::kSliding};
      t.action_dims = {theta_rel, phi};
      t.goal.center = {1.0, -0.3, 0.5};
      break;
    case TaskKind::kBridge:
      t.skill_chain = {SkillKind::kSwinging, SkillKind::kHitting, SkillKind::kSliding,
                       SkillKind::kSliding, SkillKind::kThrowing};
      t.action_dims = {theta_rel, {"x_b", 0.15, 0.85}};
      t.goal.center = {1.2, 0.0, 0.0};
      break;
  }
  t.d_ref = std::max(t.goal.radius, (t.goal.center.head<2>() - t.start_xy()).norm());
  return t;
}

double horizontal_distance(const WorldState& state, const GoalRegion& goal) {
  return (state.position.head<2>() - goal.center.head<2>()).norm();
}

double reward_of(const WorldState& final_state, const TaskDef& task) {
  const double d = horizontal_distance(final_state, task.goal);
  if (d <= task.goal.radius) return 1.0;
  return std::max(0.0, 1.0 - d / task.d_ref);
}

bool clamp_action(const TaskDef& task, std::vector<double>& action) {
  if (action.size() != task.num_dims()) {
    throw std::invalid_argument("task " + std::string(task.name()) + " expects " +
                                std::to_string(task.num_dims()) + " action values");
  }
  bool moved = false;
  for (std::size_t i = 0; i < action.size(); ++i) {
    const double c = std::clamp(action[i], task.action_dims[i].lo, task.action_dims[i].hi);
    moved = moved || c != action[i];
    action[i] = c;
  }
  return moved;
}

std::vector<double> to_unit_cube(const TaskDef& task, std::span<const double> action) {
  std::vector<double> u(action.size());
  for (std::size_t i = 0; i < action.size(); ++i) {
    const ActionDim& d = task.action_dims.at(i);
    u[i] = (action[i] - d.lo) / (d.hi - d.lo);
  }
  return u;
}

std::vector<double> from_unit_cube(const TaskDef& task, std::span<const double> unit) {
  std::vector<double> a(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) {
    const ActionDim& d = task.action_dims.at(i);
    a[i] = d.lo + unit[i] * (d.hi - d.lo);
  }
  return a;
}

}  // namespace phyplan::worldsim
