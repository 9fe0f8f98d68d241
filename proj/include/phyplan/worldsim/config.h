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

#ifndef PHYPLAN_WORLDSIM_CONFIG_H_
#define PHYPLAN_WORLDSIM_CONFIG_H_

#include <array>
#include <filesystem>
#include <iosfwd>

#include "phyplan/worldsim/tasks.h"

namespace phyplan::worldsim {

// Physics, geometry and task definitions shared by every run.
struct WorldConfig {
  PhysicsParams physics;
  Geometry geometry;
  std::array<TaskDef, std::size(kAllTasks)> tasks;
  double sigma_velocity = 0.0;

  const TaskDef& task(TaskKind kind) const { return tasks[static_cast<std::size_t>(kind)]; }
};

WorldConfig default_world_config();

// INI-style file: sections [physics], [geometry], [noise] and one per task
// ([launch], [bounce], [slide], [bridge]); every key is optional and
// overrides the default. Angles take a _deg suffix. See docs/FORMATS.md.
// Throws std::runtime_error on syntax errors, unknown keys or invalid values.
WorldConfig parse_world_config(std::istream& in);
WorldConfig load_world_config(const std::filesystem::path& path);
void write_world_config(std::ostream& out, const WorldConfig& cfg);

}  // namespace phyplan::worldsim

#endif  // PHYPLAN_WORLDSIM_CONFIG_H_
