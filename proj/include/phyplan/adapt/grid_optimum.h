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

#ifndef PHYPLAN_ADAPT_GRID_OPTIMUM_H_
#define PHYPLAN_ADAPT_GRID_OPTIMUM_H_

#include <vector>

#include "phyplan/worldsim/oracle.h"
#include "phyplan/worldsim/tasks.h"

namespace phyplan::adapt {

inline constexpr int kGridResolution = 200;

struct GridOptimum {
  double reward = 0.0;
  std::vector<double> action;
};

// Exhaustive noise-free evaluation over a uniform grid with `resolution`
// points per dimension (endpoints included). Results are cached per task
// definition, resolution and fidelity. Throws std::invalid_argument for a
// resolution below 2.
GridOptimum grid_search(const worldsim::TaskDef& task, int resolution = kGridResolution,
                        worldsim::Fidelity fidelity = worldsim::Fidelity::kAnalytic);
double grid_optimum(const worldsim::TaskDef& task, int resolution = kGridResolution);

}  // namespace phyplan::adapt

#endif  // PHYPLAN_ADAPT_GRID_OPTIMUM_H_
