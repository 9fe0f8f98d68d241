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

#ifndef PHYPLAN_WORLDSIM_DATASET_GENERATION_H_
#define PHYPLAN_WORLDSIM_DATASET_GENERATION_H_

#include <cstdint>
#include <vector>

#include "phyplan/skills/dataset.h"
#include "phyplan/worldsim/oracle.h"

namespace phyplan::worldsim {

// `n` oracle samples with inputs uniform over `bounds` (the skill's default
// bounds when empty) and N(0, noise_sigma) added to every target component.
// Sliding samples keep t_query below the stopping time v_init / (mu g).
// Pure function of the seed. Throws std::invalid_argument for n < 1,
// degenerate bounds or a negative sigma.
skills::Dataset generate_dataset(SkillKind skill, const PhysicsParams& params, int n,
                                 const std::vector<skills::FieldBounds>& bounds,
                                 double noise_sigma, std::uint64_t seed);

}  // namespace phyplan::worldsim

#endif  // PHYPLAN_WORLDSIM_DATASET_GENERATION_H_
