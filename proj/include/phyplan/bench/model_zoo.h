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

#ifndef PHYPLAN_BENCH_MODEL_ZOO_H_
#define PHYPLAN_BENCH_MODEL_ZOO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>

#include "phyplan/skills/dataset.h"
#include "phyplan/skills/predictor.h"
#include "phyplan/skills/skill_model.h"
#include "phyplan/worldsim/oracle.h"

namespace phyplan::bench {

// Standard recipe for the skill models used in planning.
struct ModelRecipe {
  int n_data = 400;
  int iterations = 1000;
  int colloc_ratio = skills::kCollocationRatio;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
};

// Generates oracle data under `params` over the skill's default bounds and
// trains a physics-informed model (data-only for skills without an ODE).
skills::SkillModel train_skill_model(skills::SkillKind skill, const worldsim::PhysicsParams& params,
                                     const ModelRecipe& recipe);

// Loads `<dir>/<skill>.bin` for each skill, training and saving the missing
// ones first. Progress lines go to `log` when given.
skills::ModelPredictor ensure_models(const std::filesystem::path& dir,
                                     std::span<const skills::SkillKind> skills,
                                     const worldsim::PhysicsParams& params,
                                     const ModelRecipe& recipe, std::ostream* log = nullptr);

}  // namespace phyplan::bench

#endif  // PHYPLAN_BENCH_MODEL_ZOO_H_
