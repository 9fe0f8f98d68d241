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

#ifndef PHYPLAN_SKILLS_TRAINING_H_
#define PHYPLAN_SKILLS_TRAINING_H_

#include <cstdint>
#include <map>
#include <string>

#include "phyplan/numerics/lbfgs.h"
#include "phyplan/skills/dataset.h"
#include "phyplan/skills/skill_model.h"
#include "phyplan/skills/skill_spec.h"

namespace phyplan::skills {

// Training cycles used for parameter identification.
inline constexpr int kIdentificationIterations = 500;

// Minimizes total_loss from a Xavier-initialized network. Unknown physical
// parameters of `spec` are trained jointly, starting from their spec values.
// Normalization bounds come from `colloc.bounds`, or from the spec when those
// are empty. With use_physics false the model is a plain data-driven network.
// A diverging run returns the best point seen; report.status says why it stopped.
SkillModel train(const SkillSpec& spec, const Dataset& data, const CollocationSet& colloc,
                 const numerics::LBFGSConfig& cfg, std::uint64_t seed, bool use_physics = true);

struct Identification {
  SkillModel model;
  std::map<std::string, double> estimate;
};

// Joint data+physics training that recovers the spec's unknown physical
// parameters. Collocation points (ratio x data size) are drawn over the
// spec's input bounds. Throws std::invalid_argument for data-only skills or
// when nothing is unknown.
Identification identify_parameter(const SkillSpec& spec, const Dataset& data,
                                  const numerics::LBFGSConfig& cfg, std::uint64_t seed,
                                  int colloc_ratio = kCollocationRatio);

}  // namespace phyplan::skills

#endif  // PHYPLAN_SKILLS_TRAINING_H_
