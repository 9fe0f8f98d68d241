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

#include "phyplan/skills/training.h"

#include <stdexcept>
#include <string>

#include "phyplan/numerics/random.h"
#include "phyplan/skills/losses.h"

namespace phyplan::skills {

SkillModel train(const SkillSpec& spec, const Dataset& data, const CollocationSet& colloc,
                 const numerics::LBFGSConfig& cfg, std::uint64_t seed, bool use_physics) {
  cfg.validate();
  if (data.skill != spec.kind) throw std::invalid_argument("dataset belongs to another skill");
  std::vector<FieldBounds> bounds = colloc.bounds.empty() ? spec.input_bounds : colloc.bounds;
  const PinnObjective objective(spec, bounds, data, colloc, use_physics);

  const auto sizes = numerics::skill_network_sizes(spec.input_dim(), spec.output_dim());
  const numerics::DenseNetwork init = numerics::xavier_init(sizes, seed);
  numerics::LBFGSResult result = numerics::lbfgs_minimize(
      [&objective](std::span<const double> p, std::span<double> g) { return objective(p, g); },
      objective.pack(init), cfg);

  SkillModel model;
  model.spec = spec;
  model.spec.has_physics_loss = objective.uses_physics();
  model.net = objective.unpack_network(result.params);
  model.bounds = std::move(bounds);
  if (objective.uses_physics()) {
    const std::vector<double> values = objective.unpack_params(result.params);
    for (std::size_t idx : spec.unknown_param_indices()) {
      model.learned_params[spec.physical_params[idx].name] = values[idx];
    }
  }
  const PinnObjective::Terms terms = objective.terms(result.params);
  model.report.data_loss = terms.data;
  model.report.physics_loss = terms.physics;
  model.report.iterations = result.iterations;
  model.report.status = std::string(numerics::to_string(result.status));
  return model;
}

Identification identify_parameter(const SkillSpec& spec, const Dataset& data,
                                  const numerics::LBFGSConfig& cfg, std::uint64_t seed,
                                  int colloc_ratio) {
  if (!spec.has_physics_loss || spec.unknown_param_indices().empty()) {
    throw std::invalid_argument("skill " + std::string(spec.name()) +
                                " has no unknown physical parameter to identify");
  }
  if (colloc_ratio < 1) throw std::invalid_argument("collocation ratio must be >= 1");
  const CollocationSet colloc = sample_collocation(
      spec.input_bounds, colloc_ratio * data.size(), numerics::derive_seed(seed, 1));
  Identification id;
  id.model = train(spec, data, colloc, cfg, seed, true);
  id.estimate = id.model.learned_params;
  return id;
}

}  // namespace phyplan::skills
