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

#include "phyplan/bench/model_zoo.h"

#include <chrono>
#include <ostream>

#include "phyplan/numerics/random.h"
#include "phyplan/skills/training.h"
#include "phyplan/worldsim/dataset_generation.h"

namespace phyplan::bench {

skills::SkillModel train_skill_model(skills::SkillKind skill, const worldsim::PhysicsParams& params,
                                     const ModelRecipe& recipe) {
  const skills::SkillSpec spec = skills::build_skill(skill);
  const auto stream = static_cast<std::uint64_t>(skill);
  const skills::Dataset data =
      worldsim::generate_dataset(skill, params, recipe.n_data, {}, recipe.noise_sigma,
                                 numerics::derive_seed(recipe.seed, stream));
  const skills::CollocationSet colloc = skills::sample_collocation(
      spec.input_bounds, static_cast<Eigen::Index>(recipe.colloc_ratio) * recipe.n_data,
      numerics::derive_seed(recipe.seed, 100 + stream));
  numerics::LBFGSConfig cfg;
  cfg.max_iterations = recipe.iterations;
  return skills::train(spec, data, colloc, cfg, numerics::derive_seed(recipe.seed, 200 + stream),
                       spec.has_physics_loss);
}

skills::ModelPredictor ensure_models(const std::filesystem::path& dir,
                                     std::span<const skills::SkillKind> skills,
                                     const worldsim::PhysicsParams& params,
                                     const ModelRecipe& recipe, std::ostream* log) {
  std::filesystem::create_directories(dir);
  skills::ModelPredictor out;
  for (skills::SkillKind s : skills) {
    const std::filesystem::path path = skills::model_path(dir, s);
    if (std::filesystem::exists(path)) {
      out.add(skills::load_skill_model(path));
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    skills::SkillModel m = train_skill_model(s, params, recipe);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (log != nullptr) {
      *log << "trained " << skills::to_string(s) << " in " << secs << " s (data loss "
           << m.report.data_loss << ", physics loss " << m.report.physics_loss << ")\n";
    }
    skills::save_skill_model(path, m);
    out.add(std::move(m));
  }
  return out;
}

}  // namespace phyplan::bench
