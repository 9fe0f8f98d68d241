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

#include "phyplan/worldsim/dataset_generation.h"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace phyplan::worldsim {

skills::Dataset generate_dataset(SkillKind skill, const PhysicsParams& params, int n,
                                 const std::vector<skills::FieldBounds>& bounds,
                                 double noise_sigma, std::uint64_t seed) {
  const skills::SkillSpec spec = skills::build_skill(skill);
  const std::vector<skills::FieldBounds> b = bounds.empty() ? spec.input_bounds : bounds;
  if (n < 1) throw std::invalid_argument("dataset size must be >= 1");
  if (b.size() != spec.input_dim()) throw std::invalid_argument("bounds do not match the skill");
  for (const auto& fb : b) {
    if (!(fb.lo < fb.hi)) throw std::invalid_argument("degenerate sampling bounds");
  }
  if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");

  skills::Dataset d;
  d.skill = skill;
  d.provenance = {"oracle", noise_sigma, seed};
  d.inputs.resize(static_cast<Eigen::Index>(spec.input_dim()), n);
  d.targets.resize(static_cast<Eigen::Index>(spec.output_dim()), n);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);
  std::vector<double> init;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(spec.input_dim()));
    for (std::size_t i = 0; i < b.size(); ++i) {
      x(static_cast<Eigen::Index>(i)) = b[i].lo + unit(rng) * b[i].width();
    }
    double t = 0.0;
    if (spec.time_index) {
      const auto ti = static_cast<Eigen::Index>(*spec.time_index);
      if (skill == SkillKind::kSliding) {
        const double stop = x(0) / (params.mu * params.g);
        const double hi = std::max(b[1].lo, std::min(b[1].hi, stop));
        x(ti) = b[1].lo + (x(ti) - b[1].lo) / b[1].width() * (hi - b[1].lo);
      }
      t = x(ti);
    }
    init.clear();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!spec.time_index || static_cast<std::size_t>(i) != *spec.time_index) init.push_back(x(i));
    }
    Eigen::VectorXd y = oracle_predict(skill, params, init, t);
    if (noise_sigma > 0.0) {
      for (Eigen::Index k = 0; k < y.size(); ++k) y(k) += noise(rng);
    }
    d.inputs.col(j) = x;
    d.targets.col(j) = y;
  }
  return d;
}

}  // namespace phyplan::worldsim
