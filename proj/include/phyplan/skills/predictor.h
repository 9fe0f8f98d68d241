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

#ifndef PHYPLAN_SKILLS_PREDICTOR_H_
#define PHYPLAN_SKILLS_PREDICTOR_H_

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "phyplan/skills/skill_model.h"
#include "phyplan/skills/skill_spec.h"

namespace phyplan::skills {

// Source of skill outcomes for rollouts: trained networks or ground truth.
class SkillPredictor {
 public:
  virtual ~SkillPredictor() = default;

  virtual bool has(SkillKind skill) const = 0;
  // Outputs of a time-dependent skill at every entry of `times`, one column
  // per time. `init` holds the inputs other than t_query.
  virtual Eigen::MatrixXd predict_series(SkillKind skill, std::span<const double> init,
                                         std::span<const double> times) const = 0;
  // Outputs of a time-free skill for its full input vector.
  virtual Eigen::VectorXd predict_instant(SkillKind skill, std::span<const double> inputs) const = 0;
};

class ModelPredictor final : public SkillPredictor {
 public:
  void add(SkillModel model);
  const SkillModel* find(SkillKind skill) const;

  // Loads `<dir>/<skill>.bin` for each requested skill. Throws
  // std::runtime_error naming the missing file and the train command.
  static ModelPredictor load_directory(const std::filesystem::path& dir,
                                       std::span<const SkillKind> skills);

  bool has(SkillKind skill) const override;
  Eigen::MatrixXd predict_series(SkillKind skill, std::span<const double> init,
                                 std::span<const double> times) const override;
  Eigen::VectorXd predict_instant(SkillKind skill, std::span<const double> inputs) const override;

 private:
  const SkillModel& require(SkillKind skill) const;

  std::array<std::optional<SkillModel>, std::size(kAllSkills)> models_;
};

// Routes each skill to one of two predictors; `primary` wins when it has the skill.
class CompositePredictor final : public SkillPredictor {
 public:
  CompositePredictor(std::shared_ptr<const SkillPredictor> primary,
                     std::shared_ptr<const SkillPredictor> fallback);

  bool has(SkillKind skill) const override;
  Eigen::MatrixXd predict_series(SkillKind skill, std::span<const double> init,
                                 std::span<const double> times) const override;
  Eigen::VectorXd predict_instant(SkillKind skill, std::span<const double> inputs) const override;

 private:
  const SkillPredictor& route(SkillKind skill) const;

  std::shared_ptr<const SkillPredictor> primary_;
  std::shared_ptr<const SkillPredictor> fallback_;
};

std::filesystem::path model_path(const std::filesystem::path& dir, SkillKind skill);

}  // namespace phyplan::skills

#endif  // PHYPLAN_SKILLS_PREDICTOR_H_
