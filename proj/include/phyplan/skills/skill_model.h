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

#ifndef PHYPLAN_SKILLS_SKILL_MODEL_H_
#define PHYPLAN_SKILLS_SKILL_MODEL_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "phyplan/numerics/dense_network.h"
#include "phyplan/skills/dataset.h"
#include "phyplan/skills/skill_spec.h"

namespace phyplan::skills {

struct TrainingReport {
  double data_loss = 0.0;
  double physics_loss = 0.0;
  int iterations = 0;
  std::string status = "untrained";
};

// A trained skill network. Inputs are mapped affinely from `bounds` onto
// [-1, 1] before entering the network; outputs are in physical units.
struct SkillModel {
  SkillSpec spec;
  numerics::DenseNetwork net;
  std::vector<FieldBounds> bounds;
  std::map<std::string, double> learned_params;
  TrainingReport report;

  // Raw inputs (one sample per column) to network inputs.
  Eigen::MatrixXd normalize(const Eigen::MatrixXd& raw) const;
  // d(normalized input)/dt; zero for time-free skills.
  Eigen::VectorXd time_direction() const;
  // Physical parameter values with learned ones substituted.
  std::vector<double> param_values() const;
};

// Throws std::invalid_argument on zero-width bounds.
Eigen::MatrixXd normalize_inputs(const std::vector<FieldBounds>& bounds, const Eigen::MatrixXd& raw);
Eigen::VectorXd time_direction(const SkillSpec& spec, const std::vector<FieldBounds>& bounds);

// `init` holds every input except t_query; `t` is ignored by time-free skills.
// Throws std::invalid_argument on a dimension mismatch.
Eigen::VectorXd predict(const SkillModel& model, std::span<const double> init, double t);
// Full raw input vectors, one per column, t_query included where applicable.
Eigen::MatrixXd predict_batch(const SkillModel& model, const Eigen::MatrixXd& raw_inputs);

// Mean squared prediction error over every sample and output. Throws
// std::invalid_argument when the dataset belongs to another skill.
double validation_mse(const SkillModel& model, const Dataset& data);

// Network record (learned parameters as named values) followed by the skill
// name, the physics flag and the normalization bounds. See docs/FORMATS.md.
void write_skill_model(std::ostream& out, const SkillModel& model);
void save_skill_model(const std::filesystem::path& path, const SkillModel& model);
SkillModel read_skill_model(std::istream& in);
SkillModel load_skill_model(const std::filesystem::path& path);

}  // namespace phyplan::skills

#endif  // PHYPLAN_SKILLS_SKILL_MODEL_H_
