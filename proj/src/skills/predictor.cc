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

#include "phyplan/skills/predictor.h"

#include <stdexcept>
#include <string>

namespace phyplan::skills {
namespace {

std::size_t slot(SkillKind skill) { return static_cast<std::size_t>(skill); }

}  // namespace

std::filesystem::path model_path(const std::filesystem::path& dir, SkillKind skill) {
  return dir / (std::string(to_string(skill)) + ".bin");
}

void ModelPredictor::add(SkillModel model) {
  const SkillKind k = model.spec.kind;
  models_[slot(k)] = std::move(model);
}

const SkillModel* ModelPredictor::find(SkillKind skill) const {
  const auto& m = models_[slot(skill)];
  return m ? &*m : nullptr;
}

ModelPredictor ModelPredictor::load_directory(const std::filesystem::path& dir,
                                              std::span<const SkillKind> skills) {
  ModelPredictor p;
  for (SkillKind k : skills) {
    const auto path = model_path(dir, k);
    if (!std::filesystem::exists(path)) {
      throw std::runtime_error("missing skill model " + path.string() +
                               "; create it with `phyplan train --skill " +
                               std::string(to_string(k)) + " --out " + path.string() + "`");
    }
    SkillModel m = load_skill_model(path);
    if (m.spec.kind != k) throw std::runtime_error(path.string() + " holds another skill");
    p.add(std::move(m));
  }
  return p;
}

bool ModelPredictor::has(SkillKind skill) const { return find(skill) != nullptr; }

const SkillModel& ModelPredictor::require(SkillKind skill) const {
  const SkillModel* m = find(skill);
  if (m == nullptr) {
    throw std::runtime_error("no trained model for skill " + std::string(to_string(skill)));
  }
  return *m;
}

Eigen::MatrixXd ModelPredictor::predict_series(SkillKind skill, std::span<const double> init,
                                               std::span<const double> times) const {
  const SkillModel& m = require(skill);
  if (!m.spec.time_index) throw std::invalid_argument("skill has no time input");
  const std::size_t t_row = *m.spec.time_index;
  if (init.size() + 1 != m.spec.input_dim()) {
    throw std::invalid_argument("wrong number of initial values for " +
                                std::string(to_string(skill)));
  }
  Eigen::MatrixXd raw(static_cast<Eigen::Index>(m.spec.input_dim()),
                      static_cast<Eigen::Index>(times.size()));
  for (Eigen::Index c = 0; c < raw.cols(); ++c) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < m.spec.input_dim(); ++i) {
      raw(static_cast<Eigen::Index>(i), c) =
          i == t_row ? times[static_cast<std::size_t>(c)] : init[k++];
    }
  }
  return predict_batch(m, raw);
}

Eigen::VectorXd ModelPredictor::predict_instant(SkillKind skill,
                                                std::span<const double> inputs) const {
  const SkillModel& m = require(skill);
  if (m.spec.time_index) throw std::invalid_argument("skill needs a time series query");
  return predict(m, inputs, 0.0);
}

CompositePredictor::CompositePredictor(std::shared_ptr<const SkillPredictor> primary,
                                       std::shared_ptr<const SkillPredictor> fallback)
    : primary_(std::move(primary)), fallback_(std::move(fallback)) {}

const SkillPredictor& CompositePredictor::route(SkillKind skill) const {
  if (primary_ && primary_->has(skill)) return *primary_;
  if (fallback_ && fallback_->has(skill)) return *fallback_;
  throw std::runtime_error("no predictor for skill " + std::string(to_string(skill)));
}

bool CompositePredictor::has(SkillKind skill) const {
  return (primary_ && primary_->has(skill)) || (fallback_ && fallback_->has(skill));
}

Eigen::MatrixXd CompositePredictor::predict_series(SkillKind skill, std::span<const double> init,
                                                   std::span<const double> times) const {
  return route(skill).predict_series(skill, init, times);
}

Eigen::VectorXd CompositePredictor::predict_instant(SkillKind skill,
                                                    std::span<const double> inputs) const {
  return route(skill).predict_instant(skill, inputs);
}

}  // namespace phyplan::skills
