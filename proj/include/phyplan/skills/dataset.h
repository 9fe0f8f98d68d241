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

#ifndef PHYPLAN_SKILLS_DATASET_H_
#define PHYPLAN_SKILLS_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "phyplan/skills/skill_spec.h"

namespace phyplan::skills {

struct DatasetProvenance {
  std::string generator = "unknown";
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

// Supervised samples for one skill, stored column-wise: column i of `inputs`
// and of `targets` form one row of the file.
struct Dataset {
  SkillKind skill = SkillKind::kSliding;
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd targets;
  DatasetProvenance provenance;

  Eigen::Index size() const { return inputs.cols(); }
  bool empty() const { return inputs.cols() == 0; }
  // Throws std::invalid_argument when shapes disagree with the skill schema.
  void validate() const;
  // Rows [first, first + count).
  Dataset slice(Eigen::Index first, Eigen::Index count) const;
};

// Input locations without targets, used only for the physics residual.
struct CollocationSet {
  Eigen::MatrixXd points;
  std::vector<FieldBounds> bounds;

  Eigen::Index size() const { return points.cols(); }
};

// Default collocation-to-data ratio.
inline constexpr int kCollocationRatio = 4;

// `n` points drawn uniformly over `bounds`; a pure function of the seed.
CollocationSet sample_collocation(const std::vector<FieldBounds>& bounds, Eigen::Index n,
                                  std::uint64_t seed);

// CSV with a header naming the spec's input then output fields, preceded by
// one '#' comment line carrying the provenance.
void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);
// Throws std::runtime_error on a header that does not match the skill schema
// or on a malformed row.
Dataset read_dataset_csv(std::istream& in, SkillKind skill);
Dataset read_dataset_csv(const std::filesystem::path& path, SkillKind skill);
// Infers the skill from the header.
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace phyplan::skills

#endif  // PHYPLAN_SKILLS_DATASET_H_
