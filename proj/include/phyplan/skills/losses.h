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

#ifndef PHYPLAN_SKILLS_LOSSES_H_
#define PHYPLAN_SKILLS_LOSSES_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "phyplan/numerics/dense_network.h"
#include "phyplan/skills/dataset.h"
#include "phyplan/skills/skill_model.h"
#include "phyplan/skills/skill_spec.h"

namespace phyplan::skills {

// First-order residuals of the governing equations:
//   swinging  [dtheta/dt - omega, domega/dt + (g/l) sin theta]
//   sliding   [dx/dt - v, dv/dt + mu g]
//   throwing  [dv_ver/dt + g, dy/dt - v_ver, dx/dt - v_hor_init]
// `params` follows spec.physical_params, `raw_input` is in physical units and
// `d_output_dt` is the time derivative of `output`. Throws
// std::invalid_argument for data-only skills.
Eigen::VectorXd physics_residual(const SkillSpec& spec, std::span<const double> params,
                                 std::span<const double> raw_input,
                                 std::span<const double> output,
                                 std::span<const double> d_output_dt);

// Residual together with its partial derivatives, for assembling gradients.
struct ResidualJacobian {
  Eigen::VectorXd residual;
  Eigen::MatrixXd d_output;  // equations x outputs
  Eigen::MatrixXd d_rate;    // equations x outputs
  Eigen::MatrixXd d_params;  // equations x physical params
};
ResidualJacobian physics_residual_jacobian(const SkillSpec& spec, std::span<const double> params,
                                           std::span<const double> raw_input,
                                           std::span<const double> output,
                                           std::span<const double> d_output_dt);

// Mean of squared residual components over points and equations, given any
// evaluator's outputs and time derivatives (one point per column).
double mean_squared_residual(const SkillSpec& spec, std::span<const double> params,
                             const Eigen::MatrixXd& raw_inputs, const Eigen::MatrixXd& values,
                             const Eigen::MatrixXd& rates);

// Mean squared error over all rows and output components. Throws
// std::invalid_argument on an empty dataset.
double data_loss(const SkillModel& model, const Dataset& data);
// Throws std::invalid_argument for data-only skills or an empty set.
double physics_loss(const SkillModel& model, const CollocationSet& colloc);
// data_loss + physics_loss; physics term omitted for data-only skills.
double total_loss(const SkillModel& model, const Dataset& data, const CollocationSet& colloc);

// The training objective over [flattened network parameters, unknown
// physical parameters] with its analytic gradient.
class PinnObjective {
 public:
  // `bounds` normalize the inputs. With use_physics false, or for data-only
  // skills, only the data term is used.
  PinnObjective(SkillSpec spec, std::vector<FieldBounds> bounds, const Dataset& data,
                const CollocationSet& colloc, bool use_physics);

  std::size_t num_network_parameters() const { return template_net_.num_parameters(); }
  std::size_t num_unknowns() const { return unknown_.size(); }
  std::size_t size() const { return num_network_parameters() + num_unknowns(); }
  bool uses_physics() const { return use_physics_; }

  double operator()(std::span<const double> p, std::span<double> grad) const;

  struct Terms {
    double data = 0.0;
    double physics = 0.0;
  };
  Terms terms(std::span<const double> p) const;

  std::vector<double> pack(const numerics::DenseNetwork& net) const;
  numerics::DenseNetwork unpack_network(std::span<const double> p) const;
  // Physical parameter values with the unknowns read from `p`.
  std::vector<double> unpack_params(std::span<const double> p) const;

 private:
  SkillSpec spec_;
  std::vector<FieldBounds> bounds_;
  bool use_physics_;
  numerics::DenseNetwork template_net_;
  std::vector<std::size_t> unknown_;
  Eigen::MatrixXd data_inputs_;  // normalized
  Eigen::MatrixXd data_targets_;
  Eigen::MatrixXd colloc_raw_;
  Eigen::MatrixXd colloc_inputs_;  // normalized
  Eigen::VectorXd direction_;
};

}  // namespace phyplan::skills

#endif  // PHYPLAN_SKILLS_LOSSES_H_
