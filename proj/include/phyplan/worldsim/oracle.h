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

#ifndef PHYPLAN_WORLDSIM_ORACLE_H_
#define PHYPLAN_WORLDSIM_ORACLE_H_

#include <span>
#include <string_view>

#include <Eigen/Core>

#include "phyplan/skills/predictor.h"
#include "phyplan/skills/skill_spec.h"

namespace phyplan::worldsim {

using skills::SkillKind;

struct PhysicsParams {
  double g = skills::kGravity;
  double mu = 0.2;    // sliding friction
  double l = 0.5;     // pendulum length
  double e = 0.8;     // wedge restitution
  double e_c = 0.9;   // pendulum-puck restitution
  double m1 = 0.1;    // pendulum bob
  double m2 = 0.1;    // puck
};

// analytic: closed forms (pendulum still integrated with RK4).
// numeric: every time-dependent skill integrated with RK4 from t = 0.
enum class Fidelity { kAnalytic, kNumeric };

std::string_view to_string(Fidelity f);
Fidelity fidelity_from_string(std::string_view s);

inline constexpr double kRk4Step = 1e-4;

// Ground-truth outputs of one skill, in the skill's output order. `init`
// holds the inputs other than t_query (the full input vector for time-free
// skills). Sliding velocity is clamped at zero once the object stops.
// Throws std::invalid_argument for t < 0 or a wrong input count.
Eigen::VectorXd oracle_predict(SkillKind skill, const PhysicsParams& params,
                               std::span<const double> init, double t,
                               Fidelity fidelity = Fidelity::kAnalytic);

// Outcomes of the instantaneous collisions.
// Wedge normal in the (horizontal, vertical) plane is (-sin theta_w, cos theta_w).
Eigen::Vector2d reflect_off_wedge(double v_hor, double v_ver, double theta_w, double e);
// Speeds after the bob (m1, moving at v) strikes the resting puck (m2).
struct HitOutcome {
  double struck = 0.0;
  double striker = 0.0;
};
HitOutcome hit(double m1, double m2, double v, double e_c);

// RK4 of the pendulum released from rest at theta0; returns (theta, omega) at t.
Eigen::Vector2d pendulum_state(double theta0, double l, double g, double t, double step = kRk4Step);

// Skill outcomes served from the ground truth, for rollouts with exact models.
// In numeric mode each query integrates from t = 0 independently, like any
// other per-query skill evaluator.
class OracleSkillSet final : public skills::SkillPredictor {
 public:
  explicit OracleSkillSet(PhysicsParams params, Fidelity fidelity = Fidelity::kAnalytic)
      : params_(params), fidelity_(fidelity) {}

  const PhysicsParams& params() const { return params_; }
  Fidelity fidelity() const { return fidelity_; }

  bool has(SkillKind) const override { return true; }
  Eigen::MatrixXd predict_series(SkillKind skill, std::span<const double> init,
                                 std::span<const double> times) const override;
  Eigen::VectorXd predict_instant(SkillKind skill, std::span<const double> inputs) const override;

 private:
  PhysicsParams params_;
  Fidelity fidelity_;
};

}  // namespace phyplan::worldsim

#endif  // PHYPLAN_WORLDSIM_ORACLE_H_
