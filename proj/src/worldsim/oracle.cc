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

#include "phyplan/worldsim/oracle.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace phyplan::worldsim {
namespace {

void check_inputs(SkillKind skill, std::span<const double> init, double t) {
  const skills::SkillSpec spec = skills::build_skill(skill);
  const std::size_t want = spec.input_dim() - (spec.time_index ? 1 : 0);
  if (init.size() != want) {
    throw std::invalid_argument("oracle for " + std::string(spec.name()) + " expects " +
                                std::to_string(want) + " inputs, got " +
                                std::to_string(init.size()));
  }
  if (t < 0.0 || !std::isfinite(t)) throw std::invalid_argument("oracle query at negative time");
}

struct PendulumStepper {
  double l, g;
  void step(double& th, double& om, double dt) const {
    const double c = g / l;
    const double k1t = om, k1o = -c * std::sin(th);
    const double k2t = om + 0.5 * dt * k1o, k2o = -c * std::sin(th + 0.5 * dt * k1t);
    const double k3t = om + 0.5 * dt * k2o, k3o = -c * std::sin(th + 0.5 * dt * k2t);
    const double k4t = om + dt * k3o, k4o = -c * std::sin(th + dt * k3t);
    th += dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
    om += dt / 6.0 * (k1o + 2.0 * k2o + 2.0 * k3o + k4o);
  }
  // Advances (th, om) from time `from` to `to` with steps of at most `h`.
  void advance(double& th, double& om, double from, double to, double h) const {
    const double span = to - from;
    if (span <= 0.0) return;
    const int n = static_cast<int>(std::ceil(span / h - 1e-9));
    const double dt = span / n;
    for (int i = 0; i < n; ++i) step(th, om, dt);
  }
};

Eigen::Vector2d sliding_analytic(double v0, double mu, double g, double t) {
  const double a = mu * g;
  const double t_stop = a > 0.0 ? v0 / a : std::numeric_limits<double>::infinity();
  const double te = std::min(t, t_stop);
  return {v0 * te - 0.5 * a * te * te, std::max(0.0, v0 - a * te)};
}

Eigen::Vector2d sliding_numeric(double v0, double mu, double g, double t) {
  double x = 0.0, v = v0;
  const double a = mu * g;
  if (t <= 0.0 || v0 <= 0.0) return {0.0, std::max(0.0, v0)};
  const int n = static_cast<int>(std::ceil(t / kRk4Step - 1e-9));
  const double dt = t / n;
  for (int i = 0; i < n; ++i) {
    // RK4 of x' = v, v' = -a.
    const double k1x = v, k2x = v - 0.5 * dt * a, k4x = v - dt * a;
    const double nx = x + dt / 6.0 * (k1x + 4.0 * k2x + k4x);
    const double nv = v - dt * a;
    if (nv <= 0.0) {
      const double tau = v / a;
      x += v * tau - 0.5 * a * tau * tau;
      v = 0.0;
      break;
    }
    x = nx;
    v = nv;
  }
  return {x, v};
}

Eigen::Vector3d throwing_numeric(double vh, double vv, double g, double t) {
  double v = vv, y = 0.0, x = 0.0;
  if (t > 0.0) {
    const int n = static_cast<int>(std::ceil(t / kRk4Step - 1e-9));
    const double dt = t / n;
    for (int i = 0; i < n; ++i) {
      // RK4 of v' = -g, y' = v, x' = vh.
      const double k1y = v, k2y = v - 0.5 * dt * g, k4y = v - dt * g;
      y += dt / 6.0 * (k1y + 4.0 * k2y + k4y);
      x += dt * vh;
      v -= dt * g;
    }
  }
  return {v, y, x};
}

}  // namespace

std::string_view to_string(Fidelity f) {
  return f == Fidelity::kAnalytic ? "analytic" : "numeric";
}

Fidelity fidelity_from_string(std::string_view s) {
  if (s == "analytic") return Fidelity::kAnalytic;
  if (s == "numeric") return Fidelity::kNumeric;
  throw std::invalid_argument("unknown fidelity '" + std::string(s) + "'");
}

Eigen::Vector2d reflect_off_wedge(double v_hor, double v_ver, double theta_w, double e) {
  const Eigen::Vector2d n(-std::sin(theta_w), std::cos(theta_w));
  const Eigen::Vector2d v(v_hor, v_ver);
  return v - (1.0 + e) * v.dot(n) * n;
}

HitOutcome hit(double m1, double m2, double v, double e_c) {
  const double m = m1 + m2;
  return {(1.0 + e_c) * m1 * v / m, (m1 - e_c * m2) * v / m};
}

Eigen::Vector2d pendulum_state(double theta0, double l, double g, double t, double step) {
  double th = theta0, om = 0.0;
  PendulumStepper{l, g}.advance(th, om, 0.0, t, step);
  return {th, om};
}

Eigen::VectorXd oracle_predict(SkillKind skill, const PhysicsParams& p,
                               std::span<const double> init, double t, Fidelity fidelity) {
  check_inputs(skill, init, t);
  switch (skill) {
    case SkillKind::kSwinging:
      return pendulum_state(init[0], p.l, p.g, t);
    case SkillKind::kSliding:
      return fidelity == Fidelity::kAnalytic ? sliding_analytic(init[0], p.mu, p.g, t)
                                             : sliding_numeric(init[0], p.mu, p.g, t);
    case SkillKind::kThrowing:
      if (fidelity == Fidelity::kNumeric) return throwing_numeric(init[0], init[1], p.g, t);
      return Eigen::Vector3d(init[1] - p.g * t, init[1] * t - 0.5 * p.g * t * t, init[0] * t);
    case SkillKind::kBouncing: {
      const Eigen::Vector2d out = reflect_off_wedge(init[3], init[2], init[1], init[0]);
      return Eigen::Vector2d(out.y(), out.x());
    }
    case SkillKind::kHitting: {
      Eigen::VectorXd v(1);
      v(0) = hit(init[0], init[1], init[2], p.e_c).struck;
      return v;
    }
  }
  throw std::invalid_argument("unsupported skill");
}

Eigen::MatrixXd OracleSkillSet::predict_series(SkillKind skill, std::span<const double> init,
                                               std::span<const double> times) const {
  const skills::SkillSpec spec = skills::build_skill(skill);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(spec.output_dim()),
                      static_cast<Eigen::Index>(times.size()));
  if (skill == SkillKind::kSwinging && fidelity_ == Fidelity::kAnalytic) {
    // One integration pass through the query times in increasing order.
    std::vector<std::size_t> order(times.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return times[a] < times[b]; });
    double th = init[0], om = 0.0, now = 0.0;
    const PendulumStepper stepper{params_.l, params_.g};
    for (std::size_t k : order) {
      if (times[k] < 0.0) throw std::invalid_argument("oracle query at negative time");
      stepper.advance(th, om, now, times[k], kRk4Step);
      now = std::max(now, times[k]);
      out.col(static_cast<Eigen::Index>(k)) << th, om;
    }
    return out;
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = oracle_predict(skill, params_, init, times[k], fidelity_);
  }
  return out;
}

Eigen::VectorXd OracleSkillSet::predict_instant(SkillKind skill,
                                                std::span<const double> inputs) const {
  return oracle_predict(skill, params_, inputs, 0.0, fidelity_);
}

}  // namespace phyplan::worldsim
