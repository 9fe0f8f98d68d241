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

#include "phyplan/worldsim/simulator.h"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

namespace phyplan::worldsim {
namespace {

constexpr double kSampleInterval = 0.01;
constexpr int kNumericSampleEvery = 100;

class Run {
 public:
  Run(const TaskDef& task, const SimNoise& noise, Fidelity fidelity, bool record)
      : task_(task),
        p_(task.physics),
        fidelity_(fidelity),
        record_(record),
        sigma_(noise.sigma_velocity),
        rng_(noise.seed) {}

  ExecutionResult result() {
    ExecutionResult r;
    r.final_state = state_;
    r.reward = reward_of(state_, task_);
    r.trajectory = std::move(traj_);
    return r;
  }

  void launch(double theta, double phi) {
    const Eigen::Vector2d heading(std::cos(phi), std::sin(phi));
    mass_ = p_.m1;
    const double speed = swing(theta, heading);
    state_.velocity << speed * heading, 0.0;
    perturb();
    fly(0.0);
  }

  void bounce(double h, double theta_w) {
    mass_ = p_.m2;
    const Eigen::Vector3d& w = task_.geometry.wedge_contact;
    state_.position = w + Eigen::Vector3d(0.0, 0.0, h);
    state_.velocity.setZero();
    state_.phase = Phase::kAirborne;
    note();
    fly(w.z());
    const Eigen::Vector2d out =
        reflect_off_wedge(state_.velocity.x(), state_.velocity.z(), theta_w, p_.e);
    state_.velocity.x() = out.x();
    state_.velocity.z() = out.y();
    perturb();
    note();
    fly(0.0);
  }

  void slide_task(double theta, double phi) {
    const Eigen::Vector2d heading(std::cos(phi), std::sin(phi));
    strike(theta, heading);
    slide(std::numeric_limits<double>::infinity());
    settle(Phase::kResting);
  }

  void bridge(double theta, double x_b) {
    const Geometry& g = task_.geometry;
    const Eigen::Vector2d heading(1.0, 0.0);
    strike(theta, heading);
    if (!slide(g.gap_start)) return settle(Phase::kResting);
    const double half = 0.5 * g.bridge_length;
    const bool covered = x_b - half <= g.gap_start && x_b + half >= g.gap_end;
    if (!covered) {
      state_.position << 0.5 * (g.gap_start + g.gap_end), state_.position.y(), 0.0;
      return settle(Phase::kInGap);
    }
    if (!slide(g.gap_end)) return settle(Phase::kResting);
    perturb_planar();
    if (!slide(g.table_edge)) return settle(Phase::kResting);
    state_.phase = Phase::kAirborne;
    perturb();
    fly(0.0);
  }

 private:
  double energy() const {
    return 0.5 * mass_ * state_.velocity.squaredNorm() + mass_ * p_.g * state_.position.z() +
           other_energy_;
  }

  void note() {
    if (!record_) return;
    traj_.push_back({t_, state_.position, state_.velocity, state_.phase, energy()});
  }

  void perturb() {
    if (sigma_ <= 0.0) return;
    std::normal_distribution<double> n(0.0, sigma_);
    for (int i = 0; i < 3; ++i) state_.velocity(i) += n(rng_);
  }

  // Noise for objects constrained to the table plane.
  void perturb_planar() {
    if (sigma_ <= 0.0) return;
    std::normal_distribution<double> n(0.0, sigma_);
    state_.velocity.x() += n(rng_);
    state_.velocity.y() += n(rng_);
  }

  void settle(Phase phase) {
    state_.velocity.setZero();
    state_.phase = phase;
    note();
  }

  // Pendulum released from rest at `theta` in the vertical plane along
  // `heading`; returns the bob speed at the bottom.
  double swing(double theta, const Eigen::Vector2d& heading) {
    const double l = p_.l, g = p_.g;
    const Eigen::Vector2d bottom = task_.geometry.pivot_xy;
    const double z_bottom = task_.geometry.table_height;
    auto place = [&](double th, double om) {
      state_.position << bottom - l * std::sin(th) * heading, z_bottom + l * (1.0 - std::cos(th));
      const double s = l * om;
      state_.velocity << -s * std::cos(th) * heading, s * std::sin(th);
    };
    state_.phase = Phase::kAttachedToPendulum;
    place(theta, 0.0);
    note();
    double speed;
    if (fidelity_ == Fidelity::kAnalytic) {
      speed = std::sqrt(2.0 * g * l * (1.0 - std::cos(theta)));
      t_ += std::sqrt(l / g) * std::comp_ellint_1(std::sin(0.5 * theta));
    } else {
      double th = theta, om = 0.0;
      int steps = 0;
      while (true) {
        double nth = th, nom = om;
        stepper_swing(nth, nom, kRk4Step);
        if (nth <= 0.0) {
          const double frac = th / (th - nth);
          t_ += frac * kRk4Step;
          speed = std::abs(om + frac * (nom - om)) * l;
          break;
        }
        th = nth;
        om = nom;
        t_ += kRk4Step;
        if (++steps % kNumericSampleEvery == 0) {
          place(th, om);
          note();
        }
      }
    }
    state_.position << bottom, z_bottom;
    state_.velocity << speed * heading, 0.0;
    note();
    return speed;
  }

  void stepper_swing(double& th, double& om, double dt) const {
    const double c = p_.g / p_.l;
    const double k1t = om, k1o = -c * std::sin(th);
    const double k2t = om + 0.5 * dt * k1o, k2o = -c * std::sin(th + 0.5 * dt * k1t);
    const double k3t = om + 0.5 * dt * k2o, k3o = -c * std::sin(th + 0.5 * dt * k2t);
    const double k4t = om + dt * k3o, k4o = -c * std::sin(th + dt * k3t);
    th += dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
    om += dt / 6.0 * (k1o + 2.0 * k2o + 2.0 * k3o + k4o);
  }

  // Bob swings down and strikes the puck resting at the bottom point.
  void strike(double theta, const Eigen::Vector2d& heading) {
    mass_ = p_.m1;
    const double v = swing(theta, heading);
    const HitOutcome h = hit(p_.m1, p_.m2, v, p_.e_c);
    other_energy_ = 0.5 * p_.m1 * h.striker * h.striker;
    mass_ = p_.m2;
    state_.velocity << h.struck * heading, 0.0;
    state_.phase = Phase::kSliding;
    perturb_planar();
    note();
  }

  // Free flight until z falls to `ground`.
  void fly(double ground) {
    state_.phase = Phase::kAirborne;
    const double g = p_.g;
    if (fidelity_ == Fidelity::kAnalytic) {
      const double z0 = state_.position.z() - ground, vz = state_.velocity.z();
      const double tf = z0 <= 0.0 && vz <= 0.0 ? 0.0 : (vz + std::sqrt(vz * vz + 2.0 * g * std::max(z0, 0.0))) / g;
      if (record_) {
        const Eigen::Vector3d p0 = state_.position, v0 = state_.velocity;
        for (double s = kSampleInterval; s < tf; s += kSampleInterval) {
          state_.position = p0 + v0 * s + Eigen::Vector3d(0, 0, -0.5 * g * s * s);
          state_.velocity = v0 + Eigen::Vector3d(0, 0, -g * s);
          const double keep = t_;
          t_ += s;
          note();
          t_ = keep;
        }
        state_.position = p0;
        state_.velocity = v0;
      }
      state_.position += state_.velocity * tf + Eigen::Vector3d(0, 0, -0.5 * g * tf * tf);
      state_.velocity.z() -= g * tf;
      state_.position.z() = ground;
      t_ += tf;
    } else {
      const double dt = kRk4Step;
      int steps = 0;
      while (true) {
        // RK4 of x' = v, v' = (0, 0, -g); exact for constant acceleration.
        const Eigen::Vector3d acc(0.0, 0.0, -g);
        const Eigen::Vector3d k1 = state_.velocity, k2 = state_.velocity + 0.5 * dt * acc,
                              k4 = state_.velocity + dt * acc;
        const Eigen::Vector3d np = state_.position + dt / 6.0 * (k1 + 4.0 * k2 + k4);
        const Eigen::Vector3d nv = state_.velocity + dt * acc;
        if (np.z() <= ground) {
          const double frac = (state_.position.z() - ground) / (state_.position.z() - np.z());
          state_.position += frac * (np - state_.position);
          state_.velocity += frac * (nv - state_.velocity);
          state_.position.z() = ground;
          t_ += frac * dt;
          break;
        }
        state_.position = np;
        state_.velocity = nv;
        t_ += dt;
        if (++steps % kNumericSampleEvery == 0) note();
      }
    }
    if (ground <= 0.0) {
      settle(Phase::kResting);
    } else {
      note();
    }
  }

  // Slides along the current horizontal velocity until rest or until x
  // reaches `x_limit`. Returns true when the limit was reached while moving.
  bool slide(double x_limit) {
    state_.phase = Phase::kSliding;
    const double a = p_.mu * p_.g;
    const double v0 = state_.velocity.head<2>().norm();
    if (v0 <= 0.0) return false;
    const Eigen::Vector2d dir = state_.velocity.head<2>() / v0;
    const double to_limit = dir.x() > 0.0 ? (x_limit - state_.position.x()) / dir.x()
                                          : std::numeric_limits<double>::infinity();
    if (fidelity_ == Fidelity::kAnalytic) {
      const double stop = a > 0.0 ? v0 * v0 / (2.0 * a) : std::numeric_limits<double>::infinity();
      const bool reaches = to_limit < stop;
      const double dist = reaches ? to_limit : stop;
      const double v1 = reaches ? std::sqrt(std::max(0.0, v0 * v0 - 2.0 * a * dist)) : 0.0;
      const double dt = a > 0.0 ? (v0 - v1) / a : dist / v0;
      if (record_) {
        const Eigen::Vector3d p0 = state_.position;
        for (double s = kSampleInterval; s < dt; s += kSampleInterval) {
          const double d = v0 * s - 0.5 * a * s * s;
          state_.position.head<2>() = p0.head<2>() + d * dir;
          state_.velocity.head<2>() = (v0 - a * s) * dir;
          const double keep = t_;
          t_ += s;
          note();
          t_ = keep;
        }
        state_.position = p0;
      }
      state_.position.head<2>() += dist * dir;
      state_.velocity.head<2>() = v1 * dir;
      t_ += dt;
      note();
      return reaches;
    }
    double s = 0.0, v = v0;
    int steps = 0;
    const Eigen::Vector3d p0 = state_.position;
    while (true) {
      const double dt = kRk4Step;
      const double k1 = v, k2 = v - 0.5 * dt * a, k4 = v - dt * a;
      const double ns = s + dt / 6.0 * (k1 + 4.0 * k2 + k4);
      const double nv = v - dt * a;
      if (ns >= to_limit) {
        const double frac = (to_limit - s) / (ns - s);
        v += frac * (nv - v);
        s = to_limit;
        t_ += frac * dt;
        state_.position.head<2>() = p0.head<2>() + s * dir;
        state_.velocity.head<2>() = v * dir;
        note();
        return true;
      }
      if (nv <= 0.0) {
        const double tau = v / a;
        s += v * tau - 0.5 * a * tau * tau;
        t_ += tau;
        state_.position.head<2>() = p0.head<2>() + s * dir;
        state_.velocity.setZero();
        note();
        return false;
      }
      s = ns;
      v = nv;
      t_ += dt;
      if (++steps % kNumericSampleEvery == 0) {
        state_.position.head<2>() = p0.head<2>() + s * dir;
        state_.velocity.head<2>() = v * dir;
        note();
      }
    }
  }

  const TaskDef& task_;
  const PhysicsParams& p_;
  Fidelity fidelity_;
  bool record_;
  double sigma_;
  std::mt19937_64 rng_;
  WorldState state_;
  double t_ = 0.0;
  double mass_ = 1.0;
  double other_energy_ = 0.0;
  std::vector<TrajectoryPoint> traj_;
};

}  // namespace

ExecutionResult execute_action(const TaskDef& task, std::span<const double> action,
                               const SimNoise& noise, Fidelity fidelity, bool record_trajectory) {
  if (noise.sigma_velocity < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
  std::vector<double> a(action.begin(), action.end());
  const bool clamped = clamp_action(task, a);
  Run run(task, noise, fidelity, record_trajectory);
  switch (task.kind) {
    case TaskKind::kLaunch: run.launch(a[0], a[1]); break;
    case TaskKind::kBounce: run.bounce(a[0], a[1]); break;
    case TaskKind::kSlide: run.slide_task(a[0], a[1]); break;
    case TaskKind::kBridge: run.bridge(a[0], a[1]); break;
  }
  ExecutionResult r = run.result();
  r.clamped = clamped;
  return r;
}

double simulate_reward(const TaskDef& task, std::span<const double> action, const SimNoise& noise,
                       Fidelity fidelity) {
  return execute_action(task, action, noise, fidelity, false).reward;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryPoint>& trajectory) {
  out << "t,x,y,z,vx,vy,vz,phase\n";
  const auto old = out.precision(10);
  for (const TrajectoryPoint& p : trajectory) {
    out << p.t << ',' << p.position.x() << ',' << p.position.y() << ',' << p.position.z() << ','
        << p.velocity.x() << ',' << p.velocity.y() << ',' << p.velocity.z() << ','
        << to_string(p.phase) << '\n';
  }
  out.precision(old);
}

}  // namespace phyplan::worldsim
