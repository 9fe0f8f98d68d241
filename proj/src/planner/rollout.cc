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

#include "phyplan/planner/rollout.h"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace phyplan::planner {
namespace {

using skills::SkillKind;
using worldsim::Phase;
using worldsim::TaskDef;
using worldsim::WorldState;

// Event functions fire when they drop to zero or below.
using Event = std::function<double(const Eigen::VectorXd&)>;

struct Stop {
  Eigen::VectorXd out;
  int event = -1;  // -1: cut off at the time cap
};

class Chain {
 public:
  Chain(const TaskDef& task, const skills::SkillPredictor& predictor, const RolloutOptions& opt)
      : task_(task), predictor_(predictor), opt_(opt) {
    for (SkillKind s : task.skill_chain) {
      if (!predictor.has(s)) {
        throw std::runtime_error("no skill model for " + std::string(skills::to_string(s)));
      }
    }
  }

  // Steps a time-dependent skill until the first event fires.
  Stop run(SkillKind skill, std::span<const double> init, const std::vector<Event>& events) const {
    const double dt = opt_.t_query_step;
    const int max_steps = static_cast<int>(std::ceil(opt_.max_skill_time / dt));
    std::vector<double> times;
    Eigen::VectorXd prev;
    std::vector<double> gprev(events.size());
    int k = 0;
    while (k <= max_steps) {
      times.clear();
      for (int j = 0; j < opt_.block && k + j <= max_steps; ++j) times.push_back((k + j) * dt);
      const Eigen::MatrixXd out = predictor_.predict_series(skill, init, times);
      for (Eigen::Index c = 0; c < out.cols(); ++c, ++k) {
        const Eigen::VectorXd cur = out.col(c);
        double best_frac = std::numeric_limits<double>::infinity();
        int fired = -1;
        for (std::size_t e = 0; e < events.size(); ++e) {
          const double g = events[e](cur);
          if (g <= 0.0) {
            const double frac = k == 0 || gprev[e] <= 0.0 ? 0.0 : gprev[e] / (gprev[e] - g);
            if (frac < best_frac) {
              best_frac = frac;
              fired = static_cast<int>(e);
            }
          }
          gprev[e] = g;
        }
        if (fired >= 0) {
          if (k == 0) return {cur, fired};
          return {prev + best_frac * (cur - prev), fired};
        }
        prev = cur;
      }
    }
    return {prev, -1};
  }

  // Bob speed at the bottom of the swing released from rest at theta.
  double swing(double theta) const {
    const double init[] = {theta};
    const Stop s = run(SkillKind::kSwinging, init, {[](const Eigen::VectorXd& o) { return o(0); }});
    return std::abs(s.out(1)) * task_.physics.l;
  }

  double strike(double theta) const {
    const double v = swing(theta);
    const double in[] = {task_.physics.m1, task_.physics.m2, v};
    return predictor_.predict_instant(SkillKind::kHitting, in)(0);
  }

  // Slides from speed v for at most `limit` metres. Returns (distance, speed
  // at the end, reached limit).
  std::tuple<double, double, bool> slide(double v, double limit) const {
    if (v <= 0.0) return {0.0, 0.0, false};
    const double init[] = {v};
    std::vector<Event> ev{[](const Eigen::VectorXd& o) { return o(1); }};
    if (std::isfinite(limit)) ev.push_back([limit](const Eigen::VectorXd& o) { return limit - o(0); });
    const Stop s = run(SkillKind::kSliding, init, ev);
    if (s.event == 1) return {limit, std::max(0.0, s.out(1)), true};
    return {s.out(0), 0.0, false};
  }

  // Flight from horizontal speed vh and vertical speed vv until the object
  // has dropped by `drop`. Returns (horizontal distance, vertical speed).
  std::pair<double, double> fly(double vh, double vv, double drop) const {
    const double init[] = {vh, vv};
    const Stop s = run(SkillKind::kThrowing, init,
                       {[drop](const Eigen::VectorXd& o) { return o(1) + drop; }});
    return {s.out(2), s.out(0)};
  }

  WorldState launch(double theta, double phi) const {
    const Eigen::Vector2d heading(std::cos(phi), std::sin(phi));
    const double v = swing(theta);
    const double x = fly(v, 0.0, task_.geometry.table_height).first;
    WorldState s;
    s.position << task_.geometry.pivot_xy + x * heading, 0.0;
    return s;
  }

  WorldState bounce(double h, double theta_w) const {
    const Eigen::Vector3d& w = task_.geometry.wedge_contact;
    // Dropped from rest, so it meets the wedge with no horizontal speed.
    const double v_impact = fly(0.0, 0.0, h).second;
    const double in[] = {task_.physics.e, theta_w, v_impact, 0.0};
    const Eigen::VectorXd out = predictor_.predict_instant(SkillKind::kBouncing, in);
    const double vv = out(0), vh = out(1);
    const double x = fly(std::abs(vh), vv, w.z()).first;
    WorldState s;
    s.position << w.x() + std::copysign(x, vh), w.y(), 0.0;
    return s;
  }

  WorldState slide_task(double theta, double phi) const {
    const Eigen::Vector2d heading(std::cos(phi), std::sin(phi));
    const double d = std::get<0>(slide(strike(theta), std::numeric_limits<double>::infinity()));
    WorldState s;
    s.position << task_.geometry.pivot_xy + d * heading, task_.geometry.table_height;
    return s;
  }

  WorldState bridge(double theta, double x_b) const {
    const worldsim::Geometry& g = task_.geometry;
    const double x0 = g.pivot_xy.x(), y0 = g.pivot_xy.y();
    WorldState s;
    auto rest_at = [&](double x) {
      s.position << x, y0, g.table_height;
      return s;
    };
    const auto [d1, v1, r1] = slide(strike(theta), g.gap_start - x0);
    if (!r1) return rest_at(x0 + d1);
    const double half = 0.5 * g.bridge_length;
    if (!(x_b - half <= g.gap_start && x_b + half >= g.gap_end)) {
      s.position << 0.5 * (g.gap_start + g.gap_end), y0, 0.0;
      s.phase = Phase::kInGap;
      return s;
    }
    const auto [d2, v2, r2] = slide(v1, g.gap_end - g.gap_start);
    if (!r2) return rest_at(g.gap_start + d2);
    const auto [d3, v3, r3] = slide(v2, g.table_edge - g.gap_end);
    if (!r3) return rest_at(g.gap_end + d3);
    const double x = fly(v3, 0.0, g.table_height).first;
    s.position << g.table_edge + x, y0, 0.0;
    return s;
  }

 private:
  const TaskDef& task_;
  const skills::SkillPredictor& predictor_;
  const RolloutOptions& opt_;
};

}  // namespace

RolloutOutcome skill_rollout(const TaskDef& task, const skills::SkillPredictor& predictor,
                             std::span<const double> action, const RolloutOptions& options) {
  if (action.size() != task.num_dims()) {
    throw std::invalid_argument("rollout action has the wrong dimension");
  }
  if (!(options.t_query_step > 0.0) || options.block < 1) {
    throw std::invalid_argument("invalid rollout options");
  }
  std::vector<double> a(action.begin(), action.end());
  worldsim::clamp_action(task, a);
  const Chain chain(task, predictor, options);
  RolloutOutcome r;
  switch (task.kind) {
    case worldsim::TaskKind::kLaunch: r.final_state = chain.launch(a[0], a[1]); break;
    case worldsim::TaskKind::kBounce: r.final_state = chain.bounce(a[0], a[1]); break;
    case worldsim::TaskKind::kSlide: r.final_state = chain.slide_task(a[0], a[1]); break;
    case worldsim::TaskKind::kBridge: r.final_state = chain.bridge(a[0], a[1]); break;
  }
  if (r.final_state.phase != Phase::kInGap) r.final_state.phase = Phase::kResting;
  r.reward = worldsim::reward_of(r.final_state, task);
  return r;
}

}  // namespace phyplan::planner
