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

#include "phyplan/planner/mcts.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace phyplan::planner {

void PlannerConfig::validate() const {
  if (D < 1) throw std::invalid_argument("planner D must be >= 1");
  if (K < 1) throw std::invalid_argument("planner K must be >= 1");
  if (!(alpha >= 0.0)) throw std::invalid_argument("planner alpha must be >= 0");
  if (expansion_threshold < 0) throw std::invalid_argument("expansion threshold must be >= 0");
  if (!(t_query_step > 0.0)) throw std::invalid_argument("t_query_step must be > 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
}

std::size_t TreeNode::visits() const { return std::accumulate(n.begin(), n.end(), std::size_t{0}); }

std::size_t select_arm(const TreeNode& node, double alpha, int threshold) {
  if (node.arms.empty() || node.arms.size() < static_cast<std::size_t>(threshold)) {
    throw std::logic_error("select_arm on a node that is not fully expanded");
  }
  const double log_total = std::log(static_cast<double>(node.visits()));
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < node.arms.size(); ++i) {
    const double score = node.v[i] + alpha * std::sqrt(log_total / node.n[i]);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

RolloutValue pinn_rollout(const TreeNode& node, const worldsim::TaskDef& task,
                          const skills::SkillPredictor& models, const adapt::GaussianProcess* gp,
                          const PlannerConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RolloutValue r;
  r.action = node.partial_action;
  for (std::size_t d = r.action.size(); d < task.num_dims(); ++d) {
    std::uniform_real_distribution<double> u(task.action_dims[d].lo, task.action_dims[d].hi);
    r.action.push_back(u(rng));
  }
  RolloutOptions opt;
  opt.t_query_step = cfg.t_query_step;
  r.model_reward = skill_rollout(task, models, r.action, opt).reward;
  r.value = r.model_reward;
  if (gp != nullptr) {
    const std::vector<double> unit = worldsim::to_unit_cube(task, r.action);
    const adapt::GPPosterior p = gp->posterior(unit);
    r.value += p.mean + std::sqrt(cfg.beta) * p.stddev;
  }
  return r;
}

void write_trace(std::ostream& out, std::span<const TraceEntry> trace) {
  for (const TraceEntry& e : trace) {
    out << "iter=" << e.iteration << " path=";
    if (e.path.empty()) out << "root";
    for (std::size_t i = 0; i < e.path.size(); ++i) out << (i ? "/" : "") << e.path[i];
    if (e.expanded) out << "+expand";
    out << " reward=" << e.reward << " best=" << e.best << '\n';
  }
}

Planner::Planner(const worldsim::TaskDef& task, const skills::SkillPredictor& models,
                 const adapt::GaussianProcess* gp, PlannerConfig cfg)
    : task_(task), models_(models), gp_(gp), cfg_(cfg), rng_(cfg.seed) {
  cfg_.validate();
  task_.validate();
  result_.phy_reward = -std::numeric_limits<double>::infinity();
}

double Planner::rollout(const TreeNode& node) {
  const RolloutValue r = pinn_rollout(node, task_, models_, gp_, cfg_, rng_());
  ++result_.rollouts;
  if (r.value > result_.phy_reward) {
    result_.phy_reward = r.value;
    result_.model_reward = r.model_reward;
    result_.best_action = r.action;
  }
  return r.value;
}

void Planner::expand(TreeNode& node) {
  if (node.terminal(task_.num_dims())) throw std::logic_error("cannot expand a terminal node");
  const worldsim::ActionDim& dim = task_.action_dims[node.depth];
  std::uniform_real_distribution<double> u(dim.lo, dim.hi);
  const auto D = static_cast<std::size_t>(cfg_.D);
  node.arms.resize(D);
  for (double& a : node.arms) a = u(rng_);
  node.n.assign(D, 1);
  node.v.assign(D, 0.0);
  node.children.clear();
  for (std::size_t i = 0; i < D; ++i) {
    auto child = std::make_unique<TreeNode>();
    child->depth = node.depth + 1;
    child->partial_action = node.partial_action;
    child->partial_action.push_back(node.arms[i]);
    node.v[i] = rollout(*child);
    node.children.push_back(std::move(child));
  }
}

double Planner::iterate(TreeNode& node) {
  if (node.terminal(task_.num_dims())) return rollout(node);
  if (!node.arms.empty() && node.arms.size() >= static_cast<std::size_t>(cfg_.threshold())) {
    const std::size_t a = select_arm(node, cfg_.alpha, cfg_.threshold());
    path_.push_back(a);
    const double rv = iterate(*node.children[a]);
    node.v[a] = (node.v[a] * node.n[a] + rv) / (node.n[a] + 1);
    ++node.n[a];
    return rv;
  }
  expand(node);
  expanded_ = true;
  return rollout(node);
}

PlanResult Planner::plan() {
  root_ = TreeNode{};
  result_ = PlanResult{};
  result_.phy_reward = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg_.K; ++k) {
    path_.clear();
    expanded_ = false;
    const double rv = iterate(root_);
    if (cfg_.trace) {
      result_.trace.push_back({k, path_, expanded_, rv, result_.phy_reward});
    }
  }
  return result_;
}

PlanResult plan(const worldsim::TaskDef& task, const skills::SkillPredictor& models,
                const adapt::GaussianProcess* gp, const PlannerConfig& cfg) {
  Planner p(task, models, gp, cfg);
  return p.plan();
}

}  // namespace phyplan::planner
