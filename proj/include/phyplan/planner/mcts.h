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

#ifndef PHYPLAN_PLANNER_MCTS_H_
#define PHYPLAN_PLANNER_MCTS_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "phyplan/adapt/gaussian_process.h"
#include "phyplan/planner/rollout.h"
#include "phyplan/skills/predictor.h"
#include "phyplan/worldsim/tasks.h"

namespace phyplan::planner {

struct PlannerConfig {
  int D = 20;
  int K = 10;
  double alpha = 1.4142135623730951;
  // 0 means D.
  int expansion_threshold = 0;
  double t_query_step = 0.01;
  double beta = 0.25;
  std::uint64_t seed = 0;
  bool trace = false;

  int threshold() const { return expansion_threshold > 0 ? expansion_threshold : D; }
  // Throws std::invalid_argument.
  void validate() const;
};

// One level per action dimension; `arms` are the sampled values of dimension
// `depth`, children[i] fixes arms[i].
struct TreeNode {
  std::size_t depth = 0;
  std::vector<double> partial_action;
  std::vector<double> arms;
  std::vector<int> n;
  std::vector<double> v;
  std::vector<std::unique_ptr<TreeNode>> children;

  bool terminal(std::size_t num_dims) const { return depth >= num_dims; }
  std::size_t visits() const;
};

// argmax of v_a + alpha sqrt(log(sum n) / n_a), lowest index on ties. Throws
// std::logic_error when the node has fewer than `threshold` arms.
std::size_t select_arm(const TreeNode& node, double alpha, int threshold);

// Completes the unset dimensions uniformly, rolls the chain out and applies the
// GP-UCB correction (skipped when gp is null). Deterministic in `seed`.
struct RolloutValue {
  std::vector<double> action;
  double model_reward = 0.0;  // skill-model reward before correction
  double value = 0.0;         // corrected
};
RolloutValue pinn_rollout(const TreeNode& node, const worldsim::TaskDef& task,
                          const skills::SkillPredictor& models, const adapt::GaussianProcess* gp,
                          const PlannerConfig& cfg, std::uint64_t seed);

struct TraceEntry {
  int iteration = 0;
  std::vector<std::size_t> path;  // arm indices chosen by selection
  bool expanded = false;
  double reward = 0.0;
  double best = 0.0;
};
void write_trace(std::ostream& out, std::span<const TraceEntry> trace);

struct PlanResult {
  std::vector<double> best_action;
  double phy_reward = 0.0;    // corrected value of best_action
  double model_reward = 0.0;  // its uncorrected skill-model reward
  int rollouts = 0;
  std::vector<TraceEntry> trace;
};

class Planner {
 public:
  Planner(const worldsim::TaskDef& task, const skills::SkillPredictor& models,
          const adapt::GaussianProcess* gp, PlannerConfig cfg);

  // Samples D arms for the node's dimension and rolls each child out once.
  // Throws std::logic_error on a terminal node.
  void expand(TreeNode& node);
  double iterate(TreeNode& node);
  // K iterations from a fresh root.
  PlanResult plan();

  TreeNode& root() { return root_; }
  const PlanResult& result() const { return result_; }

 private:
  double rollout(const TreeNode& node);

  const worldsim::TaskDef& task_;
  const skills::SkillPredictor& models_;
  const adapt::GaussianProcess* gp_;
  PlannerConfig cfg_;
  std::mt19937_64 rng_;
  TreeNode root_;
  PlanResult result_;
  std::vector<std::size_t> path_;
  bool expanded_ = false;
};

PlanResult plan(const worldsim::TaskDef& task, const skills::SkillPredictor& models,
                const adapt::GaussianProcess* gp, const PlannerConfig& cfg);

}  // namespace phyplan::planner

#endif  // PHYPLAN_PLANNER_MCTS_H_
