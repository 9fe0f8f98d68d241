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

#ifndef PHYPLAN_NUMERICS_LBFGS_H_
#define PHYPLAN_NUMERICS_LBFGS_H_

#include <string_view>
#include <vector>

#include "phyplan/numerics/autodiff.h"

namespace phyplan::numerics {

struct LBFGSConfig {
  int memory = 10;
  int max_iterations = 6400;
  double gradient_tolerance = 1e-10;  // on the Euclidean gradient norm
  double initial_step = 1.0;          // first trial step after the first iteration
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  double learning_rate = 0.01;        // first trial step of the first iteration
  int max_line_search_evaluations = 30;

  // Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

enum class LBFGSStatus {
  kConverged,
  kMaxIterations,
  kLineSearchFailed,
  kNonFinite,
};

std::string_view to_string(LBFGSStatus status);

struct LBFGSResult {
  std::vector<double> params;
  // Objective value after each accepted step.
  std::vector<double> loss_history;
  LBFGSStatus status = LBFGSStatus::kMaxIterations;
  int iterations = 0;
  int evaluations = 0;
  double final_loss = 0.0;
  double final_gradient_norm = 0.0;
};

// Limited-memory BFGS with a strong-Wolfe line search (cubic interpolation,
// bracketing then zoom). Never throws on numerical trouble: a failed line
// search or a non-finite objective returns the best point seen so far with
// the matching status.
LBFGSResult lbfgs_minimize(const Objective& objective, std::vector<double> init,
                           const LBFGSConfig& cfg);

}  // namespace phyplan::numerics

#endif  // PHYPLAN_NUMERICS_LBFGS_H_
