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

#ifndef PHYPLAN_ADAPT_GAUSSIAN_PROCESS_H_
#define PHYPLAN_ADAPT_GAUSSIAN_PROCESS_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace phyplan::adapt {

struct GPHyperparameters {
  double lengthscale = 0.2;
  double signal_variance = 1.0;
  double noise_variance = 1e-4;
  double beta = 0.25;  // exploration weight of the UCB correction
};

struct GPPosterior {
  double mean = 0.0;
  double stddev = 0.0;
};

// Zero-mean GP regression with a squared-exponential kernel over actions
// normalized to the unit cube. Fitting with no data gives the prior.
class GaussianProcess {
 public:
  explicit GaussianProcess(GPHyperparameters hyper = {});

  // Replaces the training data and refactorizes K + noise I. Throws
  // std::invalid_argument on length or dimension mismatches, non-finite
  // values, or a system that is not positive definite.
  void fit(std::vector<std::vector<double>> actions, std::vector<double> residuals);

  // Throws std::invalid_argument on a dimension mismatch with the data.
  GPPosterior posterior(std::span<const double> action) const;
  // rv + mean + sqrt(beta) * stddev.
  double ucb_correct(std::span<const double> action, double rv) const;

  double kernel(std::span<const double> a, std::span<const double> b) const;
  const GPHyperparameters& hyperparameters() const { return hyper_; }
  std::size_t size() const { return actions_.size(); }
  bool empty() const { return actions_.empty(); }

 private:
  GPHyperparameters hyper_;
  std::vector<std::vector<double>> actions_;
  Eigen::VectorXd alpha_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace phyplan::adapt

#endif  // PHYPLAN_ADAPT_GAUSSIAN_PROCESS_H_
