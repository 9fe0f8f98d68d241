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

#include "phyplan/adapt/gaussian_process.h"

#include <cmath>
#include <stdexcept>

namespace phyplan::adapt {

GaussianProcess::GaussianProcess(GPHyperparameters hyper) : hyper_(hyper) {
  if (!(hyper_.lengthscale > 0.0) || !(hyper_.signal_variance > 0.0) ||
      hyper_.noise_variance < 0.0 || hyper_.beta < 0.0) {
    throw std::invalid_argument("invalid GP hyperparameters");
  }
}

double GaussianProcess::kernel(std::span<const double> a, std::span<const double> b) const {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  return hyper_.signal_variance * std::exp(-0.5 * d2 / (hyper_.lengthscale * hyper_.lengthscale));
}

void GaussianProcess::fit(std::vector<std::vector<double>> actions, std::vector<double> residuals) {
  if (actions.size() != residuals.size()) {
    throw std::invalid_argument("GP fit needs one residual per action");
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].size() != actions.front().size()) {
      throw std::invalid_argument("GP actions have inconsistent dimensions");
    }
    for (double v : actions[i]) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite GP action");
    }
    if (!std::isfinite(residuals[i])) throw std::invalid_argument("non-finite GP residual");
  }
  const auto n = static_cast<Eigen::Index>(actions.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      k(i, j) = k(j, i) = kernel(actions[static_cast<std::size_t>(i)],
                                 actions[static_cast<std::size_t>(j)]);
    }
    k(i, i) += hyper_.noise_variance;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (n > 0 && llt.info() != Eigen::Success) {
    throw std::invalid_argument("GP kernel matrix is not positive definite");
  }
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(residuals.data(), n);
  alpha_ = n > 0 ? Eigen::VectorXd(llt.solve(y)) : Eigen::VectorXd();
  llt_ = std::move(llt);
  actions_ = std::move(actions);
}

GPPosterior GaussianProcess::posterior(std::span<const double> action) const {
  if (actions_.empty()) return {0.0, std::sqrt(hyper_.signal_variance)};
  if (action.size() != actions_.front().size()) {
    throw std::invalid_argument("GP query dimension does not match the data");
  }
  const auto n = static_cast<Eigen::Index>(actions_.size());
  Eigen::VectorXd ks(n);
  for (Eigen::Index i = 0; i < n; ++i) ks(i) = kernel(actions_[static_cast<std::size_t>(i)], action);
  const double mean = ks.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(ks);
  const double var = hyper_.signal_variance - v.squaredNorm();
  return {mean, std::sqrt(std::max(0.0, var))};
}

double GaussianProcess::ucb_correct(std::span<const double> action, double rv) const {
  const GPPosterior p = posterior(action);
  return rv + p.mean + std::sqrt(hyper_.beta) * p.stddev;
}

}  // namespace phyplan::adapt
