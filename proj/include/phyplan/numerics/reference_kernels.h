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

#ifndef PHYPLAN_NUMERICS_REFERENCE_KERNELS_H_
#define PHYPLAN_NUMERICS_REFERENCE_KERNELS_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "phyplan/numerics/dense_network.h"
#include "phyplan/numerics/network_kernels.h"

// Serial, one-sample-at-a-time versions of the network kernels written with
// plain loops. They are slow and exist to cross-check the batched kernels and
// to serve as the baseline in the kernel benchmark.
namespace phyplan::numerics::reference {

std::vector<double> forward(const DenseNetwork& net, std::span<const double> x);

struct PointOutputs {
  std::vector<double> value;
  std::vector<double> derivative;
};
PointOutputs forward_directional(const DenseNetwork& net, std::span<const double> x,
                                 std::span<const double> direction);

// Same contract as numerics::accumulate_loss_gradient; `head` is called once
// per column with single-column batches, in column order.
double accumulate_loss_gradient(const DenseNetwork& net, const Eigen::MatrixXd& inputs,
                                const Eigen::VectorXd* direction, const LossHead& head,
                                std::span<double> network_gradient,
                                std::span<double> extra_gradient);

}  // namespace phyplan::numerics::reference

#endif  // PHYPLAN_NUMERICS_REFERENCE_KERNELS_H_
