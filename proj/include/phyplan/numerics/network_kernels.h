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

#ifndef PHYPLAN_NUMERICS_NETWORK_KERNELS_H_
#define PHYPLAN_NUMERICS_NETWORK_KERNELS_H_

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Core>

#include "phyplan/numerics/dense_network.h"

namespace phyplan::numerics {

// Network value and its Jacobian with respect to the inputs.
// input_jacobian(i, j) = d output_j / d input_i, shape (input dim) x (output dim).
struct GradientResult {
  Eigen::VectorXd value;
  Eigen::MatrixXd input_jacobian;
};

// All kernels throw std::invalid_argument on dimension mismatch.
Eigen::VectorXd forward(const DenseNetwork& net, std::span<const double> x);
GradientResult forward_with_input_jacobian(const DenseNetwork& net, std::span<const double> x);

// Batched evaluation; each column of `inputs` is one sample.
Eigen::MatrixXd forward_batch(const DenseNetwork& net, const Eigen::MatrixXd& inputs);

// Outputs plus their directional derivative along a fixed input direction
// (the same direction for every column).
struct DirectionalBatch {
  Eigen::MatrixXd value;
  Eigen::MatrixXd derivative;
};
DirectionalBatch forward_directional_batch(const DenseNetwork& net, const Eigen::MatrixXd& inputs,
                                           const Eigen::VectorXd& direction);

// Adjoints of a scalar loss with respect to a DirectionalBatch. `d_derivative`
// is ignored when the kernel runs without a direction.
struct BatchAdjoint {
  Eigen::MatrixXd d_value;
  Eigen::MatrixXd d_derivative;
};

// Per-chunk loss head. Receives the network outputs for columns
// [first_column, first_column + outputs.value.cols()), must fill `adjoint`
// (same shapes as outputs) and may add into `extra_gradient`, the gradient of
// the loss with respect to parameters that live outside the network. Returns
// the chunk's loss contribution. Called concurrently from several threads on
// disjoint chunks, so it must not mutate shared state.
using LossHead = std::function<double(const DirectionalBatch& outputs, Eigen::Index first_column,
                                      BatchAdjoint& adjoint, std::span<double> extra_gradient)>;

inline constexpr Eigen::Index kLossChunkColumns = 128;

// Sum of head(...) over all column chunks, together with its gradient with
// respect to the flattened network parameters (written to `network_gradient`)
// and the extra parameters (written to `extra_gradient`). When `direction` is
// null only plain values are propagated.
//
// Chunks run in parallel under OpenMP; partial sums are combined in chunk
// order, so results do not depend on the thread count.
double accumulate_loss_gradient(const DenseNetwork& net, const Eigen::MatrixXd& inputs,
                                const Eigen::VectorXd* direction, const LossHead& head,
                                std::span<double> network_gradient,
                                std::span<double> extra_gradient);

// Same contract, value only.
double accumulate_loss(const DenseNetwork& net, const Eigen::MatrixXd& inputs,
                       const Eigen::VectorXd* direction, const LossHead& head,
                       std::size_t extra_size);

}  // namespace phyplan::numerics

#endif  // PHYPLAN_NUMERICS_NETWORK_KERNELS_H_
