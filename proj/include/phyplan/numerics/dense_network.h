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

#ifndef PHYPLAN_NUMERICS_DENSE_NETWORK_H_
#define PHYPLAN_NUMERICS_DENSE_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace phyplan::numerics {

enum class Activation : std::uint8_t {
  kIdentity = 0,
  kTanh = 1,
};

// One affine map. `weight` is fan_out x fan_in, so z = weight * a + bias.
struct DenseLayer {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

// Fully connected feed-forward network: tanh on every hidden layer, identity
// on the output layer. Treated as an immutable value once trained.
//
// Parameter flattening order is layer-major; inside a layer the weight
// matrix comes first in row-major order, followed by the bias vector. The
// optimizer and the on-disk format both rely on this order.
class DenseNetwork {
 public:
  DenseNetwork() = default;

  // Zero-initialized network. Throws std::invalid_argument when fewer than
  // two sizes are given or any size is zero.
  explicit DenseNetwork(std::vector<std::size_t> layer_sizes,
                        Activation hidden = Activation::kTanh,
                        Activation output = Activation::kIdentity);

  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
  std::size_t input_dim() const { return sizes_.front(); }
  std::size_t output_dim() const { return sizes_.back(); }
  std::size_t num_layers() const { return layers_.size(); }
  std::size_t num_parameters() const;

  const DenseLayer& layer(std::size_t k) const { return layers_[k]; }
  DenseLayer& layer(std::size_t k) { return layers_[k]; }

  Activation hidden_activation() const { return hidden_; }
  Activation output_activation() const { return output_; }
  Activation activation_of(std::size_t k) const {
    return k + 1 == layers_.size() ? output_ : hidden_;
  }

  std::vector<double> flatten() const;
  void flatten_into(std::span<double> out) const;
  // Throws std::invalid_argument unless params.size() == num_parameters().
  void assign(std::span<const double> params);

  bool operator==(const DenseNetwork& other) const;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<DenseLayer> layers_;
  Activation hidden_ = Activation::kTanh;
  Activation output_ = Activation::kIdentity;
};

// Glorot/Xavier normal initialization: weights ~ N(0, 2 / (fan_in + fan_out)),
// zero biases. Pure function of (layer_sizes, seed).
DenseNetwork xavier_init(std::span<const std::size_t> layer_sizes,
                         std::uint64_t seed);

inline constexpr std::size_t kSkillHiddenLayers = 8;
inline constexpr std::size_t kSkillHiddenWidth = 40;

// Layer sizes of a skill network: input, 8 hidden layers of 40, output.
std::vector<std::size_t> skill_network_sizes(std::size_t input_dim,
                                             std::size_t output_dim);

}  // namespace phyplan::numerics

#endif  // PHYPLAN_NUMERICS_DENSE_NETWORK_H_
