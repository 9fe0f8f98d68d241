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

#include "phyplan/numerics/dense_network.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace phyplan::numerics {

DenseNetwork::DenseNetwork(std::vector<std::size_t> layer_sizes,
                           Activation hidden, Activation output)
    : sizes_(std::move(layer_sizes)), hidden_(hidden), output_(output) {
  if (sizes_.size() < 2) {
    throw std::invalid_argument("network needs at least an input and an output size");
  }
  for (std::size_t s : sizes_) {
    if (s == 0) throw std::invalid_argument("network layer sizes must be positive");
  }
  layers_.reserve(sizes_.size() - 1);
  for (std::size_t k = 0; k + 1 < sizes_.size(); ++k) {
    const auto rows = static_cast<Eigen::Index>(sizes_[k + 1]);
    const auto cols = static_cast<Eigen::Index>(sizes_[k]);
    layers_.push_back({Eigen::MatrixXd::Zero(rows, cols), Eigen::VectorXd::Zero(rows)});
  }
}

std::size_t DenseNetwork::num_parameters() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

std::vector<double> DenseNetwork::flatten() const {
  std::vector<double> out(num_parameters());
  flatten_into(out);
  return out;
}

void DenseNetwork::flatten_into(std::span<double> out) const {
  if (out.size() != num_parameters()) {
    throw std::invalid_argument("flatten_into: buffer has " + std::to_string(out.size()) +
                                " entries, network has " + std::to_string(num_parameters()));
  }
  std::size_t pos = 0;
  for (const auto& l : layers_) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) out[pos++] = l.weight(r, c);
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) out[pos++] = l.bias(r);
  }
}

void DenseNetwork::assign(std::span<const double> params) {
  if (params.size() != num_parameters()) {
    throw std::invalid_argument("assign: got " + std::to_string(params.size()) +
                                " parameters, network has " + std::to_string(num_parameters()));
  }
  std::size_t pos = 0;
  for (auto& l : layers_) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) l.weight(r, c) = params[pos++];
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias(r) = params[pos++];
  }
}

bool DenseNetwork::operator==(const DenseNetwork& other) const {
  if (sizes_ != other.sizes_ || hidden_ != other.hidden_ || output_ != other.output_) return false;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (layers_[k].weight != other.layers_[k].weight) return false;
    if (layers_[k].bias != other.layers_[k].bias) return false;
  }
  return true;
}

DenseNetwork xavier_init(std::span<const std::size_t> layer_sizes, std::uint64_t seed) {
  DenseNetwork net(std::vector<std::size_t>(layer_sizes.begin(), layer_sizes.end()));
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < net.num_layers(); ++k) {
    auto& l = net.layer(k);
    const double fan_sum = static_cast<double>(l.weight.rows() + l.weight.cols());
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / fan_sum));
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) l.weight(r, c) = dist(rng);
    }
  }
  return net;
}

std::vector<std::size_t> skill_network_sizes(std::size_t input_dim, std::size_t output_dim) {
  std::vector<std::size_t> sizes;
  sizes.push_back(input_dim);
  for (std::size_t i = 0; i < kSkillHiddenLayers; ++i) sizes.push_back(kSkillHiddenWidth);
  sizes.push_back(output_dim);
  return sizes;
}

}  // namespace phyplan::numerics
