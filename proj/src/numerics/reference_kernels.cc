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

#include "phyplan/numerics/reference_kernels.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phyplan::numerics::reference {
namespace {

using Vec = std::vector<double>;

struct PointCache {
  std::vector<Vec> act;
  std::vector<Vec> zdot;
  std::vector<Vec> tangent;
};

void run_forward(const DenseNetwork& net, std::span<const double> x,
                 std::span<const double> direction, PointCache& cache) {
  if (x.size() != net.input_dim()) throw std::invalid_argument("reference forward: bad input size");
  const bool directional = !direction.empty();
  const std::size_t num_layers = net.num_layers();
  cache.act.assign(num_layers + 1, {});
  cache.act[0].assign(x.begin(), x.end());
  if (directional) {
    cache.zdot.assign(num_layers, {});
    cache.tangent.assign(num_layers + 1, {});
    cache.tangent[0].assign(direction.begin(), direction.end());
  }
  for (std::size_t k = 0; k < num_layers; ++k) {
    const DenseLayer& layer = net.layer(k);
    const auto rows = static_cast<std::size_t>(layer.weight.rows());
    const auto cols = static_cast<std::size_t>(layer.weight.cols());
    const bool is_tanh = net.activation_of(k) == Activation::kTanh;
    Vec& out = cache.act[k + 1];
    out.assign(rows, 0.0);
    if (directional) {
      cache.zdot[k].assign(rows, 0.0);
      cache.tangent[k + 1].assign(rows, 0.0);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double z = layer.bias(static_cast<Eigen::Index>(r));
      double zd = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        const double w = layer.weight(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        z += w * cache.act[k][c];
        if (directional) zd += w * cache.tangent[k][c];
      }
      const double a = is_tanh ? std::tanh(z) : z;
      out[r] = a;
      if (directional) {
        cache.zdot[k][r] = zd;
        cache.tangent[k + 1][r] = is_tanh ? (1.0 - a * a) * zd : zd;
      }
    }
  }
}

}  // namespace

std::vector<double> forward(const DenseNetwork& net, std::span<const double> x) {
  PointCache cache;
  run_forward(net, x, {}, cache);
  return cache.act.back();
}

PointOutputs forward_directional(const DenseNetwork& net, std::span<const double> x,
                                 std::span<const double> direction) {
  if (direction.size() != net.input_dim()) {
    throw std::invalid_argument("reference forward: bad direction size");
  }
  PointCache cache;
  run_forward(net, x, direction, cache);
  return {cache.act.back(), cache.tangent.back()};
}

double accumulate_loss_gradient(const DenseNetwork& net, const Eigen::MatrixXd& inputs,
                                const Eigen::VectorXd* direction, const LossHead& head,
                                std::span<double> network_gradient,
                                std::span<double> extra_gradient) {
  if (network_gradient.size() != net.num_parameters()) {
    throw std::invalid_argument("reference: network gradient buffer has the wrong size");
  }
  std::fill(network_gradient.begin(), network_gradient.end(), 0.0);
  std::fill(extra_gradient.begin(), extra_gradient.end(), 0.0);
  const bool directional = direction != nullptr;
  const std::size_t num_layers = net.num_layers();
  const auto n_out = static_cast<Eigen::Index>(net.output_dim());

  std::vector<std::size_t> offsets(num_layers);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < num_layers; ++k) {
    offsets[k] = pos;
    pos += static_cast<std::size_t>(net.layer(k).weight.size() + net.layer(k).bias.size());
  }

  double loss = 0.0;
  PointCache cache;
  Vec x(net.input_dim());
  Vec dir;
  if (directional) dir.assign(direction->data(), direction->data() + direction->size());

  for (Eigen::Index col = 0; col < inputs.cols(); ++col) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = inputs(static_cast<Eigen::Index>(i), col);
    run_forward(net, x, dir, cache);

    DirectionalBatch out;
    out.value = Eigen::Map<const Eigen::VectorXd>(cache.act.back().data(), n_out);
    if (directional) out.derivative = Eigen::Map<const Eigen::VectorXd>(cache.tangent.back().data(), n_out);
    BatchAdjoint adjoint;
    adjoint.d_value = Eigen::MatrixXd::Zero(n_out, 1);
    if (directional) adjoint.d_derivative = Eigen::MatrixXd::Zero(n_out, 1);
    loss += head(out, col, adjoint, extra_gradient);

    Vec a_bar(adjoint.d_value.data(), adjoint.d_value.data() + n_out);
    Vec t_bar;
    if (directional) t_bar.assign(adjoint.d_derivative.data(), adjoint.d_derivative.data() + n_out);

    for (std::size_t kk = num_layers; kk-- > 0;) {
      const DenseLayer& layer = net.layer(kk);
      const auto rows = static_cast<std::size_t>(layer.weight.rows());
      const auto cols = static_cast<std::size_t>(layer.weight.cols());
      const bool is_tanh = net.activation_of(kk) == Activation::kTanh;
      Vec z_bar(rows), zd_bar(rows, 0.0);
      for (std::size_t r = 0; r < rows; ++r) {
        const double a = cache.act[kk + 1][r];
        if (is_tanh) {
          const double s = 1.0 - a * a;
          if (directional) {
            zd_bar[r] = s * t_bar[r];
            const double s_bar = cache.zdot[kk][r] * t_bar[r];
            z_bar[r] = s * a_bar[r] - 2.0 * a * s * s_bar;
          } else {
            z_bar[r] = s * a_bar[r];
          }
        } else {
          z_bar[r] = a_bar[r];
          if (directional) zd_bar[r] = t_bar[r];
        }
      }
      std::size_t p = offsets[kk];
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          double g = z_bar[r] * cache.act[kk][c];
          if (directional) g += zd_bar[r] * cache.tangent[kk][c];
          network_gradient[p++] += g;
        }
      }
      for (std::size_t r = 0; r < rows; ++r) network_gradient[p++] += z_bar[r];

      Vec next_a(cols, 0.0), next_t(directional ? cols : 0, 0.0);
      for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
          const double w = layer.weight(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
          next_a[c] += w * z_bar[r];
          if (directional) next_t[c] += w * zd_bar[r];
        }
      }
      a_bar = std::move(next_a);
      t_bar = std::move(next_t);
    }
  }
  return loss;
}

}  // namespace phyplan::numerics::reference
