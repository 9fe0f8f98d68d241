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

#include "phyplan/skills/losses.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phyplan/numerics/network_kernels.h"

namespace phyplan::skills {
namespace {

using numerics::BatchAdjoint;
using numerics::DirectionalBatch;

constexpr int kMaxEquations = 3;
constexpr int kMaxOutputs = 3;
constexpr int kMaxParams = 1;

// Residual and partials at one point, on the stack.
struct PointJet {
  int equations = 0;
  double r[kMaxEquations] = {};
  double dy[kMaxEquations][kMaxOutputs] = {};
  double dyt[kMaxEquations][kMaxOutputs] = {};
  double dp[kMaxEquations][kMaxParams] = {};
};

void require_physics(const SkillSpec& spec) {
  if (!spec.has_physics_loss) {
    throw std::invalid_argument("skill " + std::string(spec.name()) +
                                " is learnt from data only and has no physics residual");
  }
}

void eval_jet(SkillKind kind, const double* params, const double* raw, const double* y,
              const double* yt, PointJet& j) {
  constexpr double g = kGravity;
  switch (kind) {
    case SkillKind::kSwinging: {
      const double l = params[0];
      const double s = std::sin(y[0]);
      j.equations = 2;
      j.r[0] = yt[0] - y[1];
      j.dyt[0][0] = 1.0;
      j.dy[0][1] = -1.0;
      j.r[1] = yt[1] + g / l * s;
      j.dyt[1][1] = 1.0;
      j.dy[1][0] = g / l * std::cos(y[0]);
      j.dp[1][0] = -g * s / (l * l);
      break;
    }
    case SkillKind::kSliding: {
      const double mu = params[0];
      j.equations = 2;
      j.r[0] = yt[0] - y[1];
      j.dyt[0][0] = 1.0;
      j.dy[0][1] = -1.0;
      j.r[1] = yt[1] + mu * g;
      j.dyt[1][1] = 1.0;
      j.dp[1][0] = g;
      break;
    }
    case SkillKind::kThrowing: {
      j.equations = 3;
      j.r[0] = yt[0] + g;
      j.dyt[0][0] = 1.0;
      j.r[1] = yt[1] - y[0];
      j.dyt[1][1] = 1.0;
      j.dy[1][0] = -1.0;
      j.r[2] = yt[2] - raw[0];
      j.dyt[2][2] = 1.0;
      break;
    }
    default:
      throw std::invalid_argument("no physics residual for this skill");
  }
}

void check_point_dims(const SkillSpec& spec, std::size_t params, std::size_t raw, std::size_t out,
                      std::size_t rate) {
  if (params != spec.physical_params.size() || raw != spec.input_dim() ||
      out != spec.output_dim() || rate != spec.output_dim()) {
    throw std::invalid_argument("residual arguments do not match the " +
                                std::string(spec.name()) + " schema");
  }
}

}  // namespace

ResidualJacobian physics_residual_jacobian(const SkillSpec& spec, std::span<const double> params,
                                           std::span<const double> raw_input,
                                           std::span<const double> output,
                                           std::span<const double> d_output_dt) {
  require_physics(spec);
  check_point_dims(spec, params.size(), raw_input.size(), output.size(), d_output_dt.size());
  PointJet j;
  eval_jet(spec.kind, params.data(), raw_input.data(), output.data(), d_output_dt.data(), j);
  const auto neq = static_cast<Eigen::Index>(j.equations);
  const auto nout = static_cast<Eigen::Index>(spec.output_dim());
  const auto np = static_cast<Eigen::Index>(params.size());
  ResidualJacobian out{Eigen::VectorXd(neq), Eigen::MatrixXd(neq, nout), Eigen::MatrixXd(neq, nout),
                       Eigen::MatrixXd(neq, np)};
  for (Eigen::Index e = 0; e < neq; ++e) {
    out.residual(e) = j.r[e];
    for (Eigen::Index k = 0; k < nout; ++k) {
      out.d_output(e, k) = j.dy[e][k];
      out.d_rate(e, k) = j.dyt[e][k];
    }
    for (Eigen::Index k = 0; k < np; ++k) out.d_params(e, k) = j.dp[e][k];
  }
  return out;
}

Eigen::VectorXd physics_residual(const SkillSpec& spec, std::span<const double> params,
                                 std::span<const double> raw_input,
                                 std::span<const double> output,
                                 std::span<const double> d_output_dt) {
  return physics_residual_jacobian(spec, params, raw_input, output, d_output_dt).residual;
}

double mean_squared_residual(const SkillSpec& spec, std::span<const double> params,
                             const Eigen::MatrixXd& raw_inputs, const Eigen::MatrixXd& values,
                             const Eigen::MatrixXd& rates) {
  require_physics(spec);
  if (raw_inputs.cols() == 0) throw std::invalid_argument("empty collocation set");
  check_point_dims(spec, params.size(), static_cast<std::size_t>(raw_inputs.rows()),
                   static_cast<std::size_t>(values.rows()), static_cast<std::size_t>(rates.rows()));
  double sum = 0.0;
  for (Eigen::Index c = 0; c < raw_inputs.cols(); ++c) {
    PointJet j;
    eval_jet(spec.kind, params.data(), raw_inputs.col(c).data(), values.col(c).data(),
             rates.col(c).data(), j);
    for (int e = 0; e < j.equations; ++e) sum += j.r[e] * j.r[e];
  }
  return sum / (static_cast<double>(raw_inputs.cols()) * static_cast<double>(spec.num_equations()));
}

double data_loss(const SkillModel& model, const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("data_loss on an empty dataset");
  const Eigen::MatrixXd pred = predict_batch(model, data.inputs);
  if (pred.rows() != data.targets.rows()) {
    throw std::invalid_argument("dataset targets do not match the model outputs");
  }
  return (pred - data.targets).squaredNorm() / static_cast<double>(pred.size());
}

double physics_loss(const SkillModel& model, const CollocationSet& colloc) {
  require_physics(model.spec);
  if (colloc.size() == 0) throw std::invalid_argument("physics_loss on an empty collocation set");
  const DirectionalBatch out = numerics::forward_directional_batch(
      model.net, model.normalize(colloc.points), model.time_direction());
  const std::vector<double> params = model.param_values();
  return mean_squared_residual(model.spec, params, colloc.points, out.value, out.derivative);
}

double total_loss(const SkillModel& model, const Dataset& data, const CollocationSet& colloc) {
  const double ld = data_loss(model, data);
  if (!model.spec.has_physics_loss) return ld;
  return ld + physics_loss(model, colloc);
}

PinnObjective::PinnObjective(SkillSpec spec, std::vector<FieldBounds> bounds, const Dataset& data,
                             const CollocationSet& colloc, bool use_physics)
    : spec_(std::move(spec)),
      bounds_(std::move(bounds)),
      use_physics_(use_physics && spec_.has_physics_loss),
      template_net_(numerics::skill_network_sizes(spec_.input_dim(), spec_.output_dim())) {
  if (data.empty()) throw std::invalid_argument("training requires a non-empty dataset");
  if (static_cast<std::size_t>(data.inputs.rows()) != spec_.input_dim() ||
      static_cast<std::size_t>(data.targets.rows()) != spec_.output_dim()) {
    throw std::invalid_argument("dataset does not match the " + std::string(spec_.name()) +
                                " schema");
  }
  data_inputs_ = normalize_inputs(bounds_, data.inputs);
  data_targets_ = data.targets;
  if (use_physics_) {
    if (colloc.size() == 0) throw std::invalid_argument("physics training needs collocation points");
    unknown_ = spec_.unknown_param_indices();
    colloc_raw_ = colloc.points;
    colloc_inputs_ = normalize_inputs(bounds_, colloc.points);
    direction_ = time_direction(spec_, bounds_);
  }
}

std::vector<double> PinnObjective::pack(const numerics::DenseNetwork& net) const {
  std::vector<double> p = net.flatten();
  for (std::size_t idx : unknown_) p.push_back(spec_.physical_params[idx].value);
  return p;
}

numerics::DenseNetwork PinnObjective::unpack_network(std::span<const double> p) const {
  numerics::DenseNetwork net = template_net_;
  net.assign(p.first(num_network_parameters()));
  return net;
}

std::vector<double> PinnObjective::unpack_params(std::span<const double> p) const {
  std::vector<double> values = spec_.param_values();
  for (std::size_t k = 0; k < unknown_.size(); ++k) {
    values[unknown_[k]] = p[num_network_parameters() + k];
  }
  return values;
}

double PinnObjective::operator()(std::span<const double> p, std::span<double> grad) const {
  const numerics::DenseNetwork net = unpack_network(p);
  const std::size_t n_net = num_network_parameters();
  const std::size_t n_extra = num_unknowns();

  const double data_w = 1.0 / static_cast<double>(data_targets_.size());
  const numerics::LossHead data_head = [&](const DirectionalBatch& out, Eigen::Index first,
                                           BatchAdjoint& adj, std::span<double>) {
    const Eigen::MatrixXd diff = out.value - data_targets_.middleCols(first, out.value.cols());
    adj.d_value = 2.0 * data_w * diff;
    return data_w * diff.squaredNorm();
  };
  double loss = numerics::accumulate_loss_gradient(net, data_inputs_, nullptr, data_head,
                                                   grad.first(n_net), {});
  for (std::size_t i = n_net; i < grad.size(); ++i) grad[i] = 0.0;
  if (!use_physics_) return loss;

  const std::vector<double> params = unpack_params(p);
  const double phys_w = 1.0 / (static_cast<double>(colloc_raw_.cols()) *
                               static_cast<double>(spec_.num_equations()));
  const numerics::LossHead phys_head = [&](const DirectionalBatch& out, Eigen::Index first,
                                           BatchAdjoint& adj, std::span<double> extra) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < out.value.cols(); ++c) {
      PointJet j;
      eval_jet(spec_.kind, params.data(), colloc_raw_.col(first + c).data(),
               out.value.col(c).data(), out.derivative.col(c).data(), j);
      for (int e = 0; e < j.equations; ++e) {
        const double w = 2.0 * phys_w * j.r[e];
        sum += j.r[e] * j.r[e];
        for (Eigen::Index k = 0; k < out.value.rows(); ++k) {
          adj.d_value(k, c) += w * j.dy[e][k];
          adj.d_derivative(k, c) += w * j.dyt[e][k];
        }
        for (std::size_t u = 0; u < unknown_.size(); ++u) extra[u] += w * j.dp[e][unknown_[u]];
      }
    }
    return phys_w * sum;
  };
  std::vector<double> phys_grad(n_net), extra_grad(n_extra);
  loss += numerics::accumulate_loss_gradient(net, colloc_inputs_, &direction_, phys_head,
                                             phys_grad, extra_grad);
  for (std::size_t i = 0; i < n_net; ++i) grad[i] += phys_grad[i];
  for (std::size_t u = 0; u < n_extra; ++u) grad[n_net + u] = extra_grad[u];
  return loss;
}

PinnObjective::Terms PinnObjective::terms(std::span<const double> p) const {
  SkillModel m;
  m.spec = spec_;
  m.net = unpack_network(p);
  m.bounds = bounds_;
  const std::vector<double> params = unpack_params(p);
  for (std::size_t i = 0; i < params.size(); ++i) m.spec.physical_params[i].value = params[i];
  Terms t;
  const Eigen::MatrixXd pred = numerics::forward_batch(m.net, data_inputs_);
  t.data = (pred - data_targets_).squaredNorm() / static_cast<double>(pred.size());
  if (use_physics_) {
    const DirectionalBatch out =
        numerics::forward_directional_batch(m.net, colloc_inputs_, direction_);
    t.physics = mean_squared_residual(spec_, params, colloc_raw_, out.value, out.derivative);
  }
  return t;
}

}  // namespace phyplan::skills
