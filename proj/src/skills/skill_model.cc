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

#include "phyplan/skills/skill_model.h"

#include <fstream>
#include <stdexcept>
#include <string>

#include "phyplan/numerics/network_kernels.h"
#include "phyplan/numerics/serialization.h"

namespace phyplan::skills {

namespace wire = numerics::wire;

Eigen::MatrixXd normalize_inputs(const std::vector<FieldBounds>& bounds, const Eigen::MatrixXd& raw) {
  if (static_cast<std::size_t>(raw.rows()) != bounds.size()) {
    throw std::invalid_argument("input rows " + std::to_string(raw.rows()) + " != bounds " +
                                std::to_string(bounds.size()));
  }
  Eigen::MatrixXd out(raw.rows(), raw.cols());
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    const FieldBounds& b = bounds[static_cast<std::size_t>(i)];
    if (!(b.hi > b.lo)) throw std::invalid_argument("degenerate normalization bounds");
    const double scale = 2.0 / b.width();
    out.row(i) = ((raw.row(i).array() - b.lo) * scale - 1.0).matrix();
  }
  return out;
}

Eigen::VectorXd time_direction(const SkillSpec& spec, const std::vector<FieldBounds>& bounds) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.input_dim()));
  if (spec.time_index) {
    const std::size_t t = *spec.time_index;
    d(static_cast<Eigen::Index>(t)) = 2.0 / bounds.at(t).width();
  }
  return d;
}

Eigen::MatrixXd SkillModel::normalize(const Eigen::MatrixXd& raw) const {
  return normalize_inputs(bounds, raw);
}

Eigen::VectorXd SkillModel::time_direction() const { return skills::time_direction(spec, bounds); }

std::vector<double> SkillModel::param_values() const {
  std::vector<double> v = spec.param_values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto it = learned_params.find(spec.physical_params[i].name);
    if (it != learned_params.end()) v[i] = it->second;
  }
  return v;
}

Eigen::VectorXd predict(const SkillModel& model, std::span<const double> init, double t) {
  const std::size_t free_dims = model.spec.input_dim() - (model.spec.time_index ? 1 : 0);
  if (init.size() != free_dims) {
    throw std::invalid_argument("skill " + std::string(model.spec.name()) + " expects " +
                                std::to_string(free_dims) + " initial values, got " +
                                std::to_string(init.size()));
  }
  Eigen::MatrixXd raw(static_cast<Eigen::Index>(model.spec.input_dim()), 1);
  std::size_t k = 0;
  for (std::size_t i = 0; i < model.spec.input_dim(); ++i) {
    raw(static_cast<Eigen::Index>(i), 0) =
        (model.spec.time_index && *model.spec.time_index == i) ? t : init[k++];
  }
  return predict_batch(model, raw).col(0);
}

Eigen::MatrixXd predict_batch(const SkillModel& model, const Eigen::MatrixXd& raw_inputs) {
  return numerics::forward_batch(model.net, model.normalize(raw_inputs));
}

double validation_mse(const SkillModel& model, const Dataset& data) {
  if (data.skill != model.spec.kind) {
    throw std::invalid_argument("dataset skill does not match the model");
  }
  if (data.empty()) throw std::invalid_argument("empty validation dataset");
  const Eigen::MatrixXd err = predict_batch(model, data.inputs) - data.targets;
  return err.squaredNorm() / static_cast<double>(err.size());
}

void write_skill_model(std::ostream& out, const SkillModel& model) {
  std::vector<numerics::NamedValue> named;
  for (const auto& [name, value] : model.learned_params) named.push_back({name, value});
  numerics::write_network(out, model.net, named);
  wire::put_string(out, model.spec.name());
  wire::put_u8(out, model.spec.has_physics_loss ? 1 : 0);
  wire::put_u32(out, static_cast<std::uint32_t>(model.bounds.size()));
  for (const FieldBounds& b : model.bounds) {
    wire::put_f64(out, b.lo);
    wire::put_f64(out, b.hi);
  }
  wire::put_f64(out, model.report.data_loss);
  wire::put_f64(out, model.report.physics_loss);
  wire::put_u32(out, static_cast<std::uint32_t>(model.report.iterations));
  wire::put_string(out, model.report.status);
  if (!out) throw std::runtime_error("failed writing skill model");
}

void save_skill_model(const std::filesystem::path& path, const SkillModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_skill_model(out, model);
}

SkillModel read_skill_model(std::istream& in) {
  numerics::NetworkRecord record = numerics::read_network(in);
  SkillModel m;
  m.spec = build_skill(wire::get_string(in));
  m.spec.has_physics_loss = wire::get_u8(in) != 0;
  const std::uint32_t nb = wire::get_u32(in);
  if (nb != m.spec.input_dim()) throw std::runtime_error("skill model bounds do not match schema");
  m.bounds.resize(nb);
  for (FieldBounds& b : m.bounds) {
    b.lo = wire::get_f64(in);
    b.hi = wire::get_f64(in);
  }
  m.report.data_loss = wire::get_f64(in);
  m.report.physics_loss = wire::get_f64(in);
  m.report.iterations = static_cast<int>(wire::get_u32(in));
  m.report.status = wire::get_string(in);
  if (record.net.input_dim() != m.spec.input_dim() ||
      record.net.output_dim() != m.spec.output_dim()) {
    throw std::runtime_error("network shape does not match the " + std::string(m.spec.name()) +
                             " schema");
  }
  m.net = std::move(record.net);
  for (const auto& nv : record.named_values) {
    m.spec.param_index(nv.name);
    m.learned_params[nv.name] = nv.value;
  }
  return m;
}

SkillModel load_skill_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open skill model " + path.string());
  return read_skill_model(in);
}

}  // namespace phyplan::skills
