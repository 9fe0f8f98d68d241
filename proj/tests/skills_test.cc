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

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "phyplan/numerics/autodiff.h"
#include "phyplan/skills/dataset.h"
#include "phyplan/skills/losses.h"
#include "phyplan/skills/predictor.h"
#include "phyplan/skills/skill_model.h"
#include "phyplan/skills/skill_spec.h"
#include "test_oracles.h"

using namespace phyplan::skills;
namespace to = testing_oracles;

namespace {

// Model whose network is the identity map on [-1, 1]-bounded inputs.
SkillModel identity_model(SkillKind kind, std::size_t dim) {
  SkillModel m;
  m.spec = build_skill(kind);
  m.net = phyplan::numerics::DenseNetwork({dim, dim});
  m.net.layer(0).weight = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim),
                                                    static_cast<Eigen::Index>(dim));
  m.bounds.assign(dim, FieldBounds{-1.0, 1.0});
  return m;
}

SkillModel random_model(SkillKind kind, std::uint64_t seed) {
  SkillModel m;
  m.spec = build_skill(kind);
  m.net = phyplan::numerics::xavier_init(
      phyplan::numerics::skill_network_sizes(m.spec.input_dim(), m.spec.output_dim()), seed);
  m.bounds = m.spec.input_bounds;
  return m;
}

Eigen::MatrixXd uniform_points(const std::vector<FieldBounds>& b, int n, unsigned seed) {
  return sample_collocation(b, n, seed).points;
}

}  // namespace

TEST_CASE("build_skill schemas") {
  const SkillSpec sw = build_skill(SkillKind::kSwinging);
  CHECK(sw.input_fields == std::vector<std::string>{"theta_init", "t_query"});
  CHECK(sw.output_fields == std::vector<std::string>{"theta", "omega"});
  CHECK(sw.has_physics_loss);
  REQUIRE(sw.unknown_param_indices().size() == 1);
  CHECK(sw.physical_params[sw.unknown_param_indices()[0]].name == "l");

  const SkillSpec sl = build_skill("sliding");
  CHECK(sl.input_fields == std::vector<std::string>{"v_init", "t_query"});
  CHECK(sl.output_fields == std::vector<std::string>{"x", "v"});
  CHECK(sl.time_index == 1u);

  const SkillSpec th = build_skill(SkillKind::kThrowing);
  CHECK(th.input_fields == std::vector<std::string>{"v_hor_init", "v_ver_init", "t_query"});
  CHECK(th.output_fields == std::vector<std::string>{"v_ver", "y", "x"});
  CHECK(th.num_equations() == 3);

  const SkillSpec bo = build_skill(SkillKind::kBouncing);
  CHECK(bo.input_dim() == 4);
  CHECK(bo.output_dim() == 2);
  CHECK_FALSE(bo.has_physics_loss);
  CHECK_FALSE(bo.time_index.has_value());

  const SkillSpec hi = build_skill(SkillKind::kHitting);
  CHECK(hi.input_fields == std::vector<std::string>{"m1", "m2", "v_init"});
  CHECK(hi.output_dim() == 1);
  CHECK_FALSE(hi.has_physics_loss);

  CHECK_THROWS_AS(build_skill("juggling"), std::invalid_argument);
  SkillSpec s = build_skill(SkillKind::kSliding);
  CHECK_THROWS_AS(s.set_param("l", 1.0, false), std::invalid_argument);
  s.set_param("mu", 0.4, false);
  CHECK(s.unknown_param_indices().empty());
  CHECK(s.param_values() == std::vector<double>{0.4});
}

TEST_CASE("residual of the friction closed form vanishes") {
  const SkillSpec spec = build_skill(SkillKind::kSliding);
  const double v0 = 2.0, mu = 0.1, t = 1.0;
  const auto y = to::slide(v0, mu, t);
  const std::vector<double> rate{y[1], -mu * to::kG};
  const Eigen::VectorXd r =
      physics_residual(spec, std::vector<double>{mu}, std::vector<double>{v0, t}, y, rate);
  CHECK(r.size() == 2);
  CHECK(r.lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("pendulum at equilibrium has zero residual") {
  const SkillSpec spec = build_skill(SkillKind::kSwinging);
  const Eigen::VectorXd r = physics_residual(spec, std::vector<double>{0.5},
                                             std::vector<double>{0.0, 0.3},
                                             std::vector<double>{0.0, 0.0},
                                             std::vector<double>{0.0, 0.0});
  CHECK(r.isZero(0.0));
}

TEST_CASE("residual of the projectile closed form vanishes") {
  const SkillSpec spec = build_skill(SkillKind::kThrowing);
  const double vh = 1.7, vv = 2.3, t = 0.4;
  const auto y = to::projectile(vh, vv, t);
  const std::vector<double> rate{-to::kG, y[0], vh};
  const Eigen::VectorXd r =
      physics_residual(spec, {}, std::vector<double>{vh, vv, t}, y, rate);
  CHECK(r.size() == 3);
  CHECK(r.lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("data-only skills have no residual") {
  const SkillSpec spec = build_skill(SkillKind::kBouncing);
  CHECK_THROWS_AS(physics_residual(spec, {}, std::vector<double>(4), std::vector<double>(2),
                                   std::vector<double>(2)),
                  std::invalid_argument);
}

TEST_CASE("oracle trajectories satisfy the residual at 1000 random points per skill") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SkillSpec sl = build_skill(SkillKind::kSliding);
  const SkillSpec th = build_skill(SkillKind::kThrowing);
  const SkillSpec sw = build_skill(SkillKind::kSwinging);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double mu = 0.05 + 0.5 * u(rng), v0 = 3.0 * u(rng);
    const double t = std::min(1.5, v0 / (mu * to::kG)) * u(rng);
    const auto ys = to::slide(v0, mu, t);
    worst = std::max(worst, physics_residual(sl, std::vector<double>{mu},
                                             std::vector<double>{v0, t}, ys,
                                             std::vector<double>{ys[1], -mu * to::kG})
                                .norm());

    const double vh = 5.0 * u(rng), vv = -5.0 + 9.0 * u(rng), tt = u(rng);
    const auto yt = to::projectile(vh, vv, tt);
    worst = std::max(worst, physics_residual(th, {}, std::vector<double>{vh, vv, tt}, yt,
                                             std::vector<double>{-to::kG, yt[0], vh})
                                .norm());

    const double l = 0.3 + 0.5 * u(rng), th0 = 1.5 * u(rng), tp = 0.5 * u(rng);
    const auto yp = to::pendulum(th0, l, tp, 1e-3);
    const std::vector<double> rate{yp[1], -to::kG / l * std::sin(yp[0])};
    worst = std::max(worst, physics_residual(sw, std::vector<double>{l},
                                             std::vector<double>{th0, tp}, yp, rate)
                                .norm());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("residual partial derivatives match finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (SkillKind kind : {SkillKind::kSwinging, SkillKind::kSliding, SkillKind::kThrowing}) {
    const SkillSpec spec = build_skill(kind);
    const std::size_t n_out = spec.output_dim();
    std::vector<double> params(spec.physical_params.size(), 0.0);
    for (double& p : params) p = 0.5 + 0.2 * u(rng);
    std::vector<double> raw(spec.input_dim()), y(n_out), yt(n_out);
    for (double& v : raw) v = u(rng);
    for (double& v : y) v = u(rng);
    for (double& v : yt) v = u(rng);
    const ResidualJacobian jac = physics_residual_jacobian(spec, params, raw, y, yt);
    const double h = 1e-6;
    auto check_column = [&](std::vector<double>& vec, std::size_t k, auto column) {
      const double keep = vec[k];
      vec[k] = keep + h;
      const Eigen::VectorXd up = physics_residual(spec, params, raw, y, yt);
      vec[k] = keep - h;
      const Eigen::VectorXd down = physics_residual(spec, params, raw, y, yt);
      vec[k] = keep;
      const Eigen::VectorXd fd = (up - down) / (2 * h);
      CHECK((fd - column).norm() < 1e-7);
    };
    CAPTURE(to_string(kind));
    for (std::size_t k = 0; k < n_out; ++k) {
      check_column(y, k, jac.d_output.col(static_cast<Eigen::Index>(k)));
      check_column(yt, k, jac.d_rate.col(static_cast<Eigen::Index>(k)));
    }
    for (std::size_t k = 0; k < params.size(); ++k) {
      check_column(params, k, jac.d_params.col(static_cast<Eigen::Index>(k)));
    }
  }
}

TEST_CASE("data_loss is the mean over rows and output components") {
  SkillModel m = identity_model(SkillKind::kSliding, 2);
  Dataset d;
  d.skill = SkillKind::kSliding;
  d.inputs = Eigen::MatrixXd::Random(2, 7);
  d.targets = d.inputs;
  CHECK(data_loss(m, d) == 0.0);

  m.net.layer(0).weight.setZero();
  d.inputs = Eigen::MatrixXd::Zero(2, 2);
  d.targets.resize(2, 2);
  d.targets << 1.0, 0.0,
               0.0, 2.0;
  CHECK(data_loss(m, d) == doctest::Approx(1.25).epsilon(1e-15));

  SkillModel h = identity_model(SkillKind::kHitting, 3);
  h.net = phyplan::numerics::DenseNetwork({3, 1});
  Dataset one;
  one.skill = SkillKind::kHitting;
  one.inputs = Eigen::MatrixXd::Zero(3, 1);
  one.targets = Eigen::MatrixXd::Ones(1, 1);
  CHECK(data_loss(h, one) == 1.0);

  Dataset empty;
  empty.inputs.resize(3, 0);
  empty.targets.resize(1, 0);
  CHECK_THROWS_AS(data_loss(h, empty), std::invalid_argument);
}

TEST_CASE("physics loss of analytic evaluators") {
  const SkillSpec spec = build_skill(SkillKind::kSliding);
  const double mu = 0.2;
  const Eigen::MatrixXd pts = uniform_points({{0.0, 3.0}, {0.0, 0.5}}, 400, 3);
  Eigen::MatrixXd values(2, pts.cols()), rates(2, pts.cols());
  for (Eigen::Index c = 0; c < pts.cols(); ++c) {
    const auto y = to::slide(pts(0, c), mu, pts(1, c));
    values.col(c) << y[0], y[1];
    rates.col(c) << y[1], -mu * to::kG;
  }
  const std::vector<double> params{mu};
  CHECK(mean_squared_residual(spec, params, pts, values, rates) < 1e-20);

  // Single point with zero residual.
  CHECK(mean_squared_residual(spec, params, pts.leftCols(1), values.leftCols(1),
                              rates.leftCols(1)) == 0.0);

  // Perturb the rates, then double the perturbation: the loss quadruples.
  const Eigen::MatrixXd delta = Eigen::MatrixXd::Random(2, pts.cols());
  const double l1 = mean_squared_residual(spec, params, pts, values, rates + delta);
  const double l2 = mean_squared_residual(spec, params, pts, values, rates + 2.0 * delta);
  CHECK(l2 == doctest::Approx(4.0 * l1).epsilon(1e-12));
  CHECK(l1 == doctest::Approx(delta.squaredNorm() / static_cast<double>(delta.size()))
                  .epsilon(1e-12));
}

TEST_CASE("total loss composition") {
  const SkillModel m = random_model(SkillKind::kThrowing, 11);
  const Dataset d = to::throwing_data(40, 8);
  const CollocationSet c = sample_collocation(m.spec.input_bounds, 160, 9);
  const double ld = data_loss(m, d);
  const double lp = physics_loss(m, c);
  CHECK(total_loss(m, d, c) == ld + lp);

  const SkillModel b = random_model(SkillKind::kBouncing, 12);
  Dataset bd;
  bd.skill = SkillKind::kBouncing;
  bd.inputs = uniform_points(b.spec.input_bounds, 10, 4);
  bd.targets = Eigen::MatrixXd::Random(2, 10);
  CHECK(total_loss(b, bd, CollocationSet{}) == data_loss(b, bd));
  CHECK_THROWS_AS(physics_loss(b, c), std::invalid_argument);
}

TEST_CASE("PINN objective gradient matches central differences") {
  std::mt19937_64 rng(17);
  for (SkillKind kind : {SkillKind::kSliding, SkillKind::kSwinging, SkillKind::kThrowing,
                         SkillKind::kBouncing}) {
    CAPTURE(to_string(kind));
    const SkillSpec spec = build_skill(kind);
    Dataset d;
    d.skill = kind;
    d.inputs = uniform_points(spec.input_bounds, 12, 21);
    d.targets = Eigen::MatrixXd::Random(static_cast<Eigen::Index>(spec.output_dim()), 12);
    const CollocationSet c = sample_collocation(spec.input_bounds, 20, 22);
    const PinnObjective obj(spec, spec.input_bounds, d, c, true);
    std::vector<double> p =
        obj.pack(phyplan::numerics::xavier_init(
            phyplan::numerics::skill_network_sizes(spec.input_dim(), spec.output_dim()), 3));
    std::vector<double> g(p.size());
    const double f = obj(p, g);
    CHECK(std::isfinite(f));

    std::vector<std::size_t> coords;
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    for (int i = 0; i < 60; ++i) coords.push_back(pick(rng));
    for (std::size_t i = obj.num_network_parameters(); i < p.size(); ++i) coords.push_back(i);
    std::vector<double> scratch(p.size());
    for (std::size_t i : coords) {
      const double h = 1e-6, keep = p[i];
      p[i] = keep + h;
      const double up = obj(p, scratch);
      p[i] = keep - h;
      const double down = obj(p, scratch);
      p[i] = keep;
      const double fd = (up - down) / (2 * h);
      CAPTURE(i);
      CHECK(std::abs(fd - g[i]) <= std::max(1e-4 * std::max(std::abs(fd), std::abs(g[i])), 1e-8));
    }
  }
}

TEST_CASE("objective terms add up to the objective value") {
  const SkillSpec spec = build_skill(SkillKind::kSliding);
  const Dataset d = to::sliding_data(30, 0.2, 4);
  const CollocationSet c = sample_collocation(spec.input_bounds, 120, 5);
  const PinnObjective obj(spec, spec.input_bounds, d, c, true);
  const auto p = obj.pack(phyplan::numerics::xavier_init(
      phyplan::numerics::skill_network_sizes(2, 2), 8));
  std::vector<double> g(p.size());
  const double f = obj(p, g);
  const auto t = obj.terms(p);
  CHECK(f == doctest::Approx(t.data + t.physics).epsilon(1e-12));
  CHECK(obj.num_unknowns() == 1);
  const PinnObjective data_only(spec, spec.input_bounds, d, c, false);
  CHECK(data_only.num_unknowns() == 0);
  CHECK(data_only(p, g) == doctest::Approx(t.data).epsilon(1e-12));
}

TEST_CASE("input normalization and time direction") {
  const std::vector<FieldBounds> b{{0.0, 3.0}, {0.0, 1.5}};
  Eigen::MatrixXd raw(2, 3);
  raw << 0.0, 1.5, 3.0,
         0.0, 0.75, 1.5;
  const Eigen::MatrixXd n = normalize_inputs(b, raw);
  CHECK(n(0, 0) == -1.0);
  CHECK(n(0, 1) == doctest::Approx(0.0));
  CHECK(n(1, 2) == 1.0);
  const Eigen::VectorXd dir = time_direction(build_skill(SkillKind::kSliding), b);
  CHECK(dir(0) == 0.0);
  CHECK(dir(1) == doctest::Approx(2.0 / 1.5));
  CHECK(time_direction(build_skill(SkillKind::kHitting), build_skill(SkillKind::kHitting).input_bounds)
            .isZero(0.0));
  CHECK_THROWS_AS(normalize_inputs({{1.0, 1.0}}, Eigen::MatrixXd::Zero(1, 1)),
                  std::invalid_argument);
}

TEST_CASE("predict places t_query and validates dimensions") {
  SkillModel m = identity_model(SkillKind::kThrowing, 3);
  const Eigen::VectorXd y = predict(m, std::vector<double>{0.25, -0.5}, 0.75);
  CHECK(y(0) == 0.25);
  CHECK(y(1) == -0.5);
  CHECK(y(2) == 0.75);
  CHECK_THROWS_AS(predict(m, std::vector<double>{0.25}, 0.5), std::invalid_argument);
}

TEST_CASE("dataset CSV round trip") {
  Dataset d = to::throwing_data(25, 3);
  d.provenance = {"oracle", 0.01, 77};
  std::stringstream ss;
  write_dataset_csv(ss, d);
  std::string first;
  std::getline(ss, first);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "v_hor_init,v_ver_init,t_query,v_ver,y,x");
  ss.seekg(0);
  const Dataset back = read_dataset_csv(ss, SkillKind::kThrowing);
  CHECK(back.inputs == d.inputs);
  CHECK(back.targets == d.targets);
  CHECK(back.provenance.generator == "oracle");
  CHECK(back.provenance.noise_sigma == 0.01);
  CHECK(back.provenance.seed == 77);

  ss.clear();
  ss.seekg(0);
  CHECK_THROWS_AS(read_dataset_csv(ss, SkillKind::kSliding), std::runtime_error);

  std::stringstream bad("v_init,t_query,x,v\n1,2,3\n");
  CHECK_THROWS_AS(read_dataset_csv(bad, SkillKind::kSliding), std::runtime_error);

  const auto path = std::filesystem::temp_directory_path() / "phyplan_dataset_test.csv";
  write_dataset_csv(path, d);
  const Dataset detected = read_dataset_csv(path);
  CHECK(detected.skill == SkillKind::kThrowing);
  CHECK(detected.inputs == d.inputs);
  std::filesystem::remove(path);
}

TEST_CASE("skill model file round trip preserves predictions bitwise") {
  SkillModel m = random_model(SkillKind::kSwinging, 31);
  m.learned_params["l"] = 0.4987;
  m.report = {1e-4, 2e-5, 123, "max_iterations"};
  std::stringstream ss;
  write_skill_model(ss, m);
  const SkillModel back = read_skill_model(ss);
  CHECK(back.spec.kind == SkillKind::kSwinging);
  CHECK(back.net == m.net);
  CHECK(back.bounds == m.bounds);
  CHECK(back.learned_params == m.learned_params);
  CHECK(back.report.iterations == 123);
  CHECK(back.report.status == "max_iterations");
  CHECK(back.param_values() == std::vector<double>{0.4987});
  const Eigen::MatrixXd pts = uniform_points(m.bounds, 50, 2);
  CHECK(predict_batch(back, pts) == predict_batch(m, pts));

  std::stringstream garbage("not a model at all");
  CHECK_THROWS_AS(read_skill_model(garbage), std::runtime_error);
}

TEST_CASE("model predictor routes and reports missing models") {
  ModelPredictor p;
  p.add(identity_model(SkillKind::kSliding, 2));
  CHECK(p.has(SkillKind::kSliding));
  CHECK_FALSE(p.has(SkillKind::kThrowing));
  const std::vector<double> times{0.1, 0.2, 0.3};
  const Eigen::MatrixXd series = p.predict_series(SkillKind::kSliding, std::vector<double>{0.5}, times);
  CHECK(series.cols() == 3);
  CHECK(series(1, 2) == doctest::Approx(0.3));
  CHECK_THROWS_AS(p.predict_instant(SkillKind::kSliding, std::vector<double>{0.5, 0.1}),
                  std::invalid_argument);

  const SkillKind want[] = {SkillKind::kHitting};
  try {
    ModelPredictor::load_directory("/nonexistent-dir", want);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("phyplan train --skill hitting") != std::string::npos);
  }
}
