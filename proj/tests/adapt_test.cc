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
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <doctest.h>

#include "phyplan/adapt/gaussian_process.h"

using namespace phyplan::adapt;

namespace {

// Textbook GP predictive equations with an explicit matrix inverse.
struct DenseGp {
  double ell, sf2, sn2;
  std::vector<std::vector<double>> x;
  std::vector<double> y;

  double k(const std::vector<double>& a, const std::vector<double>& b) const {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return sf2 * std::exp(-d2 / (2.0 * ell * ell));
  }

  std::pair<double, double> predict(const std::vector<double>& q) const {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd kk(n, n);
    Eigen::VectorXd ks(n), yy(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) kk(i, j) = k(x[i], x[j]) + (i == j ? sn2 : 0.0);
      ks(i) = k(x[i], q);
      yy(i) = y[i];
    }
    const Eigen::MatrixXd inv = kk.inverse();
    const double mean = ks.dot(inv * yy);
    const double var = k(q, q) - ks.dot(inv * ks);
    return {mean, std::sqrt(std::max(0.0, var))};
  }
};

}  // namespace

TEST_CASE("empty GP is the prior") {
  GaussianProcess gp;
  gp.fit({}, {});
  const std::vector<double> a{0.3, 0.8};
  const GPPosterior p = gp.posterior(a);
  CHECK(p.mean == 0.0);
  CHECK(p.stddev == doctest::Approx(1.0));
  CHECK(gp.ucb_correct(a, 0.4) == doctest::Approx(0.9));
}

TEST_CASE("single point interpolates with tiny noise") {
  GaussianProcess gp({0.2, 1.0, 1e-10, 0.25});
  gp.fit({{0.4}}, {0.3});
  const std::vector<double> a{0.4};
  const GPPosterior p = gp.posterior(a);
  CHECK(p.mean == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(p.stddev < 1e-4);
}

TEST_CASE("training targets recovered and matched by the dense reference") {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 5; ++i) {
    const double a = 0.1 + 0.2 * i;
    x.push_back({a});
    y.push_back(0.2 * std::sin(2.0 * std::numbers::pi * a));
  }
  GaussianProcess gp;
  gp.fit(x, y);
  const DenseGp ref{0.2, 1.0, 1e-4, x, y};
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(gp.posterior(x[i]).mean - y[i]) < 1e-3);
    CHECK(std::abs(gp.posterior(x[i]).mean - ref.predict(x[i]).first) < 1e-8);
  }
}

TEST_CASE("posterior agrees with the dense inverse on up to 50 points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n : {1, 7, 20, 50}) {
    for (int dim : {1, 2}) {
      std::vector<std::vector<double>> x(n, std::vector<double>(dim));
      std::vector<double> y(n);
      for (int i = 0; i < n; ++i) {
        for (double& c : x[i]) c = u(rng);
        y[i] = u(rng) - 0.5;
      }
      GaussianProcess gp;
      gp.fit(x, y);
      const DenseGp ref{0.2, 1.0, 1e-4, x, y};
      for (int q = 0; q < 40; ++q) {
        std::vector<double> a(dim);
        for (double& c : a) c = u(rng);
        const GPPosterior p = gp.posterior(a);
        const auto [m, s] = ref.predict(a);
        CHECK(std::abs(p.mean - m) < 1e-8);
        CHECK(std::abs(p.stddev - s) < 1e-8);
      }
    }
  }
}

TEST_CASE("far from the data the posterior returns to the prior") {
  GaussianProcess gp({0.05, 1.0, 1e-4, 0.25});
  gp.fit({{0.0, 0.0}}, {0.7});
  const std::vector<double> far{1.0, 1.0};
  const GPPosterior p = gp.posterior(far);
  CHECK(std::abs(p.mean) < 1e-12);
  CHECK(p.stddev == doctest::Approx(1.0));
}

TEST_CASE("symmetric data gives a mirrored posterior") {
  const double r = 0.4;
  // With the default lengthscale the two bumps add up past r at the midpoint.
  const GPHyperparameters h{0.1, 1.0, 1e-4, 0.25};
  GaussianProcess a(h), b(h);
  a.fit({{0.3}, {0.7}}, {r, r});
  b.fit({{0.7}, {0.3}}, {r, r});
  const std::vector<double> mid{0.5};
  const double ma = a.posterior(mid).mean;
  CHECK(ma > 0.0);
  CHECK(ma < r);
  CHECK(ma == doctest::Approx(b.posterior(mid).mean).epsilon(1e-12));
  const std::vector<double> l{0.4}, rr{0.6};
  CHECK(a.posterior(l).mean == doctest::Approx(a.posterior(rr).mean).epsilon(1e-12));
}

TEST_CASE("UCB correction") {
  GaussianProcess zero_beta({0.2, 1.0, 1e-4, 0.0});
  zero_beta.fit({{0.2}}, {0.1});
  const std::vector<double> q{0.35};
  CHECK(zero_beta.ucb_correct(q, 0.5) == 0.5 + zero_beta.posterior(q).mean);

  GaussianProcess gp({0.2, 1.0, 1e-8, 0.25});
  gp.fit({{0.5, 0.5}}, {-0.2});
  const std::vector<double> at{0.5, 0.5};
  CHECK(gp.ucb_correct(at, 0.7) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("std at training points never exceeds the prior std") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> x(30, std::vector<double>(2));
  std::vector<double> y(30);
  for (int i = 0; i < 30; ++i) {
    x[i] = {u(rng), u(rng)};
    y[i] = u(rng);
  }
  GaussianProcess gp;
  gp.fit(x, y);
  const std::vector<double> far{50.0, 50.0};
  const double prior = gp.posterior(far).stddev;
  for (const auto& a : x) {
    const double s = gp.posterior(a).stddev;
    CHECK(s >= 0.0);
    CHECK(s <= prior);
  }
}

TEST_CASE("invalid inputs are rejected") {
  GaussianProcess gp;
  CHECK_THROWS_AS(gp.fit({{0.1}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(gp.fit({{0.1}, {0.1, 0.2}}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(gp.fit({{NAN}}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(gp.fit({{0.1}}, {INFINITY}), std::invalid_argument);
  gp.fit({{0.1, 0.2}}, {0.0});
  const std::vector<double> bad{0.1};
  CHECK_THROWS_AS(gp.posterior(bad), std::invalid_argument);
  CHECK_THROWS_AS(GaussianProcess({0.0, 1.0, 1e-4, 0.25}), std::invalid_argument);
}
