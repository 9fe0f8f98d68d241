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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include "phyplan/adapt/adaptive_loop.h"
#include "phyplan/adapt/gaussian_process.h"
#include "phyplan/adapt/grid_optimum.h"
#include "phyplan/bench/experiment.h"
#include "phyplan/bench/model_zoo.h"
#include "phyplan/bench/results_csv.h"
#include "phyplan/numerics/dense_network.h"
#include "phyplan/numerics/network_kernels.h"
#include "phyplan/numerics/random.h"
#include "phyplan/planner/mcts.h"
#include "phyplan/planner/rollout.h"
#include "phyplan/skills/losses.h"
#include "phyplan/skills/training.h"
#include "phyplan/worldsim/dataset_generation.h"
#include "phyplan/worldsim/oracle.h"
#include "phyplan/worldsim/simulator.h"

namespace {

using namespace phyplan;
using skills::SkillKind;
using worldsim::TaskKind;

constexpr double kG = 9.81;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct Models {
  std::shared_ptr<const skills::ModelPredictor> standard;
  std::shared_ptr<const skills::SkillPredictor> biased;  // sliding trained at mu = 0.3
};

// ---------------------------------------------------------------------------

Verdict criterion1() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_grad = 0.0, worst_jac = 0.0;
  int checked = 0;
  for (SkillKind kind : skills::kAllSkills) {
    const skills::SkillSpec spec = skills::build_skill(kind);
    const auto sizes = numerics::skill_network_sizes(spec.input_dim(), spec.output_dim());
    for (int c = 0; c < 100; ++c) {
      const std::uint64_t seed = numerics::derive_seed(1000 + static_cast<int>(kind), c);
      skills::Dataset d;
      d.skill = kind;
      d.inputs = skills::sample_collocation(spec.input_bounds, 8, seed).points;
      d.targets = Eigen::MatrixXd::NullaryExpr(static_cast<Eigen::Index>(spec.output_dim()), 8,
                                               [&] { return u(rng); });
      const skills::CollocationSet colloc =
          skills::sample_collocation(spec.input_bounds, 16, seed + 1);
      const skills::PinnObjective obj(spec, spec.input_bounds, d, colloc, true);
      const numerics::DenseNetwork net = numerics::xavier_init(sizes, seed + 2);
      std::vector<double> p = obj.pack(net);
      for (std::size_t i = obj.num_network_parameters(); i < p.size(); ++i) p[i] *= 1.0 + 0.5 * u(rng);
      std::vector<double> g(p.size()), scratch(p.size());
      obj(p, g);

      std::vector<std::size_t> coords;
      std::uniform_int_distribution<std::size_t> pick(0, obj.num_network_parameters() - 1);
      for (int i = 0; i < 8; ++i) coords.push_back(pick(rng));
      for (std::size_t i = obj.num_network_parameters(); i < p.size(); ++i) coords.push_back(i);
      for (std::size_t i : coords) {
        const double h = 1e-6, keep = p[i];
        p[i] = keep + h;
        const double up = obj(p, scratch);
        p[i] = keep - h;
        const double down = obj(p, scratch);
        p[i] = keep;
        const double fd = (up - down) / (2 * h);
        const double err = std::abs(fd - g[i]) / std::max(std::max(std::abs(fd), std::abs(g[i])), 1e-4);
        worst_grad = std::max(worst_grad, err);
        ++checked;
      }

      std::vector<double> x(spec.input_dim());
      for (double& v : x) v = u(rng);
      const numerics::GradientResult jr = numerics::forward_with_input_jacobian(net, x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = 1e-6, keep = x[i];
        x[i] = keep + h;
        const Eigen::VectorXd up = numerics::forward(net, x);
        x[i] = keep - h;
        const Eigen::VectorXd down = numerics::forward(net, x);
        x[i] = keep;
        for (Eigen::Index j = 0; j < up.size(); ++j) {
          const double fd = (up(j) - down(j)) / (2 * h);
          const double an = jr.input_jacobian(static_cast<Eigen::Index>(i), j);
          worst_jac = std::max(
              worst_jac, std::abs(fd - an) / std::max(std::max(std::abs(fd), std::abs(an)), 1e-4));
        }
      }
    }
  }
  return {worst_grad < 1e-4 && worst_jac < 1e-4,
          "worst relative gradient error " + fmt(worst_grad) + " over " + std::to_string(checked) +
              " coordinates, worst input jacobian error " + fmt(worst_jac)};
}

// ---------------------------------------------------------------------------

// Pendulum released from rest: sin(theta/2) = k sn(K - w t, k).
struct ExactPendulum {
  double theta, omega, omega_dot;
};

ExactPendulum exact_pendulum(double theta0, double l, double t) {
  const double k = std::sin(theta0 / 2.0), w = std::sqrt(kG / l);
  const double u = boost::math::ellint_1(k) - w * t;
  double cn = 0.0, dn = 0.0;
  const double sn = boost::math::jacobi_elliptic(k, u, &cn, &dn);
  return {2.0 * std::asin(k * sn), -2.0 * k * w * cn, -2.0 * k * w * w * sn * dn};
}

Verdict criterion2() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const skills::SkillSpec sl = skills::build_skill(SkillKind::kSliding);
  const skills::SkillSpec th = skills::build_skill(SkillKind::kThrowing);
  const skills::SkillSpec sw = skills::build_skill(SkillKind::kSwinging);
  double w_sl = 0.0, w_th = 0.0, w_sw = 0.0, w_rk4 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    worldsim::PhysicsParams pp;
    pp.mu = 0.05 + 0.6 * u(rng);
    const double v0 = 3.0 * u(rng);
    const double t = v0 / (pp.mu * kG) * u(rng);
    const Eigen::VectorXd ys = worldsim::oracle_predict(SkillKind::kSliding, pp, std::vector{v0}, t);
    const std::vector<double> rs{v0 - pp.mu * kG * t, -pp.mu * kG};
    w_sl = std::max(w_sl, skills::physics_residual(sl, std::vector{pp.mu}, std::vector{v0, t},
                                                   std::span(ys.data(), 2), rs)
                              .norm());

    const double vh = 5.0 * u(rng), vv = -6.0 + 10.0 * u(rng), tt = 1.5 * u(rng);
    const Eigen::VectorXd yt =
        worldsim::oracle_predict(SkillKind::kThrowing, pp, std::vector{vh, vv}, tt);
    const std::vector<double> rt{-kG, vv - kG * tt, vh};
    w_th = std::max(w_th, skills::physics_residual(th, {}, std::vector{vh, vv, tt},
                                                   std::span(yt.data(), 3), rt)
                              .norm());

    const double l = 0.2 + 0.8 * u(rng), th0 = 0.05 + 1.5 * u(rng), tp = 2.0 * u(rng);
    const ExactPendulum e = exact_pendulum(th0, l, tp);
    w_sw = std::max(w_sw, skills::physics_residual(sw, std::vector{l}, std::vector{th0, tp},
                                                   std::vector{e.theta, e.omega},
                                                   std::vector{e.omega, e.omega_dot})
                              .norm());
    pp.l = l;
    const Eigen::VectorXd yp =
        worldsim::oracle_predict(SkillKind::kSwinging, pp, std::vector{th0}, tp);
    w_rk4 = std::max(w_rk4, std::abs(yp(0) - e.theta));
  }
  const double worst = std::max({w_sl, w_th, w_sw});
  return {worst < 1e-10 && w_rk4 < 1e-6,
          "max residual sliding " + fmt(w_sl) + ", throwing " + fmt(w_th) + ", swinging " +
              fmt(w_sw) + "; simulator pendulum vs elliptic solution " + fmt(w_rk4)};
}

// ---------------------------------------------------------------------------

Verdict criterion3() {
  worldsim::PhysicsParams pp;
  pp.mu = 0.4;
  std::string detail;
  bool pass = true;
  for (const auto& [sigma, bound] : {std::pair{0.0, 0.02}, std::pair{0.01, 0.05}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const skills::Dataset d =
        worldsim::generate_dataset(SkillKind::kSliding, pp, 1000, {}, sigma, 404);
    numerics::LBFGSConfig cfg;
    cfg.max_iterations = skills::kIdentificationIterations;
    const skills::Identification r =
        skills::identify_parameter(skills::build_skill(SkillKind::kSliding), d, cfg, 5);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double err = std::abs(r.estimate.at("mu") - 0.4) / 0.4;
    pass = pass && err < bound && secs < 300.0;
    detail += (detail.empty() ? "" : "; ") + std::string("sigma=") + fmt(sigma) + " mu=" +
              fmt(r.estimate.at("mu")) + " error " + fmt(100 * err) + "% (bound " +
              fmt(100 * bound) + "%) in " + fmt(secs) + " s";
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------

Verdict criterion4() {
  constexpr int kIterations = 1500;
  bool pass = true;
  std::string detail;
  for (SkillKind kind : {SkillKind::kSliding, SkillKind::kThrowing}) {
    const skills::SkillSpec spec = skills::build_skill(kind);
    const skills::Dataset val = worldsim::generate_dataset(kind, {}, 1000, {}, 0.0, 77);
    for (int n : {25, 50, 100}) {
      std::vector<double> pinn, plain;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const skills::Dataset d = worldsim::generate_dataset(
            kind, {}, n, {}, 0.0, numerics::derive_seed(seed, 10 + static_cast<int>(kind)));
        const skills::CollocationSet colloc = skills::sample_collocation(
            spec.input_bounds, skills::kCollocationRatio * n, numerics::derive_seed(seed, 50));
        numerics::LBFGSConfig cfg;
        cfg.max_iterations = kIterations;
        pinn.push_back(skills::validation_mse(skills::train(spec, d, colloc, cfg, seed, true), val));
        plain.push_back(skills::validation_mse(skills::train(spec, d, colloc, cfg, seed, false), val));
      }
      const double mp = mean(pinn), md = mean(plain);
      pass = pass && mp <= md;
      detail += (detail.empty() ? "" : "; ") + std::string(skills::to_string(kind)) + " N=" +
                std::to_string(n) + " pinn " + fmt(mp) + " vs data-only " + fmt(md);
    }
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------

Verdict criterion5(const Models& m) {
  const worldsim::TaskDef task = worldsim::make_task(TaskKind::kBounce);
  bool pass = true;
  std::string detail;
  for (double theta_w : {0.4, 0.6, 0.8}) {
    double prev = -1.0;
    detail += (detail.empty() ? "" : "; ") + std::string("theta_w=") + fmt(theta_w) + ":";
    for (double h : {0.5, 0.75, 1.0}) {
      const planner::RolloutOutcome r =
          planner::skill_rollout(task, *m.standard, std::vector{h, theta_w});
      const double dist = (r.final_state.position.head<2>() - task.start_xy()).norm();
      pass = pass && dist > prev;
      prev = dist;
      detail += " " + fmt(dist);
    }
  }
  return {pass, "landing distance at h=0.5,0.75,1.0 " + detail};
}

// ---------------------------------------------------------------------------

Verdict criterion6() {
  const worldsim::TaskDef task = worldsim::make_task(TaskKind::kBounce);
  const worldsim::OracleSkillSet oracle(worldsim::PhysicsParams{});
  const double opt = adapt::grid_optimum(task, 200);
  std::vector<double> gaps;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    planner::PlannerConfig cfg;
    cfg.K = 10;
    cfg.D = 20;
    cfg.seed = seed;
    const planner::PlanResult r = planner::plan(task, oracle, nullptr, cfg);
    gaps.push_back(opt - worldsim::simulate_reward(task, r.best_action));
  }
  const double g = median(gaps);
  return {g <= 0.15, "grid optimum " + fmt(opt) + ", median gap to true reward " + fmt(g)};
}

// ---------------------------------------------------------------------------

std::map<std::string, double> mean_final_regret(const std::vector<bench::ResultRow>& rows) {
  std::map<std::string, std::vector<double>> finals;
  std::map<std::tuple<std::string, std::string, std::uint64_t>, double> last;
  for (const bench::ResultRow& r : rows) last[{r.task, r.agent, r.seed}] = r.regret;
  for (const auto& [key, regret] : last) {
    finals[std::get<0>(key) + "/" + std::get<1>(key)].push_back(regret);
  }
  std::map<std::string, double> out;
  for (const auto& [k, v] : finals) out[k] = mean(v);
  return out;
}

Verdict criterion7(const Models& m) {
  bench::ExperimentConfig cfg;
  cfg.tasks = {TaskKind::kSlide};
  cfg.agents = {bench::Agent::kPhyplan, bench::Agent::kPhyplanNoGp};
  cfg.num_attempts = 10;
  cfg.seeds = {1, 2, 3, 4, 5};
  const auto rows = bench::run_experiment(cfg, m.biased.get());
  const auto reg = mean_final_regret(rows);
  const double gp = reg.at("slide/phyplan"), nogp = reg.at("slide/phyplan_no_gp");
  return {gp < nogp, "mean regret after 10 attempts with GP-UCB " + fmt(gp) + ", without " +
                         fmt(nogp)};
}

// ---------------------------------------------------------------------------

Verdict criterion8(const Models& m) {
  bench::ExperimentConfig cfg;
  cfg.tasks.assign(std::begin(worldsim::kAllTasks), std::end(worldsim::kAllTasks));
  cfg.agents = {bench::Agent::kPhyplan, bench::Agent::kRandom};
  cfg.num_attempts = 20;
  cfg.seeds = {1, 2, 3, 4, 5};
  const auto reg = mean_final_regret(bench::run_experiment(cfg, m.standard.get()));
  bool pass = true;
  std::string detail;
  for (TaskKind k : worldsim::kAllTasks) {
    const std::string t(worldsim::to_string(k));
    const double p = reg.at(t + "/phyplan"), r = reg.at(t + "/random");
    pass = pass && p < r;
    detail += (detail.empty() ? "" : "; ") + t + " " + fmt(p) + " vs random " + fmt(r);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------

Verdict criterion9(const Models& m) {
  const worldsim::TaskDef task = worldsim::make_task(TaskKind::kBounce);
  const worldsim::OracleSkillSet slow(worldsim::PhysicsParams{}, worldsim::Fidelity::kNumeric);
  const double opt = adapt::grid_optimum(task);
  adapt::AdaptConfig cfg;
  cfg.planner.seed = 9;
  const auto plan_ms = [&](const skills::SkillPredictor& models) {
    std::vector<double> ms;
    for (const adapt::AttemptRecord& a : adapt::adaptive_loop(task, models, cfg, 10, opt).log) {
      ms.push_back(a.plan_ms);
    }
    return median(ms);
  };
  const double fast = plan_ms(*m.standard), slow_ms = plan_ms(slow);
  const double ratio = slow_ms / fast;
  return {ratio > 5.0, "median plan time skill models " + fmt(fast) + " ms, slow_oracle " +
                           fmt(slow_ms) + " ms, ratio " + fmt(ratio) + " (bound > 5)"};
}

// ---------------------------------------------------------------------------

std::string csv_without_timing(std::vector<bench::ResultRow> rows) {
  for (bench::ResultRow& r : rows) r.plan_ms = 0.0;
  std::ostringstream s;
  bench::write_results_csv(s, rows);
  return s.str();
}

Verdict criterion10(const Models& m) {
  bench::ExperimentConfig cfg;
  cfg.tasks.assign(std::begin(worldsim::kAllTasks), std::end(worldsim::kAllTasks));
  cfg.agents = {bench::Agent::kPhyplan, bench::Agent::kPhyplanNoGp, bench::Agent::kRandom};
  cfg.num_attempts = 5;
  cfg.seeds = {3, 4};
  cfg.planner.D = 10;
  cfg.planner.K = 4;
  const auto a = bench::run_experiment(cfg, m.standard.get());
  const auto b = bench::run_experiment(cfg, m.standard.get());
  const bool same = csv_without_timing(a) == csv_without_timing(b);

  bool monotone = true;
  std::map<std::tuple<std::string, std::string, std::uint64_t>, double> prev;
  for (const bench::ResultRow& r : a) {
    const auto key = std::tuple{r.task, r.agent, r.seed};
    const auto it = prev.find(key);
    if (it != prev.end() && r.regret > it->second) monotone = false;
    prev[key] = r.regret;
  }

  // Dense-inverse reference posterior.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  const adapt::GPHyperparameters hp;
  for (int n : {1, 10, 25, 50}) {
    std::vector<std::vector<double>> x(n, std::vector<double>(2));
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      for (double& c : x[i]) c = u(rng);
      y[i] = u(rng) - 0.5;
    }
    adapt::GaussianProcess gp(hp);
    gp.fit(x, y);
    const auto kern = [&](const std::vector<double>& p, const std::vector<double>& q) {
      const double d2 = (p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]);
      return hp.signal_variance * std::exp(-d2 / (2 * hp.lengthscale * hp.lengthscale));
    };
    Eigen::MatrixXd kk(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) kk(i, j) = kern(x[i], x[j]) + (i == j ? hp.noise_variance : 0.0);
    }
    const Eigen::MatrixXd inv = kk.inverse();
    const Eigen::VectorXd yy = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    for (int q = 0; q < 50; ++q) {
      const std::vector<double> a{u(rng), u(rng)};
      Eigen::VectorXd ks(n);
      for (int i = 0; i < n; ++i) ks(i) = kern(x[i], a);
      const double mu = ks.dot(inv * yy);
      const double sd = std::sqrt(std::max(0.0, kern(a, a) - ks.dot(inv * ks)));
      const adapt::GPPosterior p = gp.posterior(a);
      worst = std::max({worst, std::abs(p.mean - mu), std::abs(p.stddev - sd)});
    }
  }
  return {same && monotone && worst < 1e-8,
          std::string("repeat runs ") + (same ? "byte-identical" : "DIFFER") + " over " +
              std::to_string(a.size()) + " rows, regret curves " +
              (monotone ? "non-increasing" : "INCREASE") + ", GP vs dense reference " + fmt(worst)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::string models_dir = PHYPLAN_ACCEPTANCE_MODELS;
  std::set<int> only;
  app.add_option("--models", models_dir, "Cache directory for trained skill models");
  app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  const auto wanted = [&](int c) { return only.empty() || only.count(c) > 0; };

  Models models;
  const bool need_models =
      wanted(5) || wanted(7) || wanted(8) || wanted(9) || wanted(10);
  if (need_models) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SkillKind> all(std::begin(skills::kAllSkills), std::end(skills::kAllSkills));
    const std::filesystem::path root(models_dir);
    auto standard = std::make_shared<const skills::ModelPredictor>(
        bench::ensure_models(root / "standard", all, {}, {}, &std::cout));
    worldsim::PhysicsParams off;
    off.mu = 0.3;
    const std::vector<SkillKind> sliding{SkillKind::kSliding};
    auto biased_sliding = std::make_shared<const skills::ModelPredictor>(
        bench::ensure_models(root / "biased_mu0.3", sliding, off, {}, &std::cout));
    models.standard = standard;
    models.biased = std::make_shared<const skills::CompositePredictor>(biased_sliding, standard);
    std::cout << "setup: skill models ready in "
              << fmt(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())
              << " s (not counted against any criterion)\n";
  }

  struct Criterion {
    int id;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 60, criterion1},
      {2, 60, criterion2},
      {3, 600, criterion3},
      {4, 1200, criterion4},
      {5, 60, [&] { return criterion5(models); }},
      {6, 300, criterion6},
      {7, 600, [&] { return criterion7(models); }},
      {8, 1800, [&] { return criterion8(models); }},
      {9, 600, [&] { return criterion9(models); }},
      {10, 300, [&] { return criterion10(models); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!wanted(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = v.pass && in_time;
    if (!ok) ++failures;
    std::cout << "criterion " << c.id << (ok ? " PASS: " : " FAIL: ") << v.detail << " ["
              << fmt(secs) << " s of " << fmt(c.budget_s) << " s"
              << (in_time ? "" : ", over budget") << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
