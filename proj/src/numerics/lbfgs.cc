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

#include "phyplan/numerics/lbfgs.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace phyplan::numerics {
namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm1(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

double norm_inf(const Vec& a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

// Minimizer of the cubic interpolating (x1, f1, g1) and (x2, f2, g2), clamped
// to [lo, hi]; falls back to the midpoint when the cubic has no minimizer.
double cubic_minimizer(double x1, double f1, double g1, double x2, double f2, double g2,
                       double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  if (!std::isfinite(f1) || !std::isfinite(f2) || !std::isfinite(g1) || !std::isfinite(g2)) {
    return mid;
  }
  const double d1 = g1 + g2 - 3.0 * (f1 - f2) / (x1 - x2);
  const double d2_square = d1 * d1 - g1 * g2;
  if (d2_square < 0.0) return mid;
  const double d2 = std::sqrt(d2_square);
  double t;
  if (x1 <= x2) {
    t = x2 - (x2 - x1) * ((g2 + d2 - d1) / (g2 - g1 + 2.0 * d2));
  } else {
    t = x1 - (x1 - x2) * ((g1 + d2 - d1) / (g1 - g2 + 2.0 * d2));
  }
  if (!std::isfinite(t)) return mid;
  return std::clamp(t, lo, hi);
}

struct Probe {
  double t = 0.0;
  double f = 0.0;
  Vec g;
  double gtd = 0.0;
};

struct LineSearchOutcome {
  Probe best;
  int evaluations = 0;
  bool wolfe = false;
};

class StrongWolfe {
 public:
  StrongWolfe(const Objective& objective, const Vec& x, const Vec& d, const LBFGSConfig& cfg)
      : objective_(objective), x_(x), d_(d), cfg_(cfg), trial_(x.size()) {}

  LineSearchOutcome search(const Probe& origin, double t0) {
    LineSearchOutcome out;
    const double f0 = origin.f;
    const double gtd0 = origin.gtd;
    const double c1 = cfg_.wolfe_c1;
    const double c2 = cfg_.wolfe_c2;
    const int max_evals = cfg_.max_line_search_evaluations;
    const double d_norm = norm_inf(d_);

    // Armijo condition, or its approximate form once decreases fall below the
    // resolution of f: no increase and a derivative that still reports the
    // expected decrease.
    const double f_slack = 1e-12 * std::abs(f0);
    auto sufficient = [&](const Probe& p) {
      if (!std::isfinite(p.f)) return false;
      return p.f <= f0 + c1 * p.t * gtd0 ||
             (p.f <= f0 + f_slack && p.gtd <= (2.0 * c1 - 1.0) * gtd0);
    };
    auto armijo_fails = [&](const Probe& p, const Probe& ref) {
      return !sufficient(p) || p.f > ref.f + f_slack;
    };

    Probe prev = origin;
    Probe cur = evaluate(t0);
    int evals = 1;
    std::vector<Probe> bracket;
    bool done = false;

    while (evals < max_evals) {
      if (!sufficient(cur) || (evals > 1 && cur.f > prev.f + f_slack)) {
        bracket = {prev, cur};
        break;
      }
      if (std::abs(cur.gtd) <= -c2 * gtd0) {
        bracket = {cur};
        done = true;
        break;
      }
      if (cur.gtd >= 0.0) {
        bracket = {prev, cur};
        break;
      }
      const double lo = cur.t + 0.01 * (cur.t - prev.t);
      const double hi = cur.t * 10.0;
      const double next = cubic_minimizer(prev.t, prev.f, prev.gtd, cur.t, cur.f, cur.gtd, lo, hi);
      prev = std::move(cur);
      cur = evaluate(next);
      ++evals;
    }
    if (bracket.empty()) bracket = {origin, cur};

    bool insufficient_progress = false;
    auto order = [&](std::size_t& low, std::size_t& high) {
      if (bracket.size() == 1) {
        low = high = 0;
        return;
      }
      bool first_lower;
      if (!std::isfinite(bracket[1].f)) {
        first_lower = true;
      } else if (std::abs(bracket[0].f - bracket[1].f) <= f_slack) {
        // Values indistinguishable: the low end is the one whose slope points
        // into the bracket.
        first_lower = bracket[0].gtd * (bracket[1].t - bracket[0].t) < 0.0;
      } else {
        first_lower = bracket[0].f < bracket[1].f;
      }
      low = first_lower ? 0 : 1;
      high = first_lower ? 1 : 0;
    };
    std::size_t low = 0, high = 0;
    order(low, high);

    while (!done && evals < max_evals && bracket.size() == 2) {
      const double b_min = std::min(bracket[0].t, bracket[1].t);
      const double b_max = std::max(bracket[0].t, bracket[1].t);
      if ((b_max - b_min) * d_norm < 1e-15) break;
      double t = cubic_minimizer(bracket[0].t, bracket[0].f, bracket[0].gtd, bracket[1].t,
                                 bracket[1].f, bracket[1].gtd, b_min, b_max);
      // Keep trial points away from the bracket ends.
      const double eps = 0.1 * (b_max - b_min);
      if (std::min(b_max - t, t - b_min) < eps) {
        if (insufficient_progress || t >= b_max || t <= b_min) {
          t = std::abs(t - b_max) < std::abs(t - b_min) ? b_max - eps : b_min + eps;
          insufficient_progress = false;
        } else {
          insufficient_progress = true;
        }
      } else {
        insufficient_progress = false;
      }
      Probe p = evaluate(t);
      ++evals;
      if (armijo_fails(p, bracket[low])) {
        bracket[high] = std::move(p);
        order(low, high);
      } else {
        if (std::abs(p.gtd) <= -c2 * gtd0) {
          done = true;
        } else if (p.gtd * (bracket[high].t - bracket[low].t) >= 0.0) {
          bracket[high] = bracket[low];
        }
        bracket[low] = std::move(p);
        order(low, high);
      }
    }

    out.best = bracket[low];
    out.evaluations = evals;
    out.wolfe = done;
    return out;
  }

 private:
  Probe evaluate(double t) {
    for (std::size_t i = 0; i < x_.size(); ++i) trial_[i] = x_[i] + t * d_[i];
    Probe p;
    p.t = t;
    p.g.assign(x_.size(), 0.0);
    p.f = objective_(trial_, p.g);
    p.gtd = dot(p.g, d_);
    if (!std::isfinite(p.gtd)) p.f = std::numeric_limits<double>::infinity();
    return p;
  }

  const Objective& objective_;
  const Vec& x_;
  const Vec& d_;
  const LBFGSConfig& cfg_;
  Vec trial_;
};

}  // namespace

void LBFGSConfig::validate() const {
  if (memory < 1) throw std::invalid_argument("L-BFGS memory must be positive");
  if (max_iterations < 0) throw std::invalid_argument("L-BFGS max_iterations must be >= 0");
  if (gradient_tolerance < 0.0) throw std::invalid_argument("gradient_tolerance must be >= 0");
  if (!(initial_step > 0.0)) throw std::invalid_argument("initial_step must be positive");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(wolfe_c1 > 0.0 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0)) {
    throw std::invalid_argument("Wolfe constants must satisfy 0 < c1 < c2 < 1");
  }
  if (max_line_search_evaluations < 1) {
    throw std::invalid_argument("max_line_search_evaluations must be positive");
  }
}

std::string_view to_string(LBFGSStatus status) {
  switch (status) {
    case LBFGSStatus::kConverged: return "converged";
    case LBFGSStatus::kMaxIterations: return "max_iterations";
    case LBFGSStatus::kLineSearchFailed: return "line_search_failed";
    case LBFGSStatus::kNonFinite: return "non_finite";
  }
  return "unknown";
}

LBFGSResult lbfgs_minimize(const Objective& objective, std::vector<double> init,
                           const LBFGSConfig& cfg) {
  cfg.validate();
  LBFGSResult result;
  result.params = std::move(init);
  const std::size_t n = result.params.size();

  Vec g(n, 0.0);
  double f = objective(result.params, g);
  result.evaluations = 1;
  result.final_loss = f;
  result.final_gradient_norm = norm2(g);
  if (!std::isfinite(f) || !std::isfinite(result.final_gradient_norm)) {
    result.status = LBFGSStatus::kNonFinite;
    return result;
  }
  if (result.final_gradient_norm <= cfg.gradient_tolerance) {
    result.status = LBFGSStatus::kConverged;
    return result;
  }

  std::deque<Vec> s_hist, y_hist;
  std::deque<double> rho_hist;
  Vec d(n), q(n);
  result.status = LBFGSStatus::kMaxIterations;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    // Two-loop recursion: d = -H g.
    q = g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * dot(s_hist[i], q);
      for (std::size_t j = 0; j < n; ++j) q[j] -= alpha[i] * y_hist[i][j];
    }
    if (!s_hist.empty()) {
      const double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (double& v : q) v *= gamma;
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * dot(y_hist[i], q);
      for (std::size_t j = 0; j < n; ++j) q[j] += s_hist[i][j] * (alpha[i] - beta);
    }
    for (std::size_t j = 0; j < n; ++j) d[j] = -q[j];

    double gtd = dot(g, d);
    bool steepest = s_hist.empty();
    if (!(gtd < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t j = 0; j < n; ++j) d[j] = -g[j];
      gtd = -dot(g, g);
      steepest = true;
    }
    const double t0 =
        steepest ? cfg.learning_rate * std::min(1.0, 1.0 / norm1(g)) : cfg.initial_step;

    Probe origin{0.0, f, g, gtd};
    StrongWolfe line_search(objective, result.params, d, cfg);
    LineSearchOutcome ls = line_search.search(origin, t0);
    result.evaluations += ls.evaluations;
    const bool progress = ls.best.f < f || (ls.wolfe && ls.best.f <= f + 1e-12 * std::abs(f));
    if (!std::isfinite(ls.best.f) || !progress || ls.best.t == 0.0) {
      if (!steepest) {
        // Stale curvature pairs; retry from steepest descent before giving up.
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        continue;
      }
      result.status = LBFGSStatus::kLineSearchFailed;
      break;
    }

    Vec s(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = ls.best.t * d[j];
      y[j] = ls.best.g[j] - g[j];
    }
    const double sy = dot(s, y);
    if (sy > 1e-10 * dot(y, y) && sy > 0.0) {
      if (static_cast<int>(s_hist.size()) == cfg.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
    }

    for (std::size_t j = 0; j < n; ++j) result.params[j] += s[j];
    f = ls.best.f;
    g = std::move(ls.best.g);
    result.loss_history.push_back(f);
    result.iterations = iter + 1;
    result.final_loss = f;
    result.final_gradient_norm = norm2(g);
    if (!std::isfinite(result.final_gradient_norm)) {
      result.status = LBFGSStatus::kNonFinite;
      break;
    }
    if (result.final_gradient_norm <= cfg.gradient_tolerance) {
      result.status = LBFGSStatus::kConverged;
      break;
    }
  }
  return result;
}

}  // namespace phyplan::numerics
