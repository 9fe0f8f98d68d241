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

#include "phyplan/numerics/autodiff.h"

#include <cmath>
#include <stdexcept>

namespace phyplan::numerics {

class Tape {
 public:
  struct Node {
    int parent[2] = {-1, -1};
    double partial[2] = {0.0, 0.0};
  };

  Var variable(double value) {
    Var v;
    v.value_ = value;
    v.index_ = push({});
    v.tape_ = this;
    return v;
  }

  int push(const Node& node) {
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<double> adjoints(const Var& output) const {
    std::vector<double> adj(nodes_.size(), 0.0);
    if (output.index_ < 0) return adj;
    adj[static_cast<std::size_t>(output.index_)] = 1.0;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      const Node& n = nodes_[i];
      for (int p = 0; p < 2; ++p) {
        if (n.parent[p] >= 0) adj[static_cast<std::size_t>(n.parent[p])] += n.partial[p] * adj[i];
      }
    }
    return adj;
  }

 private:
  std::vector<Node> nodes_;
};

Var::Var(double constant) : value_(constant) {}

Var make_node(double value, const Var& a, double da) {
  Var out(value);
  if (a.tape_ == nullptr) return out;
  Tape::Node node;
  node.parent[0] = a.index_;
  node.partial[0] = da;
  out.tape_ = a.tape_;
  out.index_ = a.tape_->push(node);
  return out;
}

Var make_node(double value, const Var& a, double da, const Var& b, double db) {
  Var out(value);
  Tape* tape = a.tape_ != nullptr ? a.tape_ : b.tape_;
  if (tape == nullptr) return out;
  Tape::Node node;
  node.parent[0] = a.index_;
  node.partial[0] = da;
  node.parent[1] = b.index_;
  node.partial[1] = db;
  out.tape_ = tape;
  out.index_ = tape->push(node);
  return out;
}

Var operator+(const Var& a, const Var& b) { return make_node(a.value() + b.value(), a, 1.0, b, 1.0); }
Var operator-(const Var& a, const Var& b) { return make_node(a.value() - b.value(), a, 1.0, b, -1.0); }
Var operator*(const Var& a, const Var& b) {
  return make_node(a.value() * b.value(), a, b.value(), b, a.value());
}
Var operator/(const Var& a, const Var& b) {
  const double inv = 1.0 / b.value();
  return make_node(a.value() * inv, a, inv, b, -a.value() * inv * inv);
}
Var operator-(const Var& a) { return make_node(-a.value(), a, -1.0); }
Var& operator+=(Var& a, const Var& b) { return a = a + b; }
Var& operator-=(Var& a, const Var& b) { return a = a - b; }
Var& operator*=(Var& a, const Var& b) { return a = a * b; }

Var sin(const Var& a) { return make_node(std::sin(a.value()), a, std::cos(a.value())); }
Var cos(const Var& a) { return make_node(std::cos(a.value()), a, -std::sin(a.value())); }
Var tanh(const Var& a) {
  const double t = std::tanh(a.value());
  return make_node(t, a, 1.0 - t * t);
}
Var exp(const Var& a) {
  const double e = std::exp(a.value());
  return make_node(e, a, e);
}
Var log(const Var& a) { return make_node(std::log(a.value()), a, 1.0 / a.value()); }
Var sqrt(const Var& a) {
  const double s = std::sqrt(a.value());
  return make_node(s, a, 0.5 / s);
}
Var pow(const Var& a, double exponent) {
  return make_node(std::pow(a.value(), exponent), a,
                   exponent * std::pow(a.value(), exponent - 1.0));
}
Var square(const Var& a) { return make_node(a.value() * a.value(), a, 2.0 * a.value()); }

ValueAndGradient gradient(const TapeObjective& objective, std::span<const double> params) {
  Tape tape;
  std::vector<Var> inputs;
  inputs.reserve(params.size());
  for (double p : params) inputs.push_back(tape.variable(p));
  const Var out = objective(inputs);
  if (!std::isfinite(out.value())) throw std::domain_error("objective value is not finite");
  const std::vector<double> adj = tape.adjoints(out);
  ValueAndGradient result{out.value(), std::vector<double>(params.size(), 0.0)};
  // Inputs occupy the first params.size() tape slots.
  for (std::size_t i = 0; i < params.size(); ++i) result.gradient[i] = adj[i];
  return result;
}

ValueAndGradient gradient(const Objective& objective, std::span<const double> params) {
  ValueAndGradient result{0.0, std::vector<double>(params.size(), 0.0)};
  result.value = objective(params, result.gradient);
  if (!std::isfinite(result.value)) throw std::domain_error("objective value is not finite");
  return result;
}

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> params, double step) {
  std::vector<double> x(params.begin(), params.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    const double up = f(x);
    x[i] = saved - step;
    const double down = f(x);
    x[i] = saved;
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

}  // namespace phyplan::numerics
