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

#ifndef PHYPLAN_NUMERICS_AUTODIFF_H_
#define PHYPLAN_NUMERICS_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace phyplan::numerics {

// Minimal tape-based reverse-mode differentiation for scalar objectives of a
// flat parameter vector. Each gradient() call owns one tape; Vars are only
// valid inside the objective callback.
class Tape;

class Var {
 public:
  Var() = default;
  Var(double constant);  // NOLINT: implicit lift of constants

  double value() const { return value_; }

 private:
  friend class Tape;
  friend Var make_node(double value, const Var& a, double da);
  friend Var make_node(double value, const Var& a, double da, const Var& b, double db);

  double value_ = 0.0;
  int index_ = -1;  // -1 marks a constant
  Tape* tape_ = nullptr;
};

Var operator+(const Var& a, const Var& b);
Var operator-(const Var& a, const Var& b);
Var operator*(const Var& a, const Var& b);
Var operator/(const Var& a, const Var& b);
Var operator-(const Var& a);
Var& operator+=(Var& a, const Var& b);
Var& operator-=(Var& a, const Var& b);
Var& operator*=(Var& a, const Var& b);

Var sin(const Var& a);
Var cos(const Var& a);
Var tanh(const Var& a);
Var exp(const Var& a);
Var log(const Var& a);
Var sqrt(const Var& a);
Var pow(const Var& a, double exponent);
Var square(const Var& a);

using TapeObjective = std::function<Var(std::span<const Var> params)>;

// Callback form: writes the gradient into `grad` and returns the value.
using Objective = std::function<double(std::span<const double> params, std::span<double> grad)>;

struct ValueAndGradient {
  double value = 0.0;
  std::vector<double> gradient;
};

// Reverse-mode gradient of a tape objective. Throws std::domain_error when
// the objective value is not finite.
ValueAndGradient gradient(const TapeObjective& objective, std::span<const double> params);

// Evaluates an objective that supplies its own gradient, with the same
// finiteness check.
ValueAndGradient gradient(const Objective& objective, std::span<const double> params);

// Central finite differences of a value-only function; used by tests and
// diagnostics.
std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> params, double step);

}  // namespace phyplan::numerics

#endif  // PHYPLAN_NUMERICS_AUTODIFF_H_
