#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "dgm/linalg.hpp"

namespace dgm {

/// Evaluation counters. `integral_evals` counts evaluations of I itself,
/// `gradient_evals` counts evaluations of i = ∇I; `i_evals()` is their sum.
struct Cost {
  long f_evals = 0;
  long integral_evals = 0;
  long gradient_evals = 0;
  long linear_solves = 0;
  long newton_iters = 0;
  long fp_iters = 0;
  long stage_iters = 0;

  long i_evals() const noexcept { return integral_evals + gradient_evals; }

  Cost& operator+=(const Cost& o) noexcept {
    f_evals += o.f_evals;
    integral_evals += o.integral_evals;
    gradient_evals += o.gradient_evals;
    linear_solves += o.linear_solves;
    newton_iters += o.newton_iters;
    fp_iters += o.fp_iters;
    stage_iters += o.stage_iters;
    return *this;
  }
  friend bool operator==(const Cost&, const Cost&) = default;
};

/// I(x) = ½ xᵀ M x + bᵀ x + c with M symmetric.
struct QuadraticForm {
  DenseMatrix m;
  Vector b;
  double c = 0.0;

  double value(ConstVec x) const;
  Vector gradient(ConstVec x) const;
};

struct FirstIntegral {
  std::function<double(ConstVec)> value;
  std::function<Vector(ConstVec)> gradient;
  std::optional<QuadraticForm> quadratic;

  /// Builds an integral whose value and gradient both come from `q`.
  /// Throws InvalidParameter if M is not symmetric to 1e-14 entrywise.
  static FirstIntegral from_quadratic(QuadraticForm q);
};

/// ẋ = f(x) with first integral I. Immutable once built; every evaluation
/// is a pure function so a problem can be shared between threads.
struct OdeProblem {
  std::string name;
  std::size_t dim = 0;
  std::function<Vector(ConstVec)> field;
  FirstIntegral integral;
};

/// Threshold on |i(x)| below which the step map returns x unchanged.
/// A negative `epsilon_crit` selects the default 1e-14 (1 + |x|).
struct CriticalPointPolicy {
  double epsilon_crit = -1.0;

  double threshold(ConstVec x) const;
  bool is_critical(ConstVec x, ConstVec grad) const { return norm(grad) <= threshold(x); }
};

/// Evaluates f(x), validating dimension and finiteness.
/// Throws InvalidParameter on dimension mismatch and NumericalFault on NaN/Inf.
Vector eval_field(const OdeProblem& p, ConstVec x, Cost* cost = nullptr);

double eval_integral(const OdeProblem& p, ConstVec x, Cost* cost = nullptr);
Vector eval_gradient(const OdeProblem& p, ConstVec x, Cost* cost = nullptr);

/// (I(x), i(x)); the gradient comes from M x + b when a quadratic form exists.
std::pair<double, Vector> eval_integral_and_gradient(const OdeProblem& p, ConstVec x,
                                                     Cost* cost = nullptr);

/// Same checks for bare integrals (used by the discrete gradients).
double eval_integral(const FirstIntegral& integral, ConstVec x, Cost* cost = nullptr);
Vector eval_gradient(const FirstIntegral& integral, ConstVec x, Cost* cost = nullptr);

/// Rigid body with the α x₁² coupling added to the skew matrix:
///
///   d/dt x = [ 0            -x3   x2 - α x1² ] [x1/I1]
///            [ x3            0   -x1         ] [x2/I2]
///            [ -x2 + α x1²   x1   0          ] [x3/I3]
///
/// with integral I(x) = ½ (x1²/I1 + x2²/I2 + x3²/I3). For α = 0 this is the
/// free rigid body, which additionally conserves ½|x|².
OdeProblem rigid_body_modified(double i1, double i2, double i3, double alpha);

/// f(x) = (-x2, x1), I(x) = ½|x|². Exact solution is a rotation.
OdeProblem harmonic_oscillator();

/// Initial state (cos 1.1, 0, sin 1.1) scaled by `radius`.
Vector rigid_body_initial_state(double radius = 1.0);

}  // namespace dgm
