#include "dgm/problems.hpp"

#include <cmath>

#include "dgm/error.hpp"

namespace dgm {

namespace {

void check_dim(std::size_t expected, ConstVec x, const char* what) {
  if (x.size() != expected)
    throw Error(ErrorKind::InvalidParameter,
                std::string(what) + ": state has dimension " + std::to_string(x.size()) +
                    ", expected " + std::to_string(expected));
}

void check_finite(ConstVec v, const char* what) {
  if (!all_finite(v)) throw Error(ErrorKind::NumericalFault, std::string(what) + " is not finite");
}

}  // namespace

double QuadraticForm::value(ConstVec x) const {
  const Vector mx = m * x;
  return 0.5 * dot(x, mx) + dot(b, x) + c;
}

Vector QuadraticForm::gradient(ConstVec x) const { return add(m * x, b); }

FirstIntegral FirstIntegral::from_quadratic(QuadraticForm q) {
  const std::size_t d = q.m.rows();
  if (!q.m.square() || q.b.size() != d)
    throw Error(ErrorKind::InvalidParameter, "quadratic form: M must be d×d and b of length d");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(q.m(i, j) - q.m(j, i)) > 1e-14)
        throw Error(ErrorKind::InvalidParameter, "quadratic form: M is not symmetric");

  FirstIntegral integral;
  integral.value = [q](ConstVec x) { return q.value(x); };
  integral.gradient = [q](ConstVec x) { return q.gradient(x); };
  integral.quadratic = std::move(q);
  return integral;
}

double CriticalPointPolicy::threshold(ConstVec x) const {
  return epsilon_crit >= 0.0 ? epsilon_crit : 1e-14 * (1.0 + norm(x));
}

Vector eval_field(const OdeProblem& p, ConstVec x, Cost* cost) {
  check_dim(p.dim, x, "eval_field");
  Vector fx = p.field(x);
  if (cost) ++cost->f_evals;
  check_finite(fx, "f(x)");
  return fx;
}

double eval_integral(const FirstIntegral& integral, ConstVec x, Cost* cost) {
  const double v = integral.value(x);
  if (cost) ++cost->integral_evals;
  if (!std::isfinite(v)) throw Error(ErrorKind::NumericalFault, "I(x) is not finite");
  return v;
}

Vector eval_gradient(const FirstIntegral& integral, ConstVec x, Cost* cost) {
  Vector g = integral.quadratic ? integral.quadratic->gradient(x) : integral.gradient(x);
  if (cost) ++cost->gradient_evals;
  check_finite(g, "i(x)");
  return g;
}

double eval_integral(const OdeProblem& p, ConstVec x, Cost* cost) {
  check_dim(p.dim, x, "eval_integral");
  return eval_integral(p.integral, x, cost);
}

Vector eval_gradient(const OdeProblem& p, ConstVec x, Cost* cost) {
  check_dim(p.dim, x, "eval_gradient");
  return eval_gradient(p.integral, x, cost);
}

std::pair<double, Vector> eval_integral_and_gradient(const OdeProblem& p, ConstVec x, Cost* cost) {
  check_dim(p.dim, x, "eval_integral_and_gradient");
  return {eval_integral(p.integral, x, cost), eval_gradient(p.integral, x, cost)};
}

OdeProblem rigid_body_modified(double i1, double i2, double i3, double alpha) {
  if (i1 == 0.0 || i2 == 0.0 || i3 == 0.0)
    throw Error(ErrorKind::InvalidParameter, "rigid_body_modified: moments of inertia must be nonzero");
  if (!std::isfinite(i1) || !std::isfinite(i2) || !std::isfinite(i3) || !std::isfinite(alpha))
    throw Error(ErrorKind::InvalidParameter, "rigid_body_modified: parameters must be finite");

  OdeProblem p;
  p.name = "rigid_body_modified";
  p.dim = 3;
  p.field = [i1, i2, i3, alpha](ConstVec x) {
    const double v1 = x[0] / i1, v2 = x[1] / i2, v3 = x[2] / i3;
    const double coupling = x[1] - alpha * x[0] * x[0];
    return Vector{-x[2] * v2 + coupling * v3,  //
                  x[2] * v1 - x[0] * v3,       //
                  -coupling * v1 + x[0] * v2};
  };
  QuadraticForm q;
  q.m = DenseMatrix::diagonal(Vector{1.0 / i1, 1.0 / i2, 1.0 / i3});
  q.b = Vector(3, 0.0);
  q.c = 0.0;
  p.integral = FirstIntegral::from_quadratic(std::move(q));
  return p;
}

OdeProblem harmonic_oscillator() {
  OdeProblem p;
  p.name = "harmonic_oscillator";
  p.dim = 2;
  p.field = [](ConstVec x) { return Vector{-x[1], x[0]}; };
  QuadraticForm q;
  q.m = DenseMatrix::identity(2);
  q.b = Vector(2, 0.0);
  p.integral = FirstIntegral::from_quadratic(std::move(q));
  return p;
}

Vector rigid_body_initial_state(double radius) {
  return Vector{radius * std::cos(1.1), 0.0, radius * std::sin(1.1)};
}

}  // namespace dgm
