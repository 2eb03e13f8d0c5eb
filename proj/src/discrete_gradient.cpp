#include "dgm/discrete_gradient.hpp"

#include <cmath>
#include <numbers>

#include "dgm/error.hpp"

namespace dgm {

std::string_view to_string(DiscreteGradientKind::Type t) noexcept {
  switch (t) {
    case DiscreteGradientKind::Type::MidpointQuadratic: return "midpoint";
    case DiscreteGradientKind::Type::MeanValue: return "mean_value";
    case DiscreteGradientKind::Type::CoordinateIncrement: return "coordinate_increment";
  }
  return "unknown";
}

DiscreteGradientKind::Type parse_discrete_gradient(std::string_view name) {
  if (name == "midpoint") return DiscreteGradientKind::Type::MidpointQuadratic;
  if (name == "mean_value") return DiscreteGradientKind::Type::MeanValue;
  if (name == "coordinate_increment") return DiscreteGradientKind::Type::CoordinateIncrement;
  throw Error(ErrorKind::InvalidParameter, "unknown discrete gradient '" + std::string(name) + "'");
}

GaussLegendre gauss_legendre_unit(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "Gauss-Legendre rule needs at least one node");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton on P_n starting from the Chebyshev-like guess; roots are
  // symmetric so only half are computed.
  const int half = (n + 1) / 2;
  for (int k = 0; k < half; ++k) {
    double z = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    // [-1,1] -> [0,1]
    rule.nodes[k] = 0.5 * (1.0 - z);
    rule.nodes[n - 1 - k] = 0.5 * (1.0 + z);
    rule.weights[k] = 0.5 * w;
    rule.weights[n - 1 - k] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

namespace {

Vector midpoint_quadratic(const FirstIntegral& integral, ConstVec x, ConstVec xp, Cost* cost) {
  if (!integral.quadratic)
    throw Error(ErrorKind::UnsupportedIntegral, "midpoint discrete gradient requires a quadratic integral");
  // i((x + x′)/2) = ½ (i(x) + i(x′)) because i is affine.
  const Vector mid = scale(0.5, add(x, xp));
  if (cost) ++cost->gradient_evals;
  return integral.quadratic->gradient(mid);
}

Vector mean_value(const FirstIntegral& integral, int nodes, ConstVec x, ConstVec xp, Cost* cost) {
  const GaussLegendre rule = gauss_legendre_unit(nodes);
  const Vector dx = sub(xp, x);
  Vector acc(x.size(), 0.0);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const Vector g = eval_gradient(integral, axpy(x, rule.nodes[q], dx), cost);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += rule.weights[q] * g[k];
  }
  return acc;
}

Vector coordinate_increment(const FirstIntegral& integral, ConstVec x, ConstVec xp, Cost* cost) {
  const std::size_t d = x.size();
  Vector dg(d);
  // Staircase: point p_j = (x′₁..x′_j, x_{j+1}..x_d), p_0 = x.
  Vector prev(x.begin(), x.end());
  double value_prev = eval_integral(integral, prev, cost);
  for (std::size_t j = 0; j < d; ++j) {
    const double delta = xp[j] - x[j];
    Vector next = prev;
    next[j] = xp[j];
    if (std::abs(delta) < 1e-14 * (1.0 + std::abs(x[j]))) {
      // Limit of the quotient: ∂I/∂x_j at the mixed point with the j-th
      // coordinate at the midpoint.
      Vector mixed = prev;
      mixed[j] = 0.5 * (x[j] + xp[j]);
      dg[j] = eval_gradient(integral, mixed, cost)[j];
      value_prev = eval_integral(integral, next, cost);
    } else {
      const double value_next = eval_integral(integral, next, cost);
      dg[j] = (value_next - value_prev) / delta;
      value_prev = value_next;
    }
    prev = std::move(next);
  }
  return dg;
}

}  // namespace

Vector discrete_gradient(const DiscreteGradientKind& kind, const FirstIntegral& integral, ConstVec x,
                         ConstVec xp, Cost* cost) {
  if (x.size() != xp.size())
    throw Error(ErrorKind::InvalidParameter, "discrete_gradient: dimension mismatch");
  Vector dg;
  switch (kind.type) {
    case DiscreteGradientKind::Type::MidpointQuadratic:
      dg = midpoint_quadratic(integral, x, xp, cost);
      break;
    case DiscreteGradientKind::Type::MeanValue:
      dg = mean_value(integral, kind.quadrature_nodes, x, xp, cost);
      break;
    case DiscreteGradientKind::Type::CoordinateIncrement:
      dg = coordinate_increment(integral, x, xp, cost);
      break;
  }
  if (!all_finite(dg)) throw Error(ErrorKind::NumericalFault, "discrete gradient is not finite");
  return dg;
}

double verify_dg_identity(const DiscreteGradientKind& kind, const FirstIntegral& integral,
                          ConstVec x, ConstVec xp) {
  const Vector dg = discrete_gradient(kind, integral, x, xp);
  const double lhs = dot(dg, sub(xp, x));
  const double rhs = eval_integral(integral, xp) - eval_integral(integral, x);
  return std::abs(lhs - rhs);
}

}  // namespace dgm
