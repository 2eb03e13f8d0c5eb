#pragma once

#include <string_view>

#include "dgm/linalg.hpp"
#include "dgm/problems.hpp"

namespace dgm {

/// Which discrete gradient ī(x, x′) to use. Every kind satisfies
///   ī(x, x′) · (x′ − x) = I(x′) − I(x),   ī(x, x) = i(x).
struct DiscreteGradientKind {
  enum class Type {
    /// ½ (i(x) + i(x′)); requires a quadratic integral, linear in x′.
    MidpointQuadratic,
    /// ∫₀¹ i(x + τ (x′ − x)) dτ by Gauss–Legendre quadrature. Exact when
    /// I is a polynomial of degree ≤ 2·nodes − 1.
    MeanValue,
    /// Itoh–Abe difference quotients along the staircase path that changes
    /// coordinates in index order 1..d.
    CoordinateIncrement,
  };

  Type type = Type::MidpointQuadratic;
  int quadrature_nodes = 3;

  static DiscreteGradientKind midpoint() { return {Type::MidpointQuadratic, 3}; }
  static DiscreteGradientKind mean_value(int nodes = 3) { return {Type::MeanValue, nodes}; }
  static DiscreteGradientKind coordinate_increment() { return {Type::CoordinateIncrement, 3}; }
};

std::string_view to_string(DiscreteGradientKind::Type t) noexcept;
DiscreteGradientKind::Type parse_discrete_gradient(std::string_view name);

/// ī(x, x′). Throws UnsupportedIntegral for MidpointQuadratic on an
/// integral without a quadratic form, InvalidParameter on dimension mismatch
/// or a nonpositive node count.
Vector discrete_gradient(const DiscreteGradientKind& kind, const FirstIntegral& integral, ConstVec x,
                         ConstVec xp, Cost* cost = nullptr);

/// |ī(x, x′) · (x′ − x) − (I(x′) − I(x))|
double verify_dg_identity(const DiscreteGradientKind& kind, const FirstIntegral& integral,
                          ConstVec x, ConstVec xp);

struct GaussLegendre {
  Vector nodes;    // on [0, 1]
  Vector weights;  // sum to 1
};

/// n-point Gauss–Legendre rule mapped to [0, 1].
GaussLegendre gauss_legendre_unit(int n);

}  // namespace dgm
