#pragma once

#include <string_view>

#include "dgm/discrete_gradient.hpp"
#include "dgm/linalg.hpp"
#include "dgm/problems.hpp"

namespace dgm {

/// Consistent approximations of i(x) usable for ĩ, î and ĭ in
///
///   S̃(x, x′, h) = (f̃ ĩᵀ − ĩ f̃ᵀ) / (î · ĭ).
///
/// AtY and DgAtY use y = x + h f̃(x, h).
enum class GradientApprox {
  AtX,         // i(x)
  AtXPrime,    // i(x′)
  Average,     // ½ (i(x) + i(x′))
  AtMidpoint,  // i((x + x′)/2)
  DiscreteGrad,  // ī(x, x′)
  AtY,           // i(y)
  DgAtY,         // ī(x, y)
};

std::string_view to_string(GradientApprox a) noexcept;
/// at_x | at_x_prime | average | at_midpoint | discrete_grad | at_y | dg_at_y
GradientApprox parse_gradient_approx(std::string_view name);

struct SkewConfig {
  GradientApprox i_tilde = GradientApprox::AtX;
  GradientApprox i_hat = GradientApprox::AtX;
  GradientApprox i_breve = GradientApprox::DgAtY;
  DiscreteGradientKind dg_kind = DiscreteGradientKind::midpoint();
  /// δ: steps with î·ĭ ≤ δ |i(x)|² are rejected. Must lie in (0, 1].
  double denom_floor = 0.5;
};

/// S = (f iᵀ − i fᵀ) / |i|². Throws DegenerateGradient if i = 0.
DenseMatrix default_skew(ConstVec f_val, ConstVec i_val);

/// (f̃ ĩᵀ − ĩ f̃ᵀ) / denom
DenseMatrix skew_from(ConstVec f_val, ConstVec i_val, double denom);

struct DiscreteSkew {
  DenseMatrix s;
  double denom = 0.0;
};

/// Per-step quantities that do not depend on x′, computed once and reused
/// across fixed-point iterations. i(y) and ī(x, y) are only evaluated when
/// some choice in the config refers to them.
struct SkewContext {
  Vector x;
  Vector grad_x;  // i(x)
  Vector f_tilde;
  double h = 0.0;
  Vector y;          // x + h f̃
  Vector grad_y;     // i(y)
  Vector dg_x_y;     // ī(x, y)
};

SkewContext make_skew_context(const SkewConfig& cfg, const OdeProblem& problem, ConstVec x,
                              ConstVec f_tilde_val, double h, Cost* cost = nullptr);
/// Same, reusing an already evaluated i(x).
SkewContext make_skew_context(const SkewConfig& cfg, const OdeProblem& problem, ConstVec x,
                              Vector grad_x, ConstVec f_tilde_val, double h, Cost* cost = nullptr);

/// Evaluates one approximation at (x, x′, h).
Vector gradient_approx(GradientApprox choice, const SkewConfig& cfg, const OdeProblem& problem,
                       const SkewContext& ctx, ConstVec xp, Cost* cost = nullptr);

/// S̃(x, x′, h) with the configured choices, plus the raw denominator î·ĭ.
/// Throws DegenerateGradient when |i(x)| ≤ ε_crit and StepRejected
/// (value = denominator) when î·ĭ ≤ denom_floor · |i(x)|².
DiscreteSkew discrete_skew(const SkewConfig& cfg, const OdeProblem& problem, const SkewContext& ctx,
                           ConstVec xp, Cost* cost = nullptr);

/// Convenience overload that builds the context itself.
DiscreteSkew discrete_skew(const SkewConfig& cfg, const OdeProblem& problem, ConstVec f_tilde_val,
                           ConstVec x, ConstVec xp, double h);

}  // namespace dgm
