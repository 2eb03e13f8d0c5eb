#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "dgm/discrete_gradient.hpp"
#include "dgm/linalg.hpp"
#include "dgm/problems.hpp"
#include "dgm/runge_kutta.hpp"
#include "dgm/skew.hpp"

namespace dgm {

/// Fully determines a discrete gradient method instance.
struct DgMethodConfig {
  ButcherTableau tableau = rk4_classic();
  SkewConfig skew;  // carries the discrete gradient kind used for ī
  StageSolve stages;
  double fp_tol = 1e-13;  // relative: |z_{k+1} − z_k| ≤ fp_tol (1 + |x|)
  int fp_max_iter = 500;
  bool warm_start = false;  // z₀ = x + h f̃(x, h) instead of z₀ = x
  bool report_condition = false;  // fill StepOutcome::cond for dg_linear
  CriticalPointPolicy critical;

  const DiscreteGradientKind& dg_kind() const noexcept { return skew.dg_kind; }
  /// Throws InvalidParameter on a nonpositive tolerance or iteration cap.
  void validate() const;
};

struct ProjectionConfig {
  ButcherTableau tableau = rk4_classic();
  StageSolve stages;
  double newton_tol = 1e-12;  // relative on |I(x′) − I(x)|
  int newton_max_iter = 50;
  CriticalPointPolicy critical;
};

struct StepOutcome {
  Vector x_new;
  int iterations = 0;  // fixed-point or Newton iterations; 0 for one-shot steps
  double denom = 0.0;  // î·ĭ of the accepted step; 0 when not applicable
  std::optional<double> cond;  // condition number of the linearly implicit system
  bool critical = false;       // zero-gradient branch taken
  Cost cost;

  long f_evals() const noexcept { return cost.f_evals; }
  long i_evals() const noexcept { return cost.i_evals(); }
};

/// Solves x′ = x + h S̃(x, x′, h) ī(x, x′) by the contraction
/// z ← x + h S̃(x, z, h) ī(x, z). Returns x unchanged when x is critical.
/// Throws NonConvergence after fp_max_iter and StepRejected from the
/// denominator floor.
StepOutcome dg_step_fixed_point(const DgMethodConfig& cfg, const OdeProblem& problem, ConstVec x,
                                double h);

/// The linearly implicit method for quadratic I with an explicit tableau:
///
///   S̃(x, h) = (f̃ i(x)ᵀ − i(x) f̃ᵀ) / (i(x) · i(x + (h/2) f̃(x, h)))
///   (Id − (h/2) S̃ M) x′ = (Id + (h/2) S̃ M) x + h S̃ b
///
/// One LU solve, s f-evaluations and two gradient evaluations per step. The
/// ĩ/î/ĭ choices of the config are not consulted (they are fixed by the
/// method); the denominator floor is.
/// Throws UnsupportedIntegral when I is not quadratic or the configured
/// discrete gradient is not the midpoint one, InvalidParameter for an
/// implicit tableau, SingularStep and StepRejected.
StepOutcome dg_step_linearly_implicit(const DgMethodConfig& cfg, const OdeProblem& problem,
                                      ConstVec x, double h);

/// RK step y = x + h f̃(x, h) followed by projection onto {I = target}
/// along i(y) using the simplified Newton iteration for λ. The target
/// defaults to I(x); integrate() passes I(x0) so residuals do not accumulate.
StepOutcome projection_step(const ProjectionConfig& cfg, const OdeProblem& problem, ConstVec x,
                            double h, std::optional<double> target = std::nullopt);

/// Plain Runge–Kutta step wrapped as a StepOutcome.
StepOutcome rk_baseline_step(const ButcherTableau& tab, const OdeProblem& problem, ConstVec x,
                             double h, const StageSolve& stages = {});

/// Residual of the step equation, |x′ − x − h S̃(x, x′, h) ī(x, x′)|.
double step_residual(const DgMethodConfig& cfg, const OdeProblem& problem, ConstVec x, ConstVec xp,
                     double h);

/// The linear system of the linearly implicit step, before the
/// denominator floor is applied:
///   lhs = Id − (h/2) S̃ M,  rhs = (Id + (h/2) S̃ M) x + h S̃ b.
struct LinearStepSystem {
  DenseMatrix lhs;
  Vector rhs;
  double denom = 0.0;       // i(x) · i(x + (h/2) f̃)
  double grad_norm2 = 0.0;  // |i(x)|²
};

/// Throws UnsupportedIntegral without a quadratic form and
/// DegenerateGradient at a critical point.
LinearStepSystem linear_step_system(const DgMethodConfig& cfg, const OdeProblem& problem,
                                    ConstVec x, double h, Cost* cost = nullptr);

enum class MethodKind { DgFixedPoint, DgLinear, Projection, Rk };

std::string_view to_string(MethodKind m) noexcept;
/// dg_fixed_point | dg_linear | projection | rk
MethodKind parse_method(std::string_view name);

/// A step map bound to its configuration.
struct Stepper {
  MethodKind kind = MethodKind::DgLinear;
  DgMethodConfig dg;
  ProjectionConfig projection;

  /// `level` is the integral value the trajectory lives on; only the
  /// projection method uses it.
  StepOutcome step(const OdeProblem& problem, ConstVec x, double h,
                   std::optional<double> level = std::nullopt) const;
};

struct Trajectory {
  Vector times;
  std::vector<Vector> states;
  Vector integral_values;
  Cost cost;
  long steps() const noexcept { return static_cast<long>(times.size()) - 1; }
};

/// Applies the stepper n = round(t_end / h) times. t_end = 0 gives the
/// single node (0, x0). Step errors are rethrown with the failing index.
Trajectory integrate(const Stepper& stepper, const OdeProblem& problem, ConstVec x0, double h,
                     double t_end);

/// Constants of the local existence theorem for the fixed-point map:
/// Lipschitz constant L, ball parameter R (balls have radius |i(x)|/R), raw
/// step bound H and C1 with |f(x)| ≤ C1 |i(x)|.
struct BoundEstimates {
  double lipschitz = 0.0;
  double ball = 0.0;
  double step = 0.0;
  double c1 = 0.0;
};

struct StepBound {
  double r_prime = 0.0;
  double h_prime = 0.0;
};

/// R′ = max{R, 10L},
/// H′ = min{H, 1/(10L), 1/(6 C2 R′), 1/((36 C2 + 6) L)} with C2 = C1 + 1/5.
StepBound theoretical_step_bound(const BoundEstimates& est);

/// Empirical estimate of (L, C1) for the given method over the sample
/// states, with R and H supplied by the caller. L is the largest difference
/// quotient observed for f̃, ī and the configured ĩ/î/ĭ over random pairs in
/// the balls B_R(x) and for the consistency ratio |f̃(x,h) − f(x)|/(h|i(x)|)
/// over h ∈ (0, H). Not a rigorous bound.
BoundEstimates estimate_bounds(const DgMethodConfig& cfg, const OdeProblem& problem,
                               const std::vector<Vector>& samples, double ball, double step,
                               unsigned seed = 7, int pairs_per_sample = 20);

}  // namespace dgm
