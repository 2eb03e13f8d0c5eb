#include "dgm/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dgm/error.hpp"

namespace dgm {

void DgMethodConfig::validate() const {
  if (!(fp_tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "fp_tol must be positive");
  if (fp_max_iter < 1) throw Error(ErrorKind::InvalidParameter, "fp_max_iter must be at least 1");
  if (!(skew.denom_floor > 0.0 && skew.denom_floor <= 1.0))
    throw Error(ErrorKind::InvalidParameter, "denom_floor must lie in (0, 1]");
}

namespace {

void check_step_args(const OdeProblem& problem, ConstVec x, double h) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidParameter, "step size must be finite and >= 0");
  if (x.size() != problem.dim) throw Error(ErrorKind::InvalidParameter, "state dimension mismatch");
}

StepOutcome critical_outcome(ConstVec x, const Cost& cost) {
  StepOutcome out;
  out.x_new.assign(x.begin(), x.end());
  out.critical = true;
  out.cost = cost;
  return out;
}

}  // namespace

StepOutcome dg_step_fixed_point(const DgMethodConfig& cfg, const OdeProblem& problem, ConstVec x,
                                double h) {
  cfg.validate();
  check_step_args(problem, x, h);
  Cost cost;
  Vector grad_x = eval_gradient(problem, x, &cost);
  if (cfg.critical.is_critical(x, grad_x)) return critical_outcome(x, cost);

  const Vector ft = f_tilde(cfg.tableau, problem, x, h, cfg.stages, &cost);
  const SkewContext ctx = make_skew_context(cfg.skew, problem, x, std::move(grad_x), ft, h, &cost);
  const double tol = cfg.fp_tol * (1.0 + norm(x));

  Vector z = cfg.warm_start ? ctx.y : Vector(x.begin(), x.end());
  double change = 0.0;
  for (int k = 1; k <= cfg.fp_max_iter; ++k) {
    const DiscreteSkew sk = discrete_skew(cfg.skew, problem, ctx, z, &cost);
    const Vector dg = discrete_gradient(cfg.dg_kind(), problem.integral, x, z, &cost);
    Vector next = axpy(x, h, sk.s * dg);
    if (!all_finite(next)) throw Error(ErrorKind::NumericalFault, "fixed-point iterate is not finite");
    change = norm(sub(next, z));
    z = std::move(next);
    ++cost.fp_iters;
    if (change <= tol) {
      StepOutcome out;
      out.x_new = std::move(z);
      out.iterations = k;
      out.denom = sk.denom;
      out.cost = cost;
      return out;
    }
  }
  throw Error(ErrorKind::NonConvergence, "discrete gradient fixed-point iteration did not converge", change);
}

namespace {

void require_linear_method(const DgMethodConfig& cfg, const OdeProblem& problem) {
  if (!problem.integral.quadratic)
    throw Error(ErrorKind::UnsupportedIntegral, "linearly implicit step needs a quadratic integral");
  if (cfg.dg_kind().type != DiscreteGradientKind::Type::MidpointQuadratic)
    throw Error(ErrorKind::UnsupportedIntegral, "linearly implicit step needs the midpoint discrete gradient");
  if (!cfg.tableau.is_explicit())
    throw Error(ErrorKind::InvalidParameter, "linearly implicit step needs an explicit tableau");
}

LinearStepSystem assemble_linear_system(const DgMethodConfig& cfg, const OdeProblem& problem,
                                        ConstVec x, ConstVec grad_x, double h, Cost* cost) {
  const QuadraticForm& q = *problem.integral.quadratic;
  const Vector ft = f_tilde(cfg.tableau, problem, x, h, cfg.stages, cost);
  // ĭ = ī(x, y) = i(x + (h/2) f̃) for affine i.
  const Vector grad_mid = eval_gradient(problem, axpy(x, 0.5 * h, ft), cost);

  LinearStepSystem sys;
  sys.denom = dot(grad_x, grad_mid);
  sys.grad_norm2 = dot(grad_x, grad_x);
  const DenseMatrix s = skew_from(ft, grad_x, sys.denom);
  const DenseMatrix half_sm = (0.5 * h) * (s * q.m);
  const DenseMatrix id = DenseMatrix::identity(problem.dim);
  sys.lhs = id - half_sm;
  sys.rhs = axpy((id + half_sm) * x, h, s * q.b);
  return sys;
}

}  // namespace

LinearStepSystem linear_step_system(const DgMethodConfig& cfg, const OdeProblem& problem,
                                    ConstVec x, double h, Cost* cost) {
  require_linear_method(cfg, problem);
  check_step_args(problem, x, h);
  const Vector grad_x = eval_gradient(problem, x, cost);
  if (cfg.critical.is_critical(x, grad_x))
    throw Error(ErrorKind::DegenerateGradient, "linear_step_system: x is a critical point of I");
  return assemble_linear_system(cfg, problem, x, grad_x, h, cost);
}

StepOutcome dg_step_linearly_implicit(const DgMethodConfig& cfg, const OdeProblem& problem,
                                      ConstVec x, double h) {
  cfg.validate();
  check_step_args(problem, x, h);
  require_linear_method(cfg, problem);

  Cost cost;
  const Vector grad_x = eval_gradient(problem, x, &cost);
  if (cfg.critical.is_critical(x, grad_x)) return critical_outcome(x, cost);

  const LinearStepSystem sys = assemble_linear_system(cfg, problem, x, grad_x, h, &cost);
  if (!(sys.denom > cfg.skew.denom_floor * sys.grad_norm2))
    throw Error(ErrorKind::StepRejected,
                "denominator of the discrete skew matrix fell below the floor; reduce h", sys.denom);

  StepOutcome out;
  out.x_new = lu_solve(sys.lhs, sys.rhs);
  ++cost.linear_solves;
  if (!all_finite(out.x_new)) throw Error(ErrorKind::NumericalFault, "linear step produced a non-finite state");
  out.denom = sys.denom;
  if (cfg.report_condition) out.cond = condition_number(sys.lhs);
  out.cost = cost;
  return out;
}

StepOutcome projection_step(const ProjectionConfig& cfg, const OdeProblem& problem, ConstVec x,
                            double h, std::optional<double> target_level) {
  check_step_args(problem, x, h);
  if (!(cfg.newton_tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "newton_tol must be positive");
  Cost cost;
  const double target = target_level ? *target_level : eval_integral(problem, x, &cost);
  if (!std::isfinite(target)) throw Error(ErrorKind::InvalidParameter, "projection target must be finite");
  const Vector y = rk_step(cfg.tableau, problem, x, h, cfg.stages, &cost);
  const Vector g = eval_gradient(problem, y, &cost);
  if (cfg.critical.is_critical(y, g))
    throw Error(ErrorKind::DegenerateGradient, "projection direction i(y) vanishes");
  const double gg = dot(g, g);
  const double tol = cfg.newton_tol * (1.0 + std::abs(target));

  double lambda = 0.0;
  double residual = 0.0;
  for (int it = 0; it <= cfg.newton_max_iter; ++it) {
    Vector candidate = axpy(y, lambda, g);
    residual = eval_integral(problem, candidate, &cost) - target;
    // At least one correction is applied, as in the repeat-until form of
    // the projection algorithm.
    if (it > 0 && std::abs(residual) <= tol) {
      StepOutcome out;
      out.x_new = std::move(candidate);
      out.iterations = it;
      out.cost = cost;
      return out;
    }
    if (it == cfg.newton_max_iter) break;
    lambda -= residual / gg;
    ++cost.newton_iters;
  }
  throw Error(ErrorKind::NonConvergence, "projection Newton iteration did not converge", residual);
}

StepOutcome rk_baseline_step(const ButcherTableau& tab, const OdeProblem& problem, ConstVec x,
                             double h, const StageSolve& stages) {
  check_step_args(problem, x, h);
  StepOutcome out;
  out.x_new = rk_step(tab, problem, x, h, stages, &out.cost);
  return out;
}

double step_residual(const DgMethodConfig& cfg, const OdeProblem& problem, ConstVec x, ConstVec xp,
                     double h) {
  const Vector ft = f_tilde(cfg.tableau, problem, x, h, cfg.stages);
  const SkewContext ctx = make_skew_context(cfg.skew, problem, x, ft, h);
  const DiscreteSkew sk = discrete_skew(cfg.skew, problem, ctx, xp);
  const Vector dg = discrete_gradient(cfg.dg_kind(), problem.integral, x, xp);
  return norm(sub(xp, axpy(x, h, sk.s * dg)));
}

std::string_view to_string(MethodKind m) noexcept {
  switch (m) {
    case MethodKind::DgFixedPoint: return "dg_fixed_point";
    case MethodKind::DgLinear: return "dg_linear";
    case MethodKind::Projection: return "projection";
    case MethodKind::Rk: return "rk";
  }
  return "unknown";
}

MethodKind parse_method(std::string_view name) {
  for (auto m : {MethodKind::DgFixedPoint, MethodKind::DgLinear, MethodKind::Projection, MethodKind::Rk})
    if (name == to_string(m)) return m;
  throw Error(ErrorKind::InvalidParameter, "unknown method '" + std::string(name) + "'");
}

StepOutcome Stepper::step(const OdeProblem& problem, ConstVec x, double h,
                          std::optional<double> level) const {
  switch (kind) {
    case MethodKind::DgFixedPoint: return dg_step_fixed_point(dg, problem, x, h);
    case MethodKind::DgLinear: return dg_step_linearly_implicit(dg, problem, x, h);
    case MethodKind::Projection: return projection_step(projection, problem, x, h, level);
    case MethodKind::Rk: return rk_baseline_step(dg.tableau, problem, x, h, dg.stages);
  }
  throw Error(ErrorKind::InvalidParameter, "invalid method kind");
}

Trajectory integrate(const Stepper& stepper, const OdeProblem& problem, ConstVec x0, double h,
                     double t_end) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidParameter, "integrate: h must be positive");
  if (!(t_end >= 0.0)) throw Error(ErrorKind::InvalidParameter, "integrate: t_end must be nonnegative");
  if (x0.size() != problem.dim) throw Error(ErrorKind::InvalidParameter, "integrate: x0 dimension mismatch");
  const long n = std::lround(t_end / h);

  Trajectory traj;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.integral_values.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.states.emplace_back(x0.begin(), x0.end());
  traj.integral_values.push_back(eval_integral(problem, x0));

  for (long k = 0; k < n; ++k) {
    StepOutcome out;
    try {
      out = stepper.step(problem, traj.states.back(), h, traj.integral_values.front());
    } catch (const Error& e) {
      throw e.at_step(k);
    }
    traj.cost += out.cost;
    traj.times.push_back(static_cast<double>(k + 1) * h);
    traj.integral_values.push_back(eval_integral(problem, out.x_new));
    traj.states.push_back(std::move(out.x_new));
  }
  return traj;
}

StepBound theoretical_step_bound(const BoundEstimates& est) {
  if (!(est.lipschitz > 0.0 && est.ball > 0.0 && est.step > 0.0 && est.c1 > 0.0))
    throw Error(ErrorKind::InvalidParameter, "bound estimates must all be positive");
  const double l = est.lipschitz;
  const double c2 = est.c1 + 0.2;
  StepBound b;
  b.r_prime = std::max(est.ball, 10.0 * l);
  b.h_prime = std::min({est.step, 1.0 / (10.0 * l), 1.0 / (6.0 * c2 * b.r_prime),
                        1.0 / ((36.0 * c2 + 6.0) * l)});
  return b;
}

namespace {

Vector random_in_ball(std::mt19937_64& rng, ConstVec center, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector dir(center.size());
  for (double& v : dir) v = normal(rng);
  const double n = norm(dir);
  const double r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(center.size()));
  return axpy(center, n > 0.0 ? r / n : 0.0, dir);
}

double quotient(ConstVec a, ConstVec b, double denom) {
  return denom > 0.0 ? norm(sub(a, b)) / denom : 0.0;
}

}  // namespace

BoundEstimates estimate_bounds(const DgMethodConfig& cfg, const OdeProblem& problem,
                               const std::vector<Vector>& samples, double ball, double step,
                               unsigned seed, int pairs_per_sample) {
  if (!(ball > 0.0 && step > 0.0))
    throw Error(ErrorKind::InvalidParameter, "estimate_bounds: R and H must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& skew = cfg.skew;
  const GradientApprox choices[] = {skew.i_tilde, skew.i_hat, skew.i_breve};

  double lip = 0.0;
  double c1 = 0.0;
  for (const Vector& x : samples) {
    const Vector gx = eval_gradient(problem, x);
    const double gnorm = norm(gx);
    if (gnorm == 0.0) continue;
    c1 = std::max(c1, norm(eval_field(problem, x)) / gnorm);
    const double radius = gnorm / ball;

    for (int k = 0; k < pairs_per_sample; ++k) {
      const double h = step * unit(rng);
      const Vector u = random_in_ball(rng, x, radius);
      const Vector w = random_in_ball(rng, x, radius);
      const Vector v = random_in_ball(rng, x, radius);
      const double duw = norm(sub(u, w));

      const Vector fu = f_tilde(cfg.tableau, problem, u, h, cfg.stages);
      const Vector fw = f_tilde(cfg.tableau, problem, w, h, cfg.stages);
      lip = std::max(lip, quotient(fu, fw, duw));

      const auto& kind = cfg.dg_kind();
      lip = std::max(lip, quotient(discrete_gradient(kind, problem.integral, u, v),
                                   discrete_gradient(kind, problem.integral, w, v), duw));
      lip = std::max(lip, quotient(discrete_gradient(kind, problem.integral, v, u),
                                   discrete_gradient(kind, problem.integral, v, w), duw));

      const SkewContext cu = make_skew_context(skew, problem, u, fu, h);
      const SkewContext cw = make_skew_context(skew, problem, w, fw, h);
      const Vector fx = f_tilde(cfg.tableau, problem, x, h, cfg.stages);
      const SkewContext cx = make_skew_context(skew, problem, x, fx, h);
      for (GradientApprox a : choices) {
        // Lipschitz in the first and second argument.
        lip = std::max(lip, quotient(gradient_approx(a, skew, problem, cu, v),
                                     gradient_approx(a, skew, problem, cw, v), duw));
        lip = std::max(lip, quotient(gradient_approx(a, skew, problem, cx, u),
                                     gradient_approx(a, skew, problem, cx, w), duw));
        // |ĩ(x, x, h) − i(x)| ≤ L h |i(x)|
        if (h > 0.0)
          lip = std::max(lip, norm(sub(gradient_approx(a, skew, problem, cx, x), gx)) / (h * gnorm));
      }
      if (h > 0.0) lip = std::max(lip, norm(sub(fx, eval_field(problem, x))) / (h * gnorm));
    }
  }
  if (!(lip > 0.0) || !(c1 > 0.0))
    throw Error(ErrorKind::InvalidParameter, "estimate_bounds: samples carry no information");
  return {lip, ball, step, c1};
}

}  // namespace dgm
