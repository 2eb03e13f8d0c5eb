#include "dgm/skew.hpp"

#include <utility>

#include "dgm/error.hpp"

namespace dgm {

std::string_view to_string(GradientApprox a) noexcept {
  switch (a) {
    case GradientApprox::AtX: return "at_x";
    case GradientApprox::AtXPrime: return "at_x_prime";
    case GradientApprox::Average: return "average";
    case GradientApprox::AtMidpoint: return "at_midpoint";
    case GradientApprox::DiscreteGrad: return "discrete_grad";
    case GradientApprox::AtY: return "at_y";
    case GradientApprox::DgAtY: return "dg_at_y";
  }
  return "unknown";
}

GradientApprox parse_gradient_approx(std::string_view name) {
  for (auto a : {GradientApprox::AtX, GradientApprox::AtXPrime, GradientApprox::Average,
                 GradientApprox::AtMidpoint, GradientApprox::DiscreteGrad, GradientApprox::AtY,
                 GradientApprox::DgAtY})
    if (name == to_string(a)) return a;
  throw Error(ErrorKind::InvalidParameter, "unknown gradient approximation '" + std::string(name) + "'");
}

DenseMatrix skew_from(ConstVec f_val, ConstVec i_val, double denom) {
  const std::size_t d = f_val.size();
  DenseMatrix s(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) s(r, c) = (f_val[r] * i_val[c] - i_val[r] * f_val[c]) / denom;
  return s;
}

DenseMatrix default_skew(ConstVec f_val, ConstVec i_val) {
  if (f_val.size() != i_val.size())
    throw Error(ErrorKind::InvalidParameter, "default_skew: dimension mismatch");
  const double n2 = dot(i_val, i_val);
  if (n2 == 0.0) throw Error(ErrorKind::DegenerateGradient, "default_skew: i(x) = 0");
  return skew_from(f_val, i_val, n2);
}

namespace {

bool uses(const SkewConfig& cfg, GradientApprox a) {
  return cfg.i_tilde == a || cfg.i_hat == a || cfg.i_breve == a;
}

}  // namespace

SkewContext make_skew_context(const SkewConfig& cfg, const OdeProblem& problem, ConstVec x,
                              ConstVec f_tilde_val, double h, Cost* cost) {
  return make_skew_context(cfg, problem, x, eval_gradient(problem, x, cost), f_tilde_val, h, cost);
}

SkewContext make_skew_context(const SkewConfig& cfg, const OdeProblem& problem, ConstVec x,
                              Vector grad_x, ConstVec f_tilde_val, double h, Cost* cost) {
  if (!(h >= 0.0)) throw Error(ErrorKind::InvalidParameter, "discrete_skew: h must be nonnegative");
  if (!(cfg.denom_floor > 0.0 && cfg.denom_floor <= 1.0))
    throw Error(ErrorKind::InvalidParameter, "denom_floor must lie in (0, 1]");
  SkewContext ctx;
  ctx.x.assign(x.begin(), x.end());
  ctx.grad_x = std::move(grad_x);
  ctx.f_tilde.assign(f_tilde_val.begin(), f_tilde_val.end());
  ctx.h = h;
  ctx.y = axpy(x, h, f_tilde_val);
  if (uses(cfg, GradientApprox::AtY)) ctx.grad_y = eval_gradient(problem, ctx.y, cost);
  if (uses(cfg, GradientApprox::DgAtY))
    ctx.dg_x_y = discrete_gradient(cfg.dg_kind, problem.integral, x, ctx.y, cost);
  return ctx;
}

Vector gradient_approx(GradientApprox choice, const SkewConfig& cfg, const OdeProblem& problem,
                       const SkewContext& ctx, ConstVec xp, Cost* cost) {
  switch (choice) {
    case GradientApprox::AtX: return ctx.grad_x;
    case GradientApprox::AtXPrime: return eval_gradient(problem, xp, cost);
    case GradientApprox::Average:
      return scale(0.5, add(ctx.grad_x, eval_gradient(problem, xp, cost)));
    case GradientApprox::AtMidpoint:
      return eval_gradient(problem, scale(0.5, add(ctx.x, xp)), cost);
    case GradientApprox::DiscreteGrad:
      return discrete_gradient(cfg.dg_kind, problem.integral, ctx.x, xp, cost);
    case GradientApprox::AtY: return ctx.grad_y;
    case GradientApprox::DgAtY: return ctx.dg_x_y;
  }
  throw Error(ErrorKind::InvalidParameter, "invalid gradient approximation");
}

DiscreteSkew discrete_skew(const SkewConfig& cfg, const OdeProblem& problem, const SkewContext& ctx,
                           ConstVec xp, Cost* cost) {
  const double grad_norm2 = dot(ctx.grad_x, ctx.grad_x);
  if (CriticalPointPolicy{}.is_critical(ctx.x, ctx.grad_x))
    throw Error(ErrorKind::DegenerateGradient, "discrete_skew: x is a critical point of I");

  // One evaluation per distinct choice so that e.g. î = ĩ = at_x_prime
  // does not double the gradient count.
  auto eval = [&](GradientApprox a) { return gradient_approx(a, cfg, problem, ctx, xp, cost); };
  const Vector it = eval(cfg.i_tilde);
  const Vector ih = cfg.i_hat == cfg.i_tilde ? it : eval(cfg.i_hat);
  const Vector ib = cfg.i_breve == cfg.i_tilde ? it : cfg.i_breve == cfg.i_hat ? ih : eval(cfg.i_breve);

  const double denom = dot(ih, ib);
  if (!(denom > cfg.denom_floor * grad_norm2))
    throw Error(ErrorKind::StepRejected,
                "denominator of the discrete skew matrix fell below the floor; reduce h", denom);
  return {skew_from(ctx.f_tilde, it, denom), denom};
}

DiscreteSkew discrete_skew(const SkewConfig& cfg, const OdeProblem& problem, ConstVec f_tilde_val,
                           ConstVec x, ConstVec xp, double h) {
  const SkewContext ctx = make_skew_context(cfg, problem, x, f_tilde_val, h);
  return discrete_skew(cfg, problem, ctx, xp);
}

}  // namespace dgm
