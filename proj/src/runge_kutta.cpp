#include "dgm/runge_kutta.hpp"

#include <cmath>
#include <utility>

#include "dgm/error.hpp"

namespace dgm {

ButcherTableau::ButcherTableau(std::string name, DenseMatrix a, Vector b, int claimed_order)
    : name_(std::move(name)), a_(std::move(a)), b_(std::move(b)), claimed_order_(claimed_order) {
  const std::size_t s = b_.size();
  if (s == 0) throw Error(ErrorKind::InvalidParameter, "tableau needs at least one stage");
  if (a_.rows() != s || a_.cols() != s)
    throw Error(ErrorKind::InvalidParameter, "tableau: A must be s×s with s = len(b)");
  if (!a_.all_finite() || !all_finite(b_))
    throw Error(ErrorKind::InvalidParameter, "tableau: coefficients must be finite");
  if (claimed_order_ < 1) throw Error(ErrorKind::InvalidParameter, "tableau: claimed order must be positive");
  double sum = 0.0;
  for (double bi : b_) sum += bi;
  if (std::abs(sum - 1.0) > 1e-14)
    throw Error(ErrorKind::InvalidParameter, "tableau '" + name_ + "' is not consistent (sum of b != 1)",
                sum);
  explicit_ = true;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j)
      if (a_(i, j) != 0.0) explicit_ = false;
}

ButcherTableau rk4_classic() {
  return ButcherTableau("rk4",
                        DenseMatrix::from_rows({{0.0, 0.0, 0.0, 0.0},
                                                {0.5, 0.0, 0.0, 0.0},
                                                {0.0, 0.5, 0.0, 0.0},
                                                {0.0, 0.0, 1.0, 0.0}}),
                        Vector{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0}, 4);
}

ButcherTableau explicit_euler() {
  return ButcherTableau("euler", DenseMatrix::from_rows({{0.0}}), Vector{1.0}, 1);
}

ButcherTableau implicit_midpoint() {
  return ButcherTableau("implicit_midpoint", DenseMatrix::from_rows({{0.5}}), Vector{1.0}, 2);
}

ButcherTableau tableau_by_name(std::string_view name) {
  if (name == "rk4") return rk4_classic();
  if (name == "euler") return explicit_euler();
  if (name == "implicit_midpoint") return implicit_midpoint();
  throw Error(ErrorKind::InvalidParameter, "unknown tableau '" + std::string(name) + "'");
}

namespace {

/// u + h Σⱼ a_ij kⱼ over the stages j < limit.
Vector stage_point(const ButcherTableau& tab, const DenseMatrix& k, ConstVec u, double h,
                   std::size_t i, std::size_t limit) {
  Vector p(u.begin(), u.end());
  const std::size_t d = u.size();
  for (std::size_t j = 0; j < limit; ++j) {
    const double c = h * tab.a()(i, j);
    if (c == 0.0) continue;
    for (std::size_t m = 0; m < d; ++m) p[m] += c * k(j, m);
  }
  return p;
}

}  // namespace

StageMatrix rk_stages(const ButcherTableau& tab, const OdeProblem& problem, ConstVec u, double h,
                      const StageSolve& solve, Cost* cost) {
  if (!(h >= 0.0)) throw Error(ErrorKind::InvalidParameter, "rk_stages: h must be nonnegative");
  if (!(solve.tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "rk_stages: tol must be positive");
  const std::size_t s = tab.stages();
  const std::size_t d = problem.dim;
  StageMatrix out{DenseMatrix(s, d), 0};

  if (tab.is_explicit()) {
    for (std::size_t i = 0; i < s; ++i) {
      const Vector ki = eval_field(problem, stage_point(tab, out.k, u, h, i, i), cost);
      for (std::size_t m = 0; m < d; ++m) out.k(i, m) = ki[m];
    }
    return out;
  }

  const Vector fu = eval_field(problem, u, cost);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t m = 0; m < d; ++m) out.k(i, m) = fu[m];

  double change = 0.0;
  for (int it = 1; it <= solve.max_iter; ++it) {
    DenseMatrix next(s, d);
    change = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      const Vector ki = eval_field(problem, stage_point(tab, out.k, u, h, i, s), cost);
      double diff2 = 0.0;
      for (std::size_t m = 0; m < d; ++m) {
        next(i, m) = ki[m];
        const double dm = ki[m] - out.k(i, m);
        diff2 += dm * dm;
      }
      change = std::max(change, std::sqrt(diff2));
    }
    out.k = std::move(next);
    out.iterations = it;
    if (cost) ++cost->stage_iters;
    if (change <= solve.tol) return out;
  }
  throw Error(ErrorKind::NonConvergence, "implicit Runge-Kutta stages did not converge", change);
}

Vector f_tilde(const ButcherTableau& tab, const OdeProblem& problem, ConstVec x, double h,
               const StageSolve& solve, Cost* cost) {
  const StageMatrix st = rk_stages(tab, problem, x, h, solve, cost);
  Vector ft(problem.dim, 0.0);
  for (std::size_t i = 0; i < tab.stages(); ++i) {
    const ConstVec ki = st.stage(i);
    for (std::size_t m = 0; m < ft.size(); ++m) ft[m] += tab.b()[i] * ki[m];
  }
  return ft;
}

Vector rk_step(const ButcherTableau& tab, const OdeProblem& problem, ConstVec x, double h,
               const StageSolve& solve, Cost* cost) {
  return axpy(x, h, f_tilde(tab, problem, x, h, solve, cost));
}

}  // namespace dgm
