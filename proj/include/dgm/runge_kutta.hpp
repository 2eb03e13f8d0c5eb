#pragma once

#include <string>
#include <string_view>

#include "dgm/linalg.hpp"
#include "dgm/problems.hpp"

namespace dgm {

/// (A, b) coefficients of an s-stage Runge–Kutta method for autonomous
/// systems; the abscissae c are not needed and not stored.
class ButcherTableau {
 public:
  /// Throws InvalidParameter unless A is s×s, b has length s, all entries
  /// are finite and |Σ bᵢ − 1| ≤ 1e-14.
  ButcherTableau(std::string name, DenseMatrix a, Vector b, int claimed_order);

  const std::string& name() const noexcept { return name_; }
  std::size_t stages() const noexcept { return b_.size(); }
  const DenseMatrix& a() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }
  int claimed_order() const noexcept { return claimed_order_; }
  /// a_ij = 0 for all i ≤ j.
  bool is_explicit() const noexcept { return explicit_; }

 private:
  std::string name_;
  DenseMatrix a_;
  Vector b_;
  int claimed_order_;
  bool explicit_;
};

ButcherTableau rk4_classic();
ButcherTableau explicit_euler();
ButcherTableau implicit_midpoint();
/// "rk4" | "euler" | "implicit_midpoint"
ButcherTableau tableau_by_name(std::string_view name);

/// Stage derivatives stored as an s×d matrix, row i = kᵢ, so each stage is
/// contiguous.
struct StageMatrix {
  DenseMatrix k;
  int iterations = 0;

  ConstVec stage(std::size_t i) const { return k.data().subspan(i * k.cols(), k.cols()); }
};

struct StageSolve {
  double tol = 1e-14;
  int max_iter = 100;
};

/// Solves kᵢ = f(u + h Σⱼ a_ij kⱼ). Explicit tableaus use forward
/// substitution (exactly s f-evaluations); implicit ones iterate K ← T(K)
/// from kᵢ = f(u) until the largest stage change is ≤ tol.
/// Throws NonConvergence (value = last change) after max_iter sweeps.
StageMatrix rk_stages(const ButcherTableau& tab, const OdeProblem& problem, ConstVec u, double h,
                      const StageSolve& solve = {}, Cost* cost = nullptr);

/// f̃(x, h) = Σ bᵢ kᵢ. Satisfies f̃(x, 0) = f(x).
Vector f_tilde(const ButcherTableau& tab, const OdeProblem& problem, ConstVec x, double h,
               const StageSolve& solve = {}, Cost* cost = nullptr);

/// x′ = x + h f̃(x, h).
Vector rk_step(const ButcherTableau& tab, const OdeProblem& problem, ConstVec x, double h,
               const StageSolve& solve = {}, Cost* cost = nullptr);

}  // namespace dgm
