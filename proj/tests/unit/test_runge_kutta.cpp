#include "helpers.hpp"

#include "dgm/runge_kutta.hpp"

using dgm::ButcherTableau;
using dgm::DenseMatrix;
using dgm::Vector;

namespace {

dgm::OdeProblem scalar_linear(double lambda) {
  dgm::OdeProblem p;
  p.name = "linear";
  p.dim = 1;
  p.field = [lambda](dgm::ConstVec x) { return Vector{lambda * x[0]}; };
  p.integral.value = [](dgm::ConstVec x) { return x[0]; };
  p.integral.gradient = [](dgm::ConstVec) { return Vector{1.0}; };
  return p;
}

}  // namespace

TEST_CASE("classical RK4 tableau") {
  const auto t = dgm::rk4_classic();
  CHECK(t.stages() == 4);
  CHECK(t.is_explicit());
  CHECK(t.claimed_order() == 4);
  double sum = 0.0;
  for (double b : t.b()) sum += b;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.b() == Vector{1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6});
  CHECK(t.a()(1, 0) == 0.5);
  CHECK(t.a()(2, 1) == 0.5);
  CHECK(t.a()(3, 2) == 1.0);
  CHECK_FALSE(dgm::implicit_midpoint().is_explicit());
}

TEST_CASE("tableau validation") {
  CHECK_THROWS_KIND(ButcherTableau("bad", DenseMatrix(1, 1), Vector{0.9}, 1), InvalidParameter);
  CHECK_THROWS_KIND(ButcherTableau("bad", DenseMatrix(2, 1), Vector{1.0}, 1), InvalidParameter);
  CHECK_THROWS_KIND(ButcherTableau("bad", DenseMatrix(1, 1), Vector{1.0}, 0), InvalidParameter);
  CHECK_THROWS_KIND(ButcherTableau("bad", DenseMatrix(1, 1, NAN), Vector{1.0}, 1), InvalidParameter);
  CHECK_THROWS_KIND(dgm::tableau_by_name("rk5"), InvalidParameter);
  CHECK(dgm::tableau_by_name("euler").stages() == 1);
}

TEST_CASE("RK4 stages for x' = x by hand") {
  const auto p = scalar_linear(1.0);
  const auto k = dgm::rk_stages(dgm::rk4_classic(), p, Vector{1.0}, 0.1);
  // k1 = 1, k2 = 1 + 0.05, k3 = 1 + 0.05·1.05, k4 = 1 + 0.1·1.0525
  const double expect[] = {1.0, 1.05, 1.0525, 1.10525};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(k.stage(i)[0] - expect[i]) <= 1e-15);
  CHECK(k.iterations == 0);
  const Vector ft = dgm::f_tilde(dgm::rk4_classic(), p, Vector{1.0}, 0.1);
  CHECK(ft[0] == doctest::Approx(6.31025 / 6.0).epsilon(1e-15));
  const Vector x1 = dgm::rk_step(dgm::rk4_classic(), p, Vector{1.0}, 0.1);
  CHECK(x1[0] == doctest::Approx(1.0 + 0.1 * 6.31025 / 6.0).epsilon(1e-15));
  CHECK(x1[0] == doctest::Approx(1.1051708).epsilon(1e-7));
}

TEST_CASE("implicit midpoint stage matches the closed form") {
  const auto p = scalar_linear(-1.0);
  const dgm::StageSolve solve{1e-14, 100};
  const auto k = dgm::rk_stages(dgm::implicit_midpoint(), p, Vector{1.0}, 0.1, solve);
  CHECK(std::abs(k.stage(0)[0] + 1.0 / 1.05) <= 1e-14);
  CHECK(k.iterations > 0);
}

TEST_CASE("implicit stage iteration reports non-convergence") {
  const auto p = scalar_linear(-1.0);
  // h a λ = -2.5: the stage map is not a contraction.
  try {
    dgm::rk_stages(dgm::implicit_midpoint(), p, Vector{1.0}, 5.0, dgm::StageSolve{1e-14, 50});
    FAIL("expected NonConvergence");
  } catch (const dgm::Error& e) {
    CHECK(e.kind() == dgm::ErrorKind::NonConvergence);
    CHECK(e.value() > 0.0);
  }
}

TEST_CASE("stage fixed point is a genuine fixed point") {
  const auto p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  const auto tab = dgm::implicit_midpoint();
  const dgm::StageSolve solve{1e-13, 100};
  oracle::Sampler rng(51);
  for (int n = 0; n < 100; ++n) {
    const Vector u = rng.vec(3, -1, 1);
    const double h = rng.uniform(0.0, 0.2);
    const auto k = dgm::rk_stages(tab, p, u, h, solve);
    const Vector arg = dgm::axpy(u, h * tab.a()(0, 0), k.stage(0));
    const Vector fk = oracle::RigidBody{}.field(arg);
    CHECK(oracle::dist(fk, Vector(k.stage(0).begin(), k.stage(0).end())) <= 10 * solve.tol);
  }
}

TEST_CASE("zero step gives f(u) in every stage") {
  const auto p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  const Vector x0 = dgm::rigid_body_initial_state();
  const Vector f0 = dgm::eval_field(p, x0);
  for (const auto& tab : {dgm::rk4_classic(), dgm::implicit_midpoint(), dgm::explicit_euler()}) {
    const auto k = dgm::rk_stages(tab, p, x0, 0.0);
    for (std::size_t i = 0; i < tab.stages(); ++i)
      CHECK(Vector(k.stage(i).begin(), k.stage(i).end()) == f0);
    CHECK(dgm::f_tilde(tab, p, x0, 0.0) == f0);
    CHECK(dgm::rk_step(tab, p, x0, 0.0) == x0);
  }
}

TEST_CASE("f tilde approaches f linearly in h") {
  const auto p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  const Vector x0 = dgm::rigid_body_initial_state();
  const Vector f0 = dgm::eval_field(p, x0);
  Vector dev;
  for (double h : {1e-2, 1e-3, 1e-4}) dev.push_back(oracle::dist(dgm::f_tilde(dgm::rk4_classic(), p, x0, h), f0));
  CHECK(dev[0] / dev[1] == doctest::Approx(10.0).epsilon(0.05));
  CHECK(dev[1] / dev[2] == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("RK4 step matches the hand-written oracle and drifts in I") {
  const auto p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  const oracle::RigidBody rb;
  const Vector x0 = dgm::rigid_body_initial_state();
  const Vector x1 = dgm::rk_step(dgm::rk4_classic(), p, x0, 0.5);
  const Vector ref = oracle::rk4_step([&](const Vector& v) { return rb.field(v); }, x0, 0.5);
  CHECK(oracle::dist(x1, ref) <= 1e-15);
  CHECK(std::abs(rb.integral(x1) - rb.integral(x0)) > 1e-8);
}

TEST_CASE("explicit stages cost exactly s evaluations") {
  const auto p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  dgm::Cost c;
  dgm::rk_stages(dgm::rk4_classic(), p, dgm::rigid_body_initial_state(), 0.3, {}, &c);
  CHECK(c.f_evals == 4);
  CHECK(c.stage_iters == 0);
}

TEST_CASE("RK4 order on the harmonic oscillator") {
  const auto p = dgm::harmonic_oscillator();
  const Vector x0{1.0, 0.0};
  Vector hs{0.2, 0.1, 0.05, 0.025}, errs;
  for (double h : hs) {
    Vector x = x0;
    const int n = static_cast<int>(std::lround(1.0 / h));
    for (int k = 0; k < n; ++k) x = dgm::rk_step(dgm::rk4_classic(), p, x, h);
    errs.push_back(oracle::dist(x, oracle::rotate(x0, 1.0)));
  }
  CHECK(oracle::loglog_slope(hs, errs) == doctest::Approx(4.0).epsilon(0.05));
}
