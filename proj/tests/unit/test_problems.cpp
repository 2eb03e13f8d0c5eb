#include "helpers.hpp"

#include "dgm/problems.hpp"

using dgm::Vector;

TEST_CASE("rigid body integral and gradient at the initial state") {
  const auto p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  const Vector x0 = dgm::rigid_body_initial_state();
  CHECK(dgm::eval_integral(p, x0) == doctest::Approx(0.6471253).epsilon(1e-7));
  const Vector g = dgm::eval_gradient(p, x0);
  CHECK(g[0] == doctest::Approx(0.2267981).epsilon(1e-7));
  CHECK(g[1] == 0.0);
  CHECK(g[2] == doctest::Approx(1.3368110).epsilon(1e-7));
}

TEST_CASE("rigid body field matches the written-out oracle") {
  oracle::Sampler rng(21);
  const oracle::RigidBody rb;
  const auto p = dgm::rigid_body_modified(rb.i1, rb.i2, rb.i3, rb.alpha);
  for (int n = 0; n < kSamples; ++n) {
    const Vector x = rng.vec(3, -2, 2);
    const Vector f = dgm::eval_field(p, x);
    const Vector ref = rb.field(x);
    for (int k = 0; k < 3; ++k) CHECK(f[k] == doctest::Approx(ref[k]).epsilon(1e-15));
    CHECK(dgm::eval_integral(p, x) == doctest::Approx(rb.integral(x)).epsilon(1e-15));
  }
}

TEST_CASE("quadratic integrals evaluate simple cases") {
  const auto osc = dgm::harmonic_oscillator();
  const auto [v, g] = dgm::eval_integral_and_gradient(osc, Vector{3, 4});
  CHECK(v == 12.5);
  CHECK(g == Vector{3, 4});

  dgm::QuadraticForm q{dgm::DenseMatrix::from_rows({{2, 1}, {1, 3}}), {0, 0}, 1.5};
  const auto integral = dgm::FirstIntegral::from_quadratic(q);
  CHECK(dgm::eval_integral(integral, Vector{0, 0}) == 1.5);
  CHECK(dgm::eval_gradient(integral, Vector{0, 0}) == Vector{0, 0});
}

TEST_CASE("shipped fields are tangent to the level sets") {
  oracle::Sampler rng(22);
  const std::vector<dgm::OdeProblem> problems{dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1),
                                              dgm::rigid_body_modified(1, 2, 3, 0), dgm::harmonic_oscillator()};
  for (const auto& p : problems) {
    for (int n = 0; n < 100; ++n) {
      const Vector x = rng.vec(p.dim, -2, 2);
      const Vector f = dgm::eval_field(p, x);
      const Vector g = dgm::eval_gradient(p, x);
      CHECK(std::abs(dgm::dot(f, g)) <= 1e-12 * (1.0 + dgm::norm(f) * dgm::norm(g)));
    }
  }
}

TEST_CASE("quadratic gradient agrees with M x + b") {
  oracle::Sampler rng(23);
  dgm::QuadraticForm q{dgm::DenseMatrix::from_rows({{2, -1, 0}, {-1, 3, 0.5}, {0, 0.5, 1}}), {0.1, -0.2, 0.3}, 0};
  const auto integral = dgm::FirstIntegral::from_quadratic(q);
  for (int n = 0; n < kSamples; ++n) {
    const Vector x = rng.vec(3, -2, 2);
    const Vector g = dgm::eval_gradient(integral, x);
    const Eigen::Vector3d ref = to_eigen(q.m) * oracle::to_eigen(x) + oracle::to_eigen(q.b);
    CHECK((oracle::to_eigen(g) - ref).norm() <= 1e-13 * (1.0 + dgm::norm(x)));
  }
}

TEST_CASE("alpha = 0 drops exactly the coupling terms") {
  oracle::Sampler rng(24);
  const auto p1 = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  const auto p0 = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 0);
  for (int n = 0; n < kSamples; ++n) {
    const Vector x = rng.vec(3, -2, 2);
    const Vector f1 = dgm::eval_field(p1, x);
    const Vector f0 = dgm::eval_field(p0, x);
    const double a = x[0] * x[0];
    CHECK(f1[0] - f0[0] == doctest::Approx(-a * x[2] / (2.0 / 3.0)).epsilon(1e-12));
    CHECK(f1[1] == f0[1]);
    CHECK(f1[2] - f0[2] == doctest::Approx(a * x[0] / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("problem evaluation errors") {
  const auto p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  CHECK_THROWS_KIND(dgm::eval_field(p, Vector{1, 2}), InvalidParameter);
  CHECK_THROWS_KIND(dgm::eval_field(p, Vector{1, std::nan(""), 0}), NumericalFault);
  CHECK_THROWS_KIND(dgm::eval_gradient(p, Vector{INFINITY, 0, 0}), NumericalFault);
  CHECK_THROWS_KIND(dgm::rigid_body_modified(0, 1, 1, 1), InvalidParameter);
  dgm::QuadraticForm q{dgm::DenseMatrix::from_rows({{1, 2}, {0, 1}}), {0, 0}, 0};
  CHECK_THROWS_KIND(dgm::FirstIntegral::from_quadratic(q), InvalidParameter);
}

TEST_CASE("cost counters count evaluations") {
  const auto p = dgm::rigid_body_modified(2, 1, 2.0 / 3.0, 1);
  const Vector x = dgm::rigid_body_initial_state();
  dgm::Cost c;
  dgm::eval_field(p, x, &c);
  dgm::eval_integral(p, x, &c);
  dgm::eval_gradient(p, x, &c);
  dgm::eval_integral_and_gradient(p, x, &c);
  CHECK(c.f_evals == 1);
  CHECK(c.integral_evals == 2);
  CHECK(c.gradient_evals == 2);
  CHECK(c.i_evals() == 4);
}

TEST_CASE("critical point policy") {
  const dgm::CriticalPointPolicy def;
  CHECK(def.is_critical(Vector{0, 0, 0}, Vector{0, 0, 0}));
  CHECK_FALSE(def.is_critical(Vector{1, 0, 0}, Vector{1e-10, 0, 0}));
  const dgm::CriticalPointPolicy loose{1e-3};
  CHECK(loose.is_critical(Vector{1, 0, 0}, Vector{1e-4, 0, 0}));
}
