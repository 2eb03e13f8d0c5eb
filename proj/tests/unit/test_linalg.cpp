#include "helpers.hpp"

using dgm::DenseMatrix;
using dgm::Vector;

TEST_CASE("lu_solve on identity and diagonal systems") {
  const Vector x = dgm::lu_solve(DenseMatrix::identity(3), Vector{1, 2, 3});
  CHECK(x == Vector{1, 2, 3});
  const Vector y = dgm::lu_solve(DenseMatrix::from_rows({{2, 0}, {0, 4}}), Vector{2, 8});
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 2.0);
}

TEST_CASE("lu_solve needs pivoting") {
  const Vector x = dgm::lu_solve(DenseMatrix::from_rows({{0, 1}, {1, 0}}), Vector{3, 5});
  CHECK(x == Vector{5, 3});
}

TEST_CASE("lu_solve rejects singular and malformed systems") {
  CHECK_THROWS_KIND(dgm::lu_solve(DenseMatrix::from_rows({{1, 2}, {2, 4}}), Vector{1, 1}), SingularStep);
  CHECK_THROWS_KIND(dgm::lu_solve(DenseMatrix(2, 2), Vector{1, 1}), SingularStep);
  CHECK_THROWS_KIND(dgm::lu_solve(DenseMatrix(2, 3), Vector{1, 1}), InvalidParameter);
  CHECK_THROWS_KIND(dgm::lu_solve(DenseMatrix::identity(2), Vector{1, 1, 1}), InvalidParameter);
}

TEST_CASE("lu_solve residual on random well-conditioned matrices") {
  oracle::Sampler rng(11);
  double worst = 0.0;
  for (int n = 0; n < kSamples; ++n) {
    const int d = 2 + n % 3;
    const Eigen::MatrixXd a = rng.well_conditioned(d);
    const Vector rhs = rng.vec(d, -5, 5);
    const Vector z = dgm::lu_solve(to_dense(a), rhs);
    const double res = (a * oracle::to_eigen(z) - oracle::to_eigen(rhs)).norm();
    worst = std::max(worst, res / (1.0 + dgm::norm(rhs)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("condition number of simple matrices") {
  CHECK(dgm::condition_number(DenseMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dgm::condition_number(DenseMatrix::diagonal(Vector{2, 1})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::isinf(dgm::condition_number(DenseMatrix::from_rows({{1, 1}, {1, 1}}))));
  CHECK(std::isinf(dgm::condition_number(DenseMatrix(3, 3))));
}

TEST_CASE("condition number against the normal-matrix eigenvalue oracle") {
  oracle::Sampler rng(12);
  double worst = 0.0;
  for (int n = 0; n < kSamples; ++n) {
    const Eigen::MatrixXd a = rng.general(3);
    const double ours = dgm::condition_number(to_dense(a));
    const double ref = oracle::condition_via_svd(a);
    if (ref > 1e6) continue;  // the AᵀA oracle loses digits beyond this
    const double alt = oracle::condition_via_normal_matrix(a);
    worst = std::max(worst, std::abs(ours - alt) / alt);
    CHECK(ours >= 1.0);
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("condition number is scale invariant") {
  oracle::Sampler rng(13);
  double worst = 0.0;
  for (int n = 0; n < kSamples; ++n) {
    const Eigen::MatrixXd a = rng.well_conditioned(3);
    double c = rng.uniform(0.01, 100.0);
    if (n % 2) c = -c;
    const double k1 = dgm::condition_number(to_dense(a));
    const double k2 = dgm::condition_number(to_dense(c * a));
    worst = std::max(worst, std::abs(k1 - k2) / k1);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("singular values sorted and match the svd oracle") {
  oracle::Sampler rng(14);
  for (int n = 0; n < 100; ++n) {
    const Eigen::MatrixXd a = rng.general(4);
    const Vector s = dgm::singular_values(to_dense(a));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    for (int k = 0; k < 4; ++k) CHECK(s[k] == doctest::Approx(svd.singularValues()(k)).epsilon(1e-12));
    CHECK(std::is_sorted(s.rbegin(), s.rend()));
  }
}

TEST_CASE("vector helpers") {
  const Vector a{1, 2, 2};
  CHECK(dgm::norm(a) == 3.0);
  CHECK(dgm::dot(a, Vector{1, 0, -1}) == -1.0);
  CHECK(dgm::axpy(a, 2.0, Vector{1, 1, 1}) == Vector{3, 4, 4});
  CHECK(dgm::max_abs(Vector{-5, 2}) == 5.0);
  CHECK_FALSE(dgm::all_finite(Vector{1, std::nan("")}));
  const DenseMatrix m = DenseMatrix::from_rows({{1, 2}, {3, 4}});
  CHECK(m.transpose()(0, 1) == 3.0);
  CHECK((m * Vector{1, 1}) == Vector{3, 7});
  CHECK((m * DenseMatrix::identity(2))(1, 0) == 3.0);
}
