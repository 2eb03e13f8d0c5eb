#pragma once

#include <doctest.h>

#include "dgm/error.hpp"
#include "dgm/linalg.hpp"
#include "../support/oracles.hpp"

// Number of random samples per property test.
inline constexpr int kSamples = 1000;

inline dgm::DenseMatrix to_dense(const Eigen::MatrixXd& m) {
  dgm::DenseMatrix d(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d(i, j) = m(i, j);
  return d;
}

inline Eigen::MatrixXd to_eigen(const dgm::DenseMatrix& d) {
  Eigen::MatrixXd m(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) m(i, j) = d(i, j);
  return m;
}

#define CHECK_THROWS_KIND(expr, k)                 \
  do {                                             \
    try {                                          \
      (void)(expr);                                \
      FAIL("expected dgm::Error");                 \
    } catch (const dgm::Error& e) {                \
      CHECK(e.kind() == dgm::ErrorKind::k);        \
    }                                              \
  } while (0)
