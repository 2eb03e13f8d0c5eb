#include "dgm/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "dgm/error.hpp"

namespace dgm {

double dot(ConstVec a, ConstVec b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(ConstVec a) { return std::sqrt(dot(a, a)); }

double max_abs(ConstVec a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(ConstVec a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

Vector add(ConstVec a, ConstVec b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
  return r;
}

Vector sub(ConstVec a, ConstVec b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

Vector scale(double s, ConstVec a) {
  Vector r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = s * a[k];
  return r;
}

Vector axpy(ConstVec a, double s, ConstVec b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + s * b[k];
  return r;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(ConstVec d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  DenseMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorKind::InvalidParameter, "ragged matrix rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

DenseMatrix DenseMatrix::outer(ConstVec a, ConstVec b) {
  DenseMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const { return dgm::max_abs(data_); }

bool DenseMatrix::all_finite() const { return dgm::all_finite(data_); }

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
  DenseMatrix r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
  return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
  DenseMatrix r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
  return r;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = s * a.data_[k];
  return r;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  assert(a.cols_ == b.rows_);
  DenseMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Vector operator*(const DenseMatrix& a, ConstVec x) {
  assert(a.cols_ == x.size());
  Vector r(a.rows_, 0.0);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

Vector lu_solve(const DenseMatrix& a, ConstVec rhs) {
  if (!a.square() || a.rows() != rhs.size())
    throw Error(ErrorKind::InvalidParameter, "lu_solve: dimension mismatch");
  const std::size_t n = a.rows();
  DenseMatrix lu = a;
  Vector z(rhs.begin(), rhs.end());

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(piv, col))) piv = r;
    const double p = lu(piv, col);
    if (!(std::abs(p) >= 1e-300))
      throw Error(ErrorKind::SingularStep, "lu_solve: matrix is singular", p);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
      std::swap(z[col], z[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = lu(r, col) / p;
      if (m == 0.0) continue;
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= m * lu(col, j);
      z[r] -= m * z[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = z[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * z[j];
    z[i] = s / lu(i, i);
  }
  return z;
}

Vector singular_values(const DenseMatrix& a) {
  // Hestenes one-sided Jacobi: rotate column pairs of U = A until all
  // columns are mutually orthogonal; the column norms are then the singular
  // values. Equivalent to a cyclic Jacobi eigen-sweep on AᵀA.
  DenseMatrix u = a;
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += u(i, p) * u(i, p);
          beta += u(i, q) * u(i, q);
          gamma += u(i, p) * u(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double up = u(i, p);
          const double uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
      }
    }
    if (!rotated) break;
  }

  Vector sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += u(i, j) * u(i, j);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double condition_number(const DenseMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::InvalidParameter, "condition_number: matrix not square");
  if (a.rows() == 0) return 1.0;
  const Vector sv = singular_values(a);
  const double smin = sv.back();
  if (!(smin >= 1e-300)) return std::numeric_limits<double>::infinity();
  return sv.front() / smin;
}

}  // namespace dgm
