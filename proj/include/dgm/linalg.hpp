#pragma once

// Small dense vectors and matrices. Dimensions here are tiny (the rigid body
// benchmark is 3-dimensional), so everything is stored densely and copied
// by value.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dgm {

using Vector = std::vector<double>;
using ConstVec = std::span<const double>;

double dot(ConstVec a, ConstVec b);
double norm(ConstVec a);
double max_abs(ConstVec a);
bool all_finite(ConstVec a);

Vector add(ConstVec a, ConstVec b);
Vector sub(ConstVec a, ConstVec b);
Vector scale(double s, ConstVec a);
/// a + s * b
Vector axpy(ConstVec a, double s, ConstVec b);

/// Row-major square-or-rectangular matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(ConstVec d);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  /// a bᵀ
  static DenseMatrix outer(ConstVec a, ConstVec b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;
  double max_abs() const;
  bool all_finite() const;

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator*(double s, const DenseMatrix& a);
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend Vector operator*(const DenseMatrix& a, ConstVec x);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Solves A z = rhs by Gaussian elimination with partial pivoting.
/// Throws Error(SingularStep) when a pivot falls below 1e-300 in magnitude.
Vector lu_solve(const DenseMatrix& a, ConstVec rhs);

/// Singular values in descending order, via one-sided Jacobi rotations
/// (which diagonalises AᵀA without forming it).
Vector singular_values(const DenseMatrix& a);

/// 2-norm condition number σ_max / σ_min. Returns +infinity when
/// σ_min < 1e-300. For symmetric positive definite A this equals the ratio
/// of extreme eigenvalues.
double condition_number(const DenseMatrix& a);

}  // namespace dgm
