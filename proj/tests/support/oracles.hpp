#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library's numerical code: fields, integrals, RK4 and linear algebra are
// written out directly or delegated to Eigen.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

// Deterministic generator for property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  Vec vec(std::size_t d, double lo, double hi) {
    Vec v(d);
    for (auto& e : v) e = uniform(lo, hi);
    return v;
  }

  // Random d×d matrix with singular values in [1, 10] so that it is well
  // conditioned: Q1 diag(s) Q2 from Householder QR of Gaussian matrices.
  Eigen::MatrixXd well_conditioned(int d) {
    auto gauss = [&] {
      Eigen::MatrixXd m(d, d);
      std::normal_distribution<double> n(0.0, 1.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = n(gen_);
      return Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ());
    };
    Eigen::VectorXd s(d);
    for (int i = 0; i < d; ++i) s(i) = uniform(1.0, 10.0);
    return gauss() * s.asDiagonal() * gauss();
  }

  Eigen::MatrixXd general(int d, double lo = -1.0, double hi = 1.0) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

struct RigidBody {
  double i1 = 2.0, i2 = 1.0, i3 = 2.0 / 3.0, alpha = 1.0;

  Vec field(const Vec& x) const {
    const double w1 = x[0] / i1, w2 = x[1] / i2, w3 = x[2] / i3;
    const double c = x[1] - alpha * x[0] * x[0];
    return {-x[2] * w2 + c * w3, x[2] * w1 - x[0] * w3, -c * w1 + x[0] * w2};
  }
  double integral(const Vec& x) const {
    return 0.5 * (x[0] * x[0] / i1 + x[1] * x[1] / i2 + x[2] * x[2] / i3);
  }
  Vec gradient(const Vec& x) const { return {x[0] / i1, x[1] / i2, x[2] / i3}; }
  Eigen::Matrix3d m() const { return Eigen::Vector3d(1.0 / i1, 1.0 / i2, 1.0 / i3).asDiagonal(); }
};

inline Vec initial_state(double r = 1.0) { return {r * std::cos(1.1), 0.0, r * std::sin(1.1)}; }

inline Eigen::VectorXd to_eigen(const Vec& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }
inline Vec from_eigen(const Eigen::VectorXd& v) { return Vec(v.data(), v.data() + v.size()); }

// Plain classical RK4 written from the tableau by hand.
template <class F>
Vec rk4_step(const F& f, const Vec& x, double h) {
  const auto ex = to_eigen(x);
  const Eigen::VectorXd k1 = to_eigen(f(x));
  const Eigen::VectorXd k2 = to_eigen(f(from_eigen(ex + 0.5 * h * k1)));
  const Eigen::VectorXd k3 = to_eigen(f(from_eigen(ex + 0.5 * h * k2)));
  const Eigen::VectorXd k4 = to_eigen(f(from_eigen(ex + h * k3)));
  return from_eigen(ex + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

template <class F>
Vec rk4_ftilde(const F& f, const Vec& x, double h) {
  const auto ex = to_eigen(x);
  const Eigen::VectorXd k1 = to_eigen(f(x));
  const Eigen::VectorXd k2 = to_eigen(f(from_eigen(ex + 0.5 * h * k1)));
  const Eigen::VectorXd k3 = to_eigen(f(from_eigen(ex + 0.5 * h * k2)));
  const Eigen::VectorXd k4 = to_eigen(f(from_eigen(ex + h * k3)));
  return from_eigen((k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0);
}

// One step of the linearly implicit method for the rigid body, solved by a
// dense fixed-point iteration on z ← x + h S̃ M (x + z)/2 instead of a linear
// solve.
inline Vec linear_dg_step_by_iteration(const RigidBody& rb, const Vec& x, double h) {
  const Eigen::Vector3d ex = to_eigen(x);
  const Eigen::Vector3d ft = to_eigen(rk4_ftilde([&](const Vec& v) { return rb.field(v); }, x, h));
  const Eigen::Matrix3d m = rb.m();
  const Eigen::Vector3d gx = m * ex;
  const Eigen::Vector3d gy = m * (ex + 0.5 * h * ft);
  const Eigen::Matrix3d s = (ft * gx.transpose() - gx * ft.transpose()) / gx.dot(gy);
  Eigen::Vector3d z = ex;
  for (int it = 0; it < 10000; ++it) {
    const Eigen::Vector3d next = ex + h * s * (m * (0.5 * (ex + z)));
    const double change = (next - z).norm();
    z = next;
    if (change <= 1e-16 * (1.0 + ex.norm())) break;
  }
  return from_eigen(z);
}

// Condition number from the eigenvalues of AᵀA (symmetric eigensolver).
inline double condition_via_normal_matrix(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a);
  const auto& ev = es.eigenvalues();
  return std::sqrt(ev.maxCoeff() / ev.minCoeff());
}

inline double condition_via_svd(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

// Harmonic oscillator f = (−x2, x1): exact flow is a rotation by t.
inline Vec rotate(const Vec& x, double t) {
  return {std::cos(t) * x[0] - std::sin(t) * x[1], std::sin(t) * x[0] + std::cos(t) * x[1]};
}

inline double dist(const Vec& a, const Vec& b) { return (to_eigen(a) - to_eigen(b)).norm(); }
inline double len(const Vec& a) { return to_eigen(a).norm(); }

// Least-squares slope of log10(e) against log10(h).
inline double loglog_slope(const Vec& h, const Vec& e) {
  Eigen::MatrixXd a(h.size(), 2);
  Eigen::VectorXd y(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    a(k, 0) = std::log10(h[k]);
    a(k, 1) = 1.0;
    y(k) = std::log10(e[k]);
  }
  return a.colPivHouseholderQr().solve(y)(0);
}

}  // namespace oracle
