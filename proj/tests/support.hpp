#pragma once

// Test-only generators and independent oracles. Nothing here calls into the
// projection or basis code it is used to check.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pcortho/core.hpp"

namespace pcortho::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240127);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Eigen::VectorXd random_vector(int n, double lo = -1.0, double hi = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

inline Eigen::MatrixXd random_dense(int rows, int cols, double lo = -1.0, double hi = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

inline SkewMatrix random_skew(int n, double scale = 1.0) {
  return SkewMatrix::from_upper(n, random_vector(static_cast<int>(half_length(n)), -scale, scale));
}

/// A A^T + n I/2: symmetric, comfortably positive definite, with a nonconstant
/// row-sum vector.
inline WeightMatrix random_weight(int n) {
  const Eigen::MatrixXd a = random_dense(n, n);
  Eigen::MatrixXd w = a * a.transpose() + 0.5 * n * Eigen::MatrixXd::Identity(n, n);
  w = 0.5 * (w + w.transpose());
  return WeightMatrix(w);
}

/// Reciprocal PC matrix with log-entries uniform in [-spread, spread].
inline PCMatrix random_reciprocal(int n, double spread = 2.0) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = std::exp(uniform(-spread, spread));
      m(i, j) = v;
      m(j, i) = 1.0 / v;
    }
  return PCMatrix(m);
}

/// tr(A W B^T) by explicit triple summation.
inline double naive_trace(const Eigen::MatrixXd& a, const Eigen::MatrixXd& w, const Eigen::MatrixXd& b) {
  double t = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < w.rows(); ++k)
      for (Eigen::Index l = 0; l < w.cols(); ++l) t += a(i, k) * w(k, l) * b(i, l);
  return t;
}

/// Dense [v_i - v_j].
inline Eigen::MatrixXd naive_difference(const Eigen::VectorXd& v) {
  const auto n = v.size();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v[i] - v[j];
  return m;
}

/// Closest consistent matrix in the W norm, found by minimizing
/// ||B - [v_i - v_j]||_W^2 over the potentials v directly: normal equations
/// over the unit-vector images, with the kernel direction 1 pinned by adding
/// 1 1^T. Returns the dense projection.
inline Eigen::MatrixXd potential_projection(const Eigen::MatrixXd& b, const Eigen::MatrixXd& w) {
  const auto n = b.rows();
  std::vector<Eigen::MatrixXd> images;
  for (Eigen::Index a = 0; a < n; ++a) images.push_back(naive_difference(Eigen::VectorXd::Unit(n, a)));
  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd r(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    r[a] = naive_trace(b, w, images[a]);
    for (Eigen::Index c = 0; c < n; ++c) k(a, c) = naive_trace(images[a], w, images[c]);
  }
  k += Eigen::MatrixXd::Ones(n, n);
  const Eigen::VectorXd v = k.colPivHouseholderQr().solve(r);
  return naive_difference(v);
}

/// Closed forms for n = 3, B = [[0,x,y],[-x,0,z],[-y,-z,0]], W = I:
/// B_h = (x - y + z)/3 N and B_l's upper triangle.
struct Order3Parts {
  double h_coefficient;
  Eigen::Vector3d l_upper;
};

inline Order3Parts order3_parts(double x, double y, double z) {
  return {(x - y + z) / 3.0, Eigen::Vector3d((2 * x + y - z) / 3.0, (x + 2 * y + z) / 3.0, (-x + y + 2 * z) / 3.0)};
}

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace pcortho::testing
