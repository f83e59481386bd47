#pragma once

// Domain types for multiplicative pairwise-comparison (PC) matrices and their
// additive (log-ratio) counterparts, plus the maps between the two worlds.
//
// Indices are 0-based throughout the library. User-facing reports (CLI, DOT)
// switch to 1-based labels.

#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "pcortho/error.hpp"

namespace pcortho {

namespace tol {
inline constexpr double kConstruction = 1e-12;
inline constexpr double kIdentity = 1e-10;
inline constexpr double kVerdict = 1e-9;
inline constexpr double kReciprocity = 1e-9;
}  // namespace tol

/// Number of strictly-upper entries of an n x n matrix.
constexpr std::size_t half_length(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

/// Position of (i, j), i < j, in the lexicographic list (0,1), (0,2), ..., (n-2,n-1).
constexpr std::size_t upper_index(int n, int i, int j) {
  const auto si = static_cast<std::size_t>(i);
  return si * static_cast<std::size_t>(n) - si * (si + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

void require_order(int n);

// ---------------------------------------------------------------------------

/// Skew-symmetric matrix stored as its strict upper triangle. The lower
/// triangle and the zero diagonal are derived, so b_ij + b_ji == 0 holds
/// structurally.
class SkewMatrix {
 public:
  /// Zero matrix of order n.
  explicit SkewMatrix(int n);

  static SkewMatrix from_upper(int n, Eigen::VectorXd upper);

  /// Takes the upper triangle of `dense` after checking
  /// |a_ij + a_ji| <= tolerance * max(1, max|a|) and a zero diagonal.
  static SkewMatrix from_dense(const Eigen::MatrixXd& dense, double tolerance = tol::kConstruction);

  int order() const noexcept { return n_; }
  const Eigen::VectorXd& upper() const noexcept { return upper_; }

  double operator()(int i, int j) const {
    if (i == j) return 0.0;
    return i < j ? upper_[upper_index(n_, i, j)] : -upper_[upper_index(n_, j, i)];
  }

  Eigen::MatrixXd dense() const;

  /// B * 1_n.
  Eigen::VectorXd row_sums() const;

  /// Largest absolute entry.
  double max_abs() const { return upper_.size() == 0 ? 0.0 : upper_.cwiseAbs().maxCoeff(); }

  bool is_zero() const { return upper_.size() == 0 || (upper_.array() == 0.0).all(); }

  SkewMatrix& operator+=(const SkewMatrix& other);
  SkewMatrix& operator-=(const SkewMatrix& other);
  SkewMatrix& operator*=(double scale);

  friend SkewMatrix operator+(SkewMatrix a, const SkewMatrix& b) { return a += b; }
  friend SkewMatrix operator-(SkewMatrix a, const SkewMatrix& b) { return a -= b; }
  friend SkewMatrix operator*(double s, SkewMatrix a) { return a *= s; }
  friend SkewMatrix operator*(SkewMatrix a, double s) { return a *= s; }
  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
    return a.n_ == b.n_ && a.upper_ == b.upper_;
  }

 private:
  SkewMatrix(int n, Eigen::VectorXd upper) : n_(n), upper_(std::move(upper)) {}

  int n_;
  Eigen::VectorXd upper_;
};

/// Coordinates of a skew matrix under the lexicographic isomorphism
/// B <-> [b_12, b_13, ..., b_{n-1,n}].
struct HalfVector {
  int n = 0;
  Eigen::VectorXd coords;
};

HalfVector to_half_vector(const SkewMatrix& b);

/// Throws LengthMismatch unless coords.size() == n(n-1)/2.
SkewMatrix from_half_vector(const HalfVector& x);

/// Recovers n from a coordinate count; throws LengthMismatch when the count
/// is not a triangular number n(n-1)/2 with n >= 2.
int order_from_half_length(std::size_t length);

// ---------------------------------------------------------------------------

struct ReciprocityViolation {
  int i = 0;
  int j = 0;
  double deviation = 0.0;  // |m_ij * m_ji - 1|
};

struct ConsistencyViolation {
  int i = 0;
  int j = 0;
  int k = 0;
  double deviation = 0.0;
};

/// Positive square matrix of ratio judgements, order >= 2.
class PCMatrix {
 public:
  explicit PCMatrix(Eigen::MatrixXd entries);

  int order() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  ReciprocityViolation worst_reciprocity() const;
  bool is_reciprocal(double tolerance = tol::kReciprocity) const {
    return worst_reciprocity().deviation <= tolerance;
  }

 private:
  Eigen::MatrixXd entries_;
};

/// Symmetric positive-definite matrix defining <A, B>_W = tr(A W B^T).
class WeightMatrix {
 public:
  /// Throws NotSymmetric or NotPositiveDefinite.
  explicit WeightMatrix(Eigen::MatrixXd entries);

  static WeightMatrix identity(int n);

  int order() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
  bool is_identity() const noexcept { return identity_; }

 private:
  Eigen::MatrixXd entries_;
  bool identity_ = false;
};

struct RankingVector {
  Eigen::VectorXd log_values;  // sums to zero
  Eigen::VectorXd weights;     // positive, sums to one

  int order() const noexcept { return static_cast<int>(log_values.size()); }
};

/// Normalized exponentials of a log-potential vector after centering it.
RankingVector ranking_from_potentials(const Eigen::VectorXd& potentials);

// ---------------------------------------------------------------------------

/// Elementwise natural log of a reciprocal PC matrix. Throws NotReciprocal
/// (naming the worst pair) when |a_ij a_ji - 1| exceeds `reciprocity_tol`.
SkewMatrix log_map(const PCMatrix& a, double reciprocity_tol = tol::kReciprocity);

/// Elementwise exponential; always reciprocal with unit diagonal.
PCMatrix exp_map(const SkewMatrix& b);

/// [v_i - v_j], i.e. v 1^T - 1 v^T.
SkewMatrix difference_matrix(const Eigen::VectorXd& v);

/// [w_i / w_j]. Throws NonPositiveWeight.
PCMatrix consistent_from_weights(const Eigen::VectorXd& w);

/// Geometric symmetrization m_ij <- sqrt(m_ij / m_ji). Repairs a
/// non-reciprocal judgement matrix; not applied unless asked for.
PCMatrix symmetrize(const PCMatrix& a);

ConsistencyViolation worst_consistency(const PCMatrix& a);
ConsistencyViolation worst_additive_consistency(const SkewMatrix& b);

/// |m_ij m_jk / m_ik - 1| <= tolerance over all index triples.
bool is_consistent(const PCMatrix& a, double tolerance = tol::kVerdict);

/// |b_ij + b_jk + b_ki| <= tolerance over all index triples.
bool is_additively_consistent(const SkewMatrix& b, double tolerance = tol::kVerdict);

}  // namespace pcortho
