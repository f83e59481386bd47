#include "pcortho/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcortho/inner_product.hpp"

namespace pcortho {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotReciprocal: return "NotReciprocal";
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotConsistent: return "NotConsistent";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::DegenerateElement: return "DegenerateElement";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

void require_order(int n) {
  if (n < 2) throw Error(ErrorKind::OrderTooSmall, "order must be at least 2, got " + std::to_string(n));
}

// SkewMatrix ----------------------------------------------------------------

SkewMatrix::SkewMatrix(int n) : n_(n), upper_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(half_length(n)))) {
  require_order(n);
}

SkewMatrix SkewMatrix::from_upper(int n, Eigen::VectorXd upper) {
  require_order(n);
  if (static_cast<std::size_t>(upper.size()) != half_length(n)) {
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(half_length(n)) +
                                               " upper entries for order " + std::to_string(n) + ", got " +
                                               std::to_string(upper.size()));
  }
  return SkewMatrix(n, std::move(upper));
}

SkewMatrix SkewMatrix::from_dense(const Eigen::MatrixXd& dense, double tolerance) {
  if (dense.rows() != dense.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix is not square");
  const int n = static_cast<int>(dense.rows());
  require_order(n);
  const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  Eigen::VectorXd upper(static_cast<Eigen::Index>(half_length(n)));
  for (int i = 0; i < n; ++i) {
    if (std::abs(dense(i, i)) > tolerance * scale) {
      throw Error(ErrorKind::NotSkew, "nonzero diagonal at " + std::to_string(i + 1));
    }
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(dense(i, j) + dense(j, i)) > tolerance * scale) {
        throw Error(ErrorKind::NotSkew,
                    "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") are not antisymmetric");
      }
      upper[static_cast<Eigen::Index>(upper_index(n, i, j))] = dense(i, j);
    }
  }
  return SkewMatrix(n, std::move(upper));
}

Eigen::MatrixXd SkewMatrix::dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
  Eigen::Index k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j, ++k) {
      out(i, j) = upper_[k];
      out(j, i) = -upper_[k];
    }
  }
  return out;
}

Eigen::VectorXd SkewMatrix::row_sums() const {
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(n_);
  Eigen::Index k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j, ++k) {
      sums[i] += upper_[k];
      sums[j] -= upper_[k];
    }
  }
  return sums;
}

SkewMatrix& SkewMatrix::operator+=(const SkewMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorKind::ShapeMismatch, "order mismatch in addition");
  upper_ += other.upper_;
  return *this;
}

SkewMatrix& SkewMatrix::operator-=(const SkewMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorKind::ShapeMismatch, "order mismatch in subtraction");
  upper_ -= other.upper_;
  return *this;
}

SkewMatrix& SkewMatrix::operator*=(double scale) {
  upper_ *= scale;
  return *this;
}

// Half vectors ---------------------------------------------------------------

HalfVector to_half_vector(const SkewMatrix& b) { return HalfVector{b.order(), b.upper()}; }

SkewMatrix from_half_vector(const HalfVector& x) { return SkewMatrix::from_upper(x.n, x.coords); }

int order_from_half_length(std::size_t length) {
  // n(n-1)/2 = length  =>  n = (1 + sqrt(1 + 8 length)) / 2
  const auto n = static_cast<int>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(length))) / 2.0));
  if (n < 2 || half_length(n) != length) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(length) + " is not a triangular count n(n-1)/2");
  }
  return n;
}

// PCMatrix --------------------------------------------------------------------

PCMatrix::PCMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw Error(ErrorKind::ShapeMismatch, "PC matrix is not square");
  require_order(static_cast<int>(entries_.rows()));
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      const double v = entries_(i, j);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::NotPositive, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                ") is not a finite positive number");
      }
    }
  }
}

ReciprocityViolation PCMatrix::worst_reciprocity() const {
  ReciprocityViolation worst;
  const int n = order();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double dev = std::abs(entries_(i, j) * entries_(j, i) - 1.0);
      if (dev > worst.deviation) worst = {i, j, dev};
    }
  }
  return worst;
}

// WeightMatrix ----------------------------------------------------------------

WeightMatrix::WeightMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw Error(ErrorKind::ShapeMismatch, "weight matrix is not square");
  require_order(static_cast<int>(entries_.rows()));
  if (!check_positive_definite(entries_)) {
    throw Error(ErrorKind::NotPositiveDefinite, "weight matrix is not positive definite");
  }
  identity_ = entries_.isIdentity(0.0);
}

WeightMatrix WeightMatrix::identity(int n) {
  require_order(n);
  return WeightMatrix(Eigen::MatrixXd::Identity(n, n));
}

// RankingVector -----------------------------------------------------------------

RankingVector ranking_from_potentials(const Eigen::VectorXd& potentials) {
  RankingVector r;
  r.log_values = potentials.array() - potentials.mean();
  const double shift = r.log_values.maxCoeff();
  r.weights = (r.log_values.array() - shift).exp();
  r.weights /= r.weights.sum();
  return r;
}

// Maps ------------------------------------------------------------------------------

SkewMatrix log_map(const PCMatrix& a, double reciprocity_tol) {
  const auto worst = a.worst_reciprocity();
  if (worst.deviation > reciprocity_tol) {
    throw Error(ErrorKind::NotReciprocal, "worst pair (" + std::to_string(worst.i + 1) + "," +
                                              std::to_string(worst.j + 1) + ") has |m_ij*m_ji - 1| = " +
                                              std::to_string(worst.deviation));
  }
  const int n = a.order();
  Eigen::VectorXd upper(static_cast<Eigen::Index>(half_length(n)));
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) upper[k] = std::log(a(i, j));
  }
  return SkewMatrix::from_upper(n, std::move(upper));
}

PCMatrix exp_map(const SkewMatrix& b) {
  const int n = b.order();
  Eigen::MatrixXd out = Eigen::MatrixXd::Ones(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = b(i, j);
      out(i, j) = std::exp(v);
      out(j, i) = std::exp(-v);
    }
  }
  return PCMatrix(std::move(out));
}

SkewMatrix difference_matrix(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd upper(static_cast<Eigen::Index>(half_length(n)));
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) upper[k] = v[i] - v[j];
  }
  return SkewMatrix::from_upper(n, std::move(upper));
}

PCMatrix consistent_from_weights(const Eigen::VectorXd& w) {
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
      throw Error(ErrorKind::NonPositiveWeight, "weight " + std::to_string(i + 1) + " is not positive");
    }
  }
  const auto n = w.size();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = i == j ? 1.0 : w[i] / w[j];
  }
  return PCMatrix(std::move(out));
}

PCMatrix symmetrize(const PCMatrix& a) {
  const int n = a.order();
  Eigen::MatrixXd out = Eigen::MatrixXd::Ones(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = std::sqrt(a(i, j) / a(j, i));
      out(i, j) = r;
      out(j, i) = 1.0 / r;
    }
  }
  return PCMatrix(std::move(out));
}

ConsistencyViolation worst_consistency(const PCMatrix& a) {
  ConsistencyViolation worst;
  const int n = a.order();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double dev = std::abs(a(i, j) * a(j, k) / a(i, k) - 1.0);
        if (dev > worst.deviation) worst = {i, j, k, dev};
      }
    }
  }
  return worst;
}

ConsistencyViolation worst_additive_consistency(const SkewMatrix& b) {
  // Skewness makes every triple with a repeated index vanish, and permuting a
  // triple only flips the sign, so i < j < k covers all of them.
  ConsistencyViolation worst;
  const int n = b.order();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double bij = b(i, j);
      for (int k = j + 1; k < n; ++k) {
        const double dev = std::abs(bij + b(j, k) + b(k, i));
        if (dev > worst.deviation) worst = {i, j, k, dev};
      }
    }
  }
  return worst;
}

bool is_consistent(const PCMatrix& a, double tolerance) { return worst_consistency(a).deviation <= tolerance; }

bool is_additively_consistent(const SkewMatrix& b, double tolerance) {
  return worst_additive_consistency(b).deviation <= tolerance;
}

}  // namespace pcortho
