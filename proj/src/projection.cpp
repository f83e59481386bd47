#include "pcortho/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcortho {

namespace {

void require_order_match(int a, int b) {
  if (a != b) {
    throw Error(ErrorKind::ShapeMismatch, "orders " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

// A caller-supplied basis must be a W-orthogonal basis of l_n for this W.
void check_precomputed(const BasisSet& basis, const WeightMatrix& w) {
  require_order_match(basis.n, w.order());
  if (basis.subspace != Subspace::Consistent || basis.elements.size() != consistent_dimension(basis.n)) {
    throw Error(ErrorKind::ShapeMismatch, "precomputed basis does not span l_n");
  }
  const auto& ip = basis.inner_product;
  const bool identity_ok = ip && ip->kind() == InnerProduct::Kind::Frobenius && w.is_identity();
  const bool weighted_ok =
      ip && ip->kind() == InnerProduct::Kind::WeightedFrobenius && ip->weight()->matrix() == w.matrix();
  if (!basis.orthogonal || !(identity_ok || weighted_ok)) {
    throw Error(ErrorKind::ShapeMismatch, "precomputed basis is not orthogonal for this weight matrix");
  }
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

SkewMatrix project_ln_closed(const SkewMatrix& b) {
  const int n = b.order();
  const Eigen::VectorXd r = b.row_sums();
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::VectorXd upper(static_cast<Eigen::Index>(half_length(n)));
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) upper[k] = (r[i] - r[j]) * inv_n;
  }
  return SkewMatrix::from_upper(n, std::move(upper));
}

SkewMatrix project_ln_w(const SkewMatrix& b, const WeightMatrix& w, const BasisSet* basis) {
  require_order_match(b.order(), w.order());
  std::optional<BasisSet> owned;
  if (basis != nullptr) {
    check_precomputed(*basis, w);
  } else {
    owned = ln_w_basis(b.order(), w);
    basis = &*owned;
  }
  const auto ip = InnerProduct::weighted(w);
  const Eigen::VectorXd numerators = ip.against(b, basis->elements);

  SkewMatrix out(b.order());
  for (std::size_t k = 0; k < basis->elements.size(); ++k) {
    const auto& e = basis->elements[k];
    // ||f(y)||_W^2 has a closed form in y; fall back to the trace otherwise.
    const double norm_sq = k < basis->generators.size()
                               ? difference_pair_w(basis->generators[k], basis->generators[k], w)
                               : ip(e, e);
    out += (numerators[static_cast<Eigen::Index>(k)] / norm_sq) * e;
  }
  return out;
}

Decomposition decompose(const SkewMatrix& b, const WeightMatrix& w, const BasisSet* basis) {
  SkewMatrix consistent = project_ln_w(b, w, basis);
  SkewMatrix inconsistent = b - consistent;
  const double residual = (b - consistent - inconsistent).max_abs();
  return Decomposition{b, std::move(consistent), std::move(inconsistent), w, residual};
}

Factorization factor_pc(const PCMatrix& a, const WeightMatrix& w, double reciprocity_tol) {
  auto d = decompose(log_map(a, reciprocity_tol), w);
  PCMatrix h = exp_map(d.inconsistent);
  PCMatrix l = exp_map(d.consistent);
  return Factorization{std::move(h), std::move(l), std::move(d)};
}

RankingVector ranking(const SkewMatrix& consistent, double tolerance) {
  const auto worst = worst_additive_consistency(consistent);
  if (worst.deviation > tolerance) {
    throw Error(ErrorKind::NotConsistent, "triple (" + std::to_string(worst.i + 1) + "," + std::to_string(worst.j + 1) +
                                              "," + std::to_string(worst.k + 1) + ") has cycle sum " +
                                              std::to_string(worst.deviation));
  }
  return ranking_from_potentials(consistent.row_sums() / static_cast<double>(consistent.order()));
}

double inconsistency_ratio(const Decomposition& d) {
  if (d.input.is_zero()) throw Error(ErrorKind::ZeroMatrix, "inconsistency ratio of the zero matrix is undefined");
  const double num = w_frobenius(d.inconsistent, d.inconsistent, d.weight);
  const double den = w_frobenius(d.input, d.input, d.weight);
  return std::clamp(std::sqrt(std::max(num, 0.0) / den), 0.0, 1.0);
}

double inconsistency_ratio(const SkewMatrix& b, const WeightMatrix& w) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroMatrix, "inconsistency ratio of the zero matrix is undefined");
  return inconsistency_ratio(decompose(b, w));
}

Eigen::VectorXd oracle_coefficients(const SkewMatrix& b, const BasisSet& basis, const InnerProduct& ip) {
  require_order_match(b.order(), basis.n);
  if (basis.elements.empty()) return Eigen::VectorXd();
  const Eigen::MatrixXd gram = ip.gram(basis.elements);
  const Eigen::VectorXd rhs = ip.against(b, basis.elements);
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success || !(llt.rcond() > 1e3 * std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorKind::SingularGram, "Gram matrix of the basis is numerically singular");
  }
  return llt.solve(rhs);
}

SkewMatrix oracle_project(const SkewMatrix& b, const BasisSet& basis, const InnerProduct& ip) {
  const Eigen::VectorXd c = oracle_coefficients(b, basis, ip);
  SkewMatrix out(b.order());
  for (std::size_t k = 0; k < basis.elements.size(); ++k) out += c[static_cast<Eigen::Index>(k)] * basis.elements[k];
  return out;
}

double CorollaryReport::worst() const {
  double w = std::max({h_row_sums, h_column_sums, l_row_sums, l_column_sums});
  if (h_row_products) w = std::max(w, *h_row_products);
  if (l_row_products) w = std::max(w, *l_row_products);
  return w;
}

CorollaryReport corollary_checks(const Decomposition& d) {
  const Eigen::MatrixXd& w = d.weight.matrix();
  const Eigen::MatrixXd b = d.input.dense();
  const Eigen::MatrixXd bh = d.inconsistent.dense();
  const Eigen::MatrixXd bl = d.consistent.dense();

  CorollaryReport report;
  report.h_row_sums = max_abs((bh * w).rowwise().sum());
  report.h_column_sums = max_abs((w * bh).colwise().sum().transpose());
  report.l_row_sums = max_abs((bl * w).rowwise().sum() - (b * w).rowwise().sum());
  report.l_column_sums = max_abs(((w * bl).colwise().sum() - (w * b).colwise().sum()).transpose());
  report.w_complement = w_complement_residual(d.inconsistent, d.weight);

  if (d.weight.is_identity()) {
    const Eigen::MatrixXd phi_b = exp_map(d.input).entries();
    const Eigen::MatrixXd phi_h = exp_map(d.inconsistent).entries();
    const Eigen::MatrixXd phi_l = exp_map(d.consistent).entries();
    double h_dev = 0.0;
    double l_dev = 0.0;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      h_dev = std::max(h_dev, std::abs(phi_h.row(i).prod() - 1.0));
      l_dev = std::max(l_dev, std::abs(phi_l.row(i).prod() / phi_b.row(i).prod() - 1.0));
    }
    report.h_row_products = h_dev;
    report.l_row_products = l_dev;
  }
  return report;
}

}  // namespace pcortho
