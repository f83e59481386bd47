#include "pcortho/bases.hpp"

#include <cmath>

namespace pcortho {

std::string_view to_string(Subspace s) { return s == Subspace::Consistent ? "l_n" : "h_n"; }

std::vector<Eigen::VectorXd> complement_vectors(int n) {
  require_order(n);
  std::vector<Eigen::VectorXd> out;
  out.reserve(consistent_dimension(n));
  for (int k = 1; k < n; ++k) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    y.head(k).setOnes();
    y[k] = -static_cast<double>(k);
    out.push_back(std::move(y));
  }
  return out;
}

BasisSet ln_basis(int n) {
  BasisSet basis;
  basis.subspace = Subspace::Consistent;
  basis.n = n;
  basis.generators = complement_vectors(n);
  for (const auto& y : basis.generators) basis.elements.push_back(difference_matrix(y));
  basis.inner_product = InnerProduct::frobenius();
  basis.orthogonal = true;
  return basis;
}

BasisSet ln_w_basis(int n, const WeightMatrix& w) {
  require_order(n);
  if (w.order() != n) {
    throw Error(ErrorKind::ShapeMismatch,
                "weight matrix has order " + std::to_string(w.order()) + ", expected " + std::to_string(n));
  }
  const auto metric = InnerProduct::vector_metric(metric_matrix(w));
  BasisSet basis;
  basis.subspace = Subspace::Consistent;
  basis.n = n;
  basis.generators = gram_schmidt(complement_vectors(n), metric);
  for (const auto& y : basis.generators) basis.elements.push_back(difference_matrix(y));
  basis.inner_product = InnerProduct::weighted(w);
  basis.orthogonal = true;
  return basis;
}

BasisSet hn_cycle_basis(int n) {
  require_order(n);
  BasisSet basis;
  basis.subspace = Subspace::Inconsistent;
  basis.n = n;
  basis.elements.reserve(inconsistent_dimension(n));
  // Vertex 0 closes every cycle 0 -> i -> j -> 0; (i, j) ranges over the
  // edges of the graph with vertex 0 removed.
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXd upper = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(half_length(n)));
      upper[static_cast<Eigen::Index>(upper_index(n, 0, i))] = 1.0;
      upper[static_cast<Eigen::Index>(upper_index(n, i, j))] = 1.0;
      upper[static_cast<Eigen::Index>(upper_index(n, 0, j))] = -1.0;
      basis.elements.push_back(SkewMatrix::from_upper(n, std::move(upper)));
    }
  }
  return basis;
}

BasisSet orthogonalize(const BasisSet& basis) {
  const auto ip = InnerProduct::frobenius();
  BasisSet out = basis;
  out.elements = gram_schmidt(basis.elements, ip);
  out.inner_product = ip;
  out.orthogonal = true;
  out.generators.clear();
  return out;
}

BasisSet normalize(const BasisSet& basis) {
  const auto ip = basis.inner_product.value_or(InnerProduct::frobenius());
  BasisSet out = basis;
  for (std::size_t k = 0; k < out.elements.size(); ++k) {
    const double scale = 1.0 / std::sqrt(ip(out.elements[k], out.elements[k]));
    out.elements[k] *= scale;
    if (k < out.generators.size()) out.generators[k] *= scale;
  }
  return out;
}

// IncidenceMatrix ---------------------------------------------------------------

IncidenceMatrix::IncidenceMatrix(int n) : n_(n) {
  require_order(n);
  const auto m = static_cast<Eigen::Index>(half_length(n));
  entries_ = Eigen::MatrixXi::Zero(n, m);
  edges_.reserve(static_cast<std::size_t>(m));
  Eigen::Index r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++r) {
      entries_(i, r) = 1;
      entries_(j, r) = -1;
      edges_.emplace_back(i, j);
    }
  }
}

Eigen::VectorXd IncidenceMatrix::apply(const HalfVector& x) const {
  if (x.n != n_ || x.coords.size() != entries_.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "half vector does not match incidence matrix");
  }
  return entries_.cast<double>() * x.coords;
}

int IncidenceMatrix::rank() const {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(entries_.cast<double>());
  return static_cast<int>(lu.rank());
}

IncidenceMatrix incidence_matrix(int n) { return IncidenceMatrix(n); }

// Membership ----------------------------------------------------------------------

double inf_norm(const Eigen::MatrixXd& m) {
  return m.rows() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

double inf_norm(const SkewMatrix& m) { return inf_norm(m.dense()); }

double hn_residual(const SkewMatrix& b, const WeightMatrix& w) {
  if (b.order() != w.order()) throw Error(ErrorKind::ShapeMismatch, "skew and weight orders differ");
  const Eigen::VectorXd w_one = w.matrix().rowwise().sum();
  return (b.dense() * w_one).cwiseAbs().maxCoeff();
}

bool hn_membership(const SkewMatrix& b, const WeightMatrix& w, double relative_tol) {
  const double residual = hn_residual(b, w);
  return residual <= relative_tol * (1.0 + inf_norm(b) * inf_norm(w.matrix()));
}

double w_complement_residual(const SkewMatrix& b, const WeightMatrix& w) {
  if (b.order() != w.order()) throw Error(ErrorKind::ShapeMismatch, "skew and weight orders differ");
  const Eigen::MatrixXd dense = b.dense();
  const Eigen::VectorXd w_one = w.matrix().rowwise().sum();
  return (dense * w_one + w.matrix() * b.row_sums()).cwiseAbs().maxCoeff();
}

bool in_w_complement(const SkewMatrix& b, const WeightMatrix& w, double relative_tol) {
  const double residual = w_complement_residual(b, w);
  return residual <= relative_tol * (1.0 + inf_norm(b) * inf_norm(w.matrix()));
}

int half_vector_rank(const std::vector<SkewMatrix>& elements) {
  if (elements.empty()) return 0;
  const auto len = elements.front().upper().size();
  Eigen::MatrixXd stack(len, static_cast<Eigen::Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) stack.col(static_cast<Eigen::Index>(k)) = elements[k].upper();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(stack);
  return static_cast<int>(lu.rank());
}

}  // namespace pcortho
