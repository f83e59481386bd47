#include "pcortho/inner_product.hpp"

#include <algorithm>
#include <cmath>

namespace pcortho {

namespace {

void require_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "operands have shapes " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                                              std::to_string(b.cols()));
  }
}

void require_order_match(int a, int b) {
  if (a != b) {
    throw Error(ErrorKind::ShapeMismatch, "orders " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

}  // namespace

double frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  require_same_shape(a, b);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) sum += a(i, j) * b(i, j);
  }
  return sum;
}

double frobenius(const SkewMatrix& a, const SkewMatrix& b) {
  require_order_match(a.order(), b.order());
  return 2.0 * a.upper().dot(b.upper());
}

double w_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const WeightMatrix& w) {
  require_same_shape(a, b);
  if (a.cols() != w.order()) throw Error(ErrorKind::ShapeMismatch, "weight order does not match operands");
  const Eigen::MatrixXd aw = a * w.matrix();
  return frobenius(aw, b);
}

double w_frobenius(const SkewMatrix& a, const SkewMatrix& b, const WeightMatrix& w) {
  require_order_match(a.order(), b.order());
  require_order_match(a.order(), w.order());
  return w_frobenius(a.dense(), b.dense(), w);
}

double difference_pair_w(const Eigen::VectorXd& v, const Eigen::VectorXd& u, const WeightMatrix& w) {
  const auto n = v.size();
  if (u.size() != n || w.order() != n) throw Error(ErrorKind::ShapeMismatch, "vector and weight orders differ");
  const Eigen::MatrixXd& wm = w.matrix();
  const Eigen::VectorXd w_one = wm.rowwise().sum();  // W 1
  const double one_w_one = w_one.sum();
  const double one_v = v.sum();
  const double one_u = u.sum();
  return one_w_one * u.dot(v) - w_one.dot(u) * one_v - v.dot(w_one) * one_u +
         static_cast<double>(n) * v.dot(wm * u);
}

Eigen::MatrixXd metric_matrix(const WeightMatrix& w) {
  const auto n = w.order();
  return w.matrix().sum() * Eigen::MatrixXd::Identity(n, n) + static_cast<double>(n) * w.matrix();
}

bool check_positive_definite(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) throw Error(ErrorKind::NotSymmetric, "matrix is not square");
  const auto n = w.rows();
  if (n == 0) return false;
  const double scale = w.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(w(i, j) - w(j, i)) > 1e-10 * scale) {
        throw Error(ErrorKind::NotSymmetric, "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                 ") and their transpose differ");
      }
    }
  }
  const double max_diag = w.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) return false;
  const double floor = tol::kConstruction * max_diag;

  // Unpivoted LDL^T on the lower triangle; work(i, j) for j < i holds L.
  Eigen::MatrixXd work = w;
  Eigen::VectorXd d(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = work(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= work(j, k) * work(j, k) * d[k];
    if (!(pivot > floor)) return false;
    d[j] = pivot;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = work(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= work(i, k) * work(j, k) * d[k];
      work(i, j) = s / pivot;
    }
  }
  return true;
}

// InnerProduct ------------------------------------------------------------------

InnerProduct InnerProduct::vector_metric(Eigen::MatrixXd m) {
  if (!check_positive_definite(m)) throw Error(ErrorKind::NotPositiveDefinite, "vector metric is not positive definite");
  return InnerProduct(Kind::VectorMetric, std::nullopt, std::move(m));
}

std::string InnerProduct::name() const {
  switch (kind_) {
    case Kind::Frobenius: return "frobenius";
    case Kind::WeightedFrobenius: return "w-frobenius";
    case Kind::VectorMetric: return "vector-metric";
  }
  return "unknown";
}

double InnerProduct::operator()(const SkewMatrix& a, const SkewMatrix& b) const {
  switch (kind_) {
    case Kind::Frobenius: return pcortho::frobenius(a, b);
    case Kind::WeightedFrobenius: return w_frobenius(a, b, *weight_);
    case Kind::VectorMetric: break;
  }
  throw Error(ErrorKind::ShapeMismatch, "vector metric cannot evaluate matrices");
}

double InnerProduct::operator()(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
  switch (kind_) {
    case Kind::Frobenius: return pcortho::frobenius(a, b);
    case Kind::WeightedFrobenius: return w_frobenius(a, b, *weight_);
    case Kind::VectorMetric:
      if (a.cols() == 1 && b.cols() == 1) return (*this)(Eigen::VectorXd(a), Eigen::VectorXd(b));
      break;
  }
  throw Error(ErrorKind::ShapeMismatch, "vector metric cannot evaluate matrices");
}

double InnerProduct::operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  if (kind_ != Kind::VectorMetric) throw Error(ErrorKind::ShapeMismatch, "matrix inner product cannot evaluate vectors");
  if (a.size() != metric_.rows() || b.size() != metric_.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "vector length does not match metric order");
  }
  return a.dot(metric_ * b);
}

Eigen::MatrixXd InnerProduct::gram(const std::vector<SkewMatrix>& elements) const {
  const auto k = static_cast<Eigen::Index>(elements.size());
  Eigen::MatrixXd g(k, k);
  if (kind_ == Kind::Frobenius) {
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = i; j < k; ++j) g(i, j) = g(j, i) = pcortho::frobenius(elements[i], elements[j]);
    }
    return g;
  }
  if (kind_ != Kind::WeightedFrobenius) throw Error(ErrorKind::ShapeMismatch, "vector metric cannot evaluate matrices");
  std::vector<Eigen::MatrixXd> dense;
  std::vector<Eigen::MatrixXd> weighted;
  dense.reserve(elements.size());
  weighted.reserve(elements.size());
  for (const auto& e : elements) {
    require_order_match(e.order(), weight_->order());
    dense.push_back(e.dense());
    weighted.push_back(dense.back() * weight_->matrix());
  }
  // tr(E_i W E_j^T) is symmetric in (i, j) because W is.
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) g(i, j) = g(j, i) = pcortho::frobenius(weighted[i], dense[j]);
  }
  return g;
}

Eigen::VectorXd InnerProduct::against(const SkewMatrix& x, const std::vector<SkewMatrix>& elements) const {
  const auto k = static_cast<Eigen::Index>(elements.size());
  Eigen::VectorXd out(k);
  if (kind_ == Kind::Frobenius) {
    for (Eigen::Index i = 0; i < k; ++i) out[i] = pcortho::frobenius(x, elements[i]);
    return out;
  }
  if (kind_ != Kind::WeightedFrobenius) throw Error(ErrorKind::ShapeMismatch, "vector metric cannot evaluate matrices");
  require_order_match(x.order(), weight_->order());
  const Eigen::MatrixXd xw = x.dense() * weight_->matrix();
  for (Eigen::Index i = 0; i < k; ++i) out[i] = pcortho::frobenius(xw, elements[i].dense());
  return out;
}

double induced_vector_ip(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const InnerProduct& base) {
  if (!base.acts_on_matrices()) throw Error(ErrorKind::ShapeMismatch, "base inner product must act on matrices");
  if (x.size() != y.size()) throw Error(ErrorKind::ShapeMismatch, "vector lengths differ");
  return x.sum() * y.sum() + base(difference_matrix(x), difference_matrix(y));
}

}  // namespace pcortho
