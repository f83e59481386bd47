#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pcortho/core.hpp"

namespace pcortho {

/// sum_ij a_ij b_ij, accumulated row-major.
double frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// 2 sum_{i<j} a_ij b_ij.
double frobenius(const SkewMatrix& a, const SkewMatrix& b);

/// tr(A W B^T) = sum_ij (AW)_ij b_ij. With W = I the product AW reproduces A
/// exactly, so the result is bit-equal to frobenius(A, B).
double w_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const WeightMatrix& w);
double w_frobenius(const SkewMatrix& a, const SkewMatrix& b, const WeightMatrix& w);

/// Closed form of <f(v), f(u)>_W where f(v) = v 1^T - 1 v^T:
///   (1'W1) u'v - (1'Wu)(1'v) - (v'W1)(u'1) + n v'Wu.
double difference_pair_w(const Eigen::VectorXd& v, const Eigen::VectorXd& u, const WeightMatrix& w);

/// (1'W1) I + n W. Positive definite whenever W is; restricted to the
/// hyperplane orthogonal to 1 it reproduces <f(v), f(u)>_W.
Eigen::MatrixXd metric_matrix(const WeightMatrix& w);

/// Attempts an unpivoted LDL^T elimination; true iff every pivot exceeds
/// 1e-12 times the largest diagonal entry. Throws NotSymmetric when W is not
/// symmetric within 1e-10 relative.
bool check_positive_definite(const Eigen::MatrixXd& w);

/// One of the three inner products in use: Frobenius and W-Frobenius on
/// matrices, and v'Mu on vectors.
class InnerProduct {
 public:
  enum class Kind { Frobenius, WeightedFrobenius, VectorMetric };

  static InnerProduct frobenius() { return InnerProduct(Kind::Frobenius, std::nullopt, {}); }
  static InnerProduct weighted(WeightMatrix w) { return InnerProduct(Kind::WeightedFrobenius, std::move(w), {}); }
  /// Throws NotSymmetric / NotPositiveDefinite.
  static InnerProduct vector_metric(Eigen::MatrixXd m);

  Kind kind() const noexcept { return kind_; }
  bool acts_on_matrices() const noexcept { return kind_ != Kind::VectorMetric; }
  const std::optional<WeightMatrix>& weight() const noexcept { return weight_; }
  const Eigen::MatrixXd& metric() const noexcept { return metric_; }
  std::string name() const;

  double operator()(const SkewMatrix& a, const SkewMatrix& b) const;
  double operator()(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;
  double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  /// Gram matrix G_ij = ip(e_i, e_j) of skew elements. For the weighted kind
  /// each e_i W is formed once.
  Eigen::MatrixXd gram(const std::vector<SkewMatrix>& elements) const;

  /// ip(x, e_i) for every element.
  Eigen::VectorXd against(const SkewMatrix& x, const std::vector<SkewMatrix>& elements) const;

 private:
  InnerProduct(Kind kind, std::optional<WeightMatrix> w, Eigen::MatrixXd m)
      : kind_(kind), weight_(std::move(w)), metric_(std::move(m)) {}

  Kind kind_;
  std::optional<WeightMatrix> weight_;
  Eigen::MatrixXd metric_;
};

/// (x'1)(y'1) + base(f(x), f(y)); an inner product on R^n for any matrix
/// inner product `base`. Throws ShapeMismatch if `base` acts on vectors.
double induced_vector_ip(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const InnerProduct& base);

/// Modified Gram-Schmidt. Output k is input k minus its projections onto
/// outputs 0..k-1, with the residual updated after every subtraction. No
/// normalization. Throws DegenerateElement when a residual's norm drops
/// below `relative_floor` times the norm of the input it came from.
template <class T, class Ip>
std::vector<T> gram_schmidt(std::vector<T> elements, const Ip& ip, double relative_floor = tol::kConstruction) {
  std::vector<double> norms_sq;
  norms_sq.reserve(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const double input_norm = std::sqrt(ip(elements[k], elements[k]));
    for (std::size_t j = 0; j < k; ++j) {
      const double c = ip(elements[k], elements[j]) / norms_sq[j];
      elements[k] = elements[k] - c * elements[j];
    }
    const double nsq = ip(elements[k], elements[k]);
    if (!(std::sqrt(std::max(nsq, 0.0)) > relative_floor * input_norm) || !(nsq > 0.0)) {
      throw Error(ErrorKind::DegenerateElement,
                  "element " + std::to_string(k + 1) + " is linearly dependent on its predecessors");
    }
    norms_sq.push_back(nsq);
  }
  return elements;
}

}  // namespace pcortho
