#pragma once

// Bases of the consistent subspace l_n (image of v -> v1' - 1v') and of its
// complement h_n inside the skew-symmetric matrices, plus the incidence
// matrix of the complete comparison graph whose null space realizes h_n.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pcortho/core.hpp"
#include "pcortho/inner_product.hpp"

namespace pcortho {

enum class Subspace { Consistent, Inconsistent };

/// "l_n" or "h_n".
std::string_view to_string(Subspace s);

/// dim l_n = n - 1.
constexpr std::size_t consistent_dimension(int n) { return n < 1 ? 0 : static_cast<std::size_t>(n - 1); }

/// dim h_n = (n - 1)(n - 2) / 2.
constexpr std::size_t inconsistent_dimension(int n) { return n < 2 ? 0 : half_length(n - 1); }

struct BasisSet {
  Subspace subspace = Subspace::Consistent;
  int n = 0;
  std::vector<SkewMatrix> elements;
  /// The geometry in which `orthogonal` holds; empty for a plain spanning set.
  std::optional<InnerProduct> inner_product;
  bool orthogonal = false;
  /// For l_n bases: the vectors y_k with elements[k] = f(y_k), all orthogonal to 1.
  std::vector<Eigen::VectorXd> generators;
};

/// y_k = [1, ..., 1 (k times), -k, 0, ..., 0], k = 1..n-1. Mutually
/// orthogonal and orthogonal to 1_n in exact arithmetic.
std::vector<Eigen::VectorXd> complement_vectors(int n);

/// {f(y_1), ..., f(y_{n-1})}: Frobenius-orthogonal, ||f(y_k)||^2 = 2n k(k+1).
BasisSet ln_basis(int n);

/// W-orthogonal basis of l_n: the complement vectors are orthogonalized under
/// v'Mu with M = metric_matrix(W) and then mapped through f. Throws
/// ShapeMismatch when W is not of order n.
BasisSet ln_w_basis(int n, const WeightMatrix& w);

/// Cycle basis of h_n: for 2 <= i < j <= n (1-based) the cycle 1 -> i -> j -> 1
/// gives N with N[1,i] = N[i,j] = 1, N[1,j] = -1. Not orthogonal; ordered
/// lexicographically in (i, j). Empty for n = 2.
BasisSet hn_cycle_basis(int n);

/// Frobenius Gram-Schmidt over the cycle basis.
BasisSet orthogonalize(const BasisSet& basis);

/// Rescales every element to unit norm in the basis geometry (Frobenius when
/// none is recorded).
BasisSet normalize(const BasisSet& basis);

/// Vertex-by-edge incidence matrix of the complete graph with edges i -> j for
/// i < j, in lexicographic order. Column r has +1 at its tail, -1 at its head.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(int n);

  int vertices() const noexcept { return n_; }
  int edges() const noexcept { return static_cast<int>(entries_.cols()); }
  const Eigen::MatrixXi& entries() const noexcept { return entries_; }
  /// 0-based (tail, head) of edge r.
  std::pair<int, int> edge(int r) const { return edges_[static_cast<std::size_t>(r)]; }

  /// P x. For x = half vector of B this equals B 1_n.
  Eigen::VectorXd apply(const HalfVector& x) const;

  /// Numerical rank (full-pivot LU).
  int rank() const;

 private:
  int n_;
  Eigen::MatrixXi entries_;
  std::vector<std::pair<int, int>> edges_;
};

IncidenceMatrix incidence_matrix(int n);

/// True iff ||B W 1||_inf <= 1e-10 (1 + ||B||_inf ||W||_inf), with induced
/// infinity norms (max absolute row sum).
bool hn_membership(const SkewMatrix& b, const WeightMatrix& w, double relative_tol = tol::kIdentity);

/// ||B W 1||_inf, the quantity tested by hn_membership.
double hn_residual(const SkewMatrix& b, const WeightMatrix& w);

/// Since <B, f(v)>_W = v'(BW1 + WB1), B is W-orthogonal to l_n iff
/// BW1 + WB1 = 0. This coincides with BW1 = 0 (hn_membership) when the rows
/// of W share one sum, W = I included, but not for a general W.
double w_complement_residual(const SkewMatrix& b, const WeightMatrix& w);
bool in_w_complement(const SkewMatrix& b, const WeightMatrix& w, double relative_tol = tol::kIdentity);

/// Max absolute row sum.
double inf_norm(const Eigen::MatrixXd& m);
double inf_norm(const SkewMatrix& m);

/// Rank of the stacked half vectors of the elements (full-pivot LU).
int half_vector_rank(const std::vector<SkewMatrix>& elements);

}  // namespace pcortho
