#pragma once

#include <optional>

#include <Eigen/Dense>

#include "pcortho/bases.hpp"
#include "pcortho/core.hpp"
#include "pcortho/inner_product.hpp"

namespace pcortho {

/// B = B_l + B_h with B_l in l_n and B_h in h_{n,W}, W-orthogonal.
struct Decomposition {
  SkewMatrix input;
  SkewMatrix consistent;    // B_l
  SkewMatrix inconsistent;  // B_h
  WeightMatrix weight;
  double residual_check = 0.0;  // max |B - B_l - B_h|
};

/// Frobenius projection onto l_n in closed form: (1/n) f(B 1), i.e. entry
/// (i, j) is (r_i - r_j) / n with r the row sums of B. O(n^2).
SkewMatrix project_ln_closed(const SkewMatrix& b);

/// W-orthogonal projection onto l_n by Fourier expansion
///   sum_k <B, E_k>_W / ||E_k||_W^2 E_k
/// over ln_w_basis(n, W). A precomputed W-orthogonal l_n basis for the same W
/// may be passed to skip its construction.
SkewMatrix project_ln_w(const SkewMatrix& b, const WeightMatrix& w, const BasisSet* basis = nullptr);

Decomposition decompose(const SkewMatrix& b, const WeightMatrix& w, const BasisSet* basis = nullptr);

struct Factorization {
  PCMatrix inconsistent;  // phi(B_h)
  PCMatrix consistent;    // phi(B_l)
  Decomposition decomposition;
};

/// A = phi(B_h) (Hadamard) phi(B_l) with B = log_map(A). Throws NotReciprocal.
Factorization factor_pc(const PCMatrix& a, const WeightMatrix& w, double reciprocity_tol = tol::kReciprocity);

/// Sum-zero potentials v = (1/n) B_l 1 with f(v) = B_l, and their normalized
/// exponentials. Throws NotConsistent when B_l fails the additive check.
RankingVector ranking(const SkewMatrix& consistent, double tolerance = 1e-8);

/// ||B_h||_W / ||B||_W. Throws ZeroMatrix for B = 0.
double inconsistency_ratio(const SkewMatrix& b, const WeightMatrix& w);
double inconsistency_ratio(const Decomposition& d);

/// Independent projection: solves the Gram system G c = r with
/// G_ij = ip(E_i, E_j), r_i = ip(B, E_i) over an arbitrary (not necessarily
/// orthogonal) spanning set, then returns sum c_i E_i. No Gram-Schmidt is
/// involved. Throws SingularGram when G is numerically singular.
SkewMatrix oracle_project(const SkewMatrix& b, const BasisSet& basis, const InnerProduct& ip);

/// Least-squares coefficients c from the same Gram system.
Eigen::VectorXd oracle_coefficients(const SkewMatrix& b, const BasisSet& basis, const InnerProduct& ip);

/// Maximum deviations of the row/column-sum identities of a decomposition.
/// The multiplicative (row product) forms are only evaluated for W = I.
struct CorollaryReport {
  double h_row_sums = 0.0;      // max |(B_h W) 1|
  double h_column_sums = 0.0;   // max |1' (W B_h)|
  double l_row_sums = 0.0;      // max |(B_l W) 1 - (B W) 1|
  double l_column_sums = 0.0;   // max |1' (W B_l) - 1' (W B)|
  /// max |B_h W 1 + W B_h 1|; vanishes for every W-orthogonal decomposition.
  /// The four sums above vanish only when W has constant row sums.
  double w_complement = 0.0;
  std::optional<double> h_row_products;  // max |prod_j phi(B_h)_ij - 1|
  std::optional<double> l_row_products;  // max relative gap between row products of phi(B_l) and phi(B)

  /// Largest deviation among the row/column-sum and product items.
  double worst() const;
  bool passed(double tolerance = tol::kVerdict) const { return worst() <= tolerance; }
};

CorollaryReport corollary_checks(const Decomposition& d);

}  // namespace pcortho
