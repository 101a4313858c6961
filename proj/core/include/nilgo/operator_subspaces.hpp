#ifndef NILGO_OPERATOR_SUBSPACES_HPP_
#define NILGO_OPERATOR_SUBSPACES_HPP_

#include "nilgo/algebra.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace nilgo {

/// dim so(n) = n(n-1)/2.
Eigen::Index so_dim(Eigen::Index n);
/// Coordinates of a skew matrix in the basis E_ab = e_a e_b^T - e_b e_a^T, a < b.
Vector so_coords(const Matrix& x);
Matrix so_matrix(const Vector& coords, Eigen::Index n);
RationalMatrix so_coords_exact(const RationalMatrix& x);
RationalMatrix so_matrix_exact(const RationalMatrix& coords, std::size_t n);

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/**
 * Linear subspace of so(n). The constructor drops elements that depend on
 * earlier ones, so basis() is always linearly independent.
 */
class SkewOperatorSubspace
{
public:
  SkewOperatorSubspace() = default;
  SkewOperatorSubspace(Eigen::Index n, const std::vector<Matrix>& spanning, double tau_rank = kDefaultTauRank);

  static SkewOperatorSubspace from_exact(std::size_t n, const std::vector<RationalMatrix>& spanning);
  /// Span of the columns of `coords` (so(n) coordinates), canonical basis.
  static SkewOperatorSubspace from_coordinates(Eigen::Index n, const Matrix& coords, double tau_rank = kDefaultTauRank);
  static SkewOperatorSubspace from_coordinates_exact(std::size_t n, const RationalMatrix& coords);
  static SkewOperatorSubspace full(Eigen::Index n);

  Eigen::Index ambient_dim() const { return n_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const std::optional<std::vector<RationalMatrix>>& exact_basis() const { return exact_; }

  /// so(n) coordinates of the basis, one column per element.
  Matrix coordinates() const;
  RationalMatrix coordinates_exact() const;
  /// Orthonormal basis of the span in so(n) coordinates.
  Matrix orthonormal_coordinates() const;
  /// Orthonormal basis of the span as matrices (Frobenius inner product up to the factor 2).
  std::vector<Matrix> orthonormal_basis() const;

  Matrix element(const Vector& coeffs) const;
  /// Relative distance of x from the span is at most tol.
  bool contains(const Matrix& x, double tol = 1e-9) const;
  bool contains(const SkewOperatorSubspace& other, double tol = 1e-9) const;

private:
  Eigen::Index n_ = 0;
  std::vector<Matrix> basis_;
  std::optional<std::vector<RationalMatrix>> exact_;
};

/// Mutual containment.
bool same_span(const SkewOperatorSubspace& a, const SkewOperatorSubspace& b, double tol = 1e-9);

/// Skew-symmetric derivations D(n) of a metric Lie algebra.
struct DerivationAlgebra
{
  std::shared_ptr<const MetricLieAlgebra> parent;
  std::vector<Matrix> basis;  ///< d x d matrices in the algebra basis
  std::optional<std::vector<RationalMatrix>> exact_basis;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }
};

/// Residual of D[X,Y] = [DX,Y] + [X,DY] over all basis pairs (max abs).
double derivation_residual(const MetricLieAlgebra& l, const Matrix& d);
/// Residual of G D + D^T G = 0 (max abs).
double skewness_residual(const MetricLieAlgebra& l, const Matrix& d);

/// Kernel of the derivation identity on D = G^{-1} S, S skew.
DerivationAlgebra skew_derivations(const MetricLieAlgebra& l, double tau_rank = kDefaultTauRank);
/// Exact rational basis; requires exact data.
DerivationAlgebra skew_derivations_exact(const MetricLieAlgebra& l);

SkewOperatorSubspace normalizer_in_so(const SkewOperatorSubspace& v, double tau_rank = kDefaultTauRank);
SkewOperatorSubspace centralizer_in_so(const SkewOperatorSubspace& v, double tau_rank = kDefaultTauRank);
/// Exact versions; require v.exact_basis().
SkewOperatorSubspace normalizer_in_so_exact(const SkewOperatorSubspace& v);
SkewOperatorSubspace centralizer_in_so_exact(const SkewOperatorSubspace& v);

bool is_subalgebra(const SkewOperatorSubspace& v, double tau_rank = kDefaultTauRank);
/// Smallest bracket-closed subspace containing v.
SkewOperatorSubspace generated_subalgebra(const SkewOperatorSubspace& v, double tau_rank = kDefaultTauRank);

struct CompactSplit
{
  SkewOperatorSubspace center_part;
  SkewOperatorSubspace derived_part;
};

/// Center and derived algebra of a subalgebra of so(n). Throws
/// PreconditionError when `a` is not bracket-closed.
CompactSplit compact_split(const SkewOperatorSubspace& a, double tau_rank = kDefaultTauRank);

}  // namespace nilgo

#endif  // NILGO_OPERATOR_SUBSPACES_HPP_
