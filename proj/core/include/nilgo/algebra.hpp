#ifndef NILGO_ALGEBRA_HPP_
#define NILGO_ALGEBRA_HPP_

#include "nilgo/linear_core.hpp"
#include "nilgo/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nilgo {

/// Rational structure constants and gram matrix, when the algebra has them.
struct ExactAlgebraData
{
  std::vector<Rational> structure;  ///< c[(i*d + j)*d + k]
  RationalMatrix gram;
};

/**
 * Real Lie algebra on a fixed basis e_0..e_{d-1} with an inner product.
 *
 * [e_i, e_j] = sum_k c(i, j, k) e_k and (e_i, e_j) = gram(i, j). The
 * constructor only checks shapes and finiteness; validate() reports whether
 * the data actually defines a metric Lie algebra.
 */
class MetricLieAlgebra
{
public:
  MetricLieAlgebra() = default;
  MetricLieAlgebra(std::size_t dim, std::vector<double> structure, Matrix gram);

  static MetricLieAlgebra from_exact(std::size_t dim, std::vector<Rational> structure, RationalMatrix gram);
  static MetricLieAlgebra abelian(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double c(std::size_t i, std::size_t j, std::size_t k) const { return structure_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<double>& structure() const { return structure_; }
  const Matrix& gram() const { return gram_; }
  const std::optional<ExactAlgebraData>& exact() const { return exact_; }
  bool has_exact() const { return exact_.has_value(); }

  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of Y -> [x, Y].
  Matrix ad(const Vector& x) const;
  double inner(const Vector& x, const Vector& y) const { return x.dot(gram_ * y); }
  double max_abs_structure() const;

  /// Exact bracket of two column vectors; requires exact data.
  RationalMatrix bracket_exact(const RationalMatrix& x, const RationalMatrix& y) const;
  RationalMatrix ad_exact(const RationalMatrix& x) const;

  /// Same algebra with a different inner product (exact if both are).
  MetricLieAlgebra with_gram(const Matrix& gram) const;
  MetricLieAlgebra with_exact_gram(const RationalMatrix& gram) const;

private:
  std::size_t dim_ = 0;
  std::vector<double> structure_;
  Matrix gram_;
  std::optional<ExactAlgebraData> exact_;
};

struct ValidationReport
{
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  double gram_symmetry_residual = 0.0;
  double gram_min_eigenvalue = 0.0;
  bool antisymmetric = true;
  bool jacobi = true;
  bool gram_positive_definite = true;
  bool exact = false;  ///< decided in rational arithmetic

  bool passed() const { return antisymmetric && jacobi && gram_positive_definite; }
};

ValidationReport validate(const MetricLieAlgebra& l);

/// A linear subspace of the algebra, in two bases.
struct Subspace
{
  Matrix span;         ///< canonical (reduced echelon) basis, columns
  Matrix orthonormal;  ///< gram-orthonormal basis of the same space
  std::optional<RationalMatrix> exact_span;
  std::optional<RationalMatrix> exact_orthonormal;

  Eigen::Index dim() const { return span.cols(); }
};

Subspace center(const MetricLieAlgebra& l, double tau_rank = kDefaultTauRank);
Subspace derived(const MetricLieAlgebra& l, double tau_rank = kDefaultTauRank);
/// Smallest k with the lower central series term C^{k+1} = 0, or nullopt
/// when the algebra is not nilpotent. Abelian (including dim 0) gives 1.
std::optional<int> nilpotency_class(const MetricLieAlgebra& l, double tau_rank = kDefaultTauRank);

/// Orthogonal decomposition n = z + v with z the center.
struct TwoStepSplit
{
  std::shared_ptr<const MetricLieAlgebra> parent;
  Subspace z;
  Subspace v;
  bool derived_equals_center = false;

  Eigen::Index m() const { return z.dim(); }
  Eigen::Index n() const { return v.dim(); }
  const Matrix& z_basis() const { return z.orthonormal; }
  const Matrix& v_basis() const { return v.orthonormal; }
  bool has_exact_bases() const { return z.exact_orthonormal.has_value() && v.exact_orthonormal.has_value(); }
};

/// Throws NotTwoStepError unless the nilpotency class is exactly 2.
TwoStepSplit split_two_step(const MetricLieAlgebra& l, double tau_rank = kDefaultTauRank);

struct FlatFactor
{
  Eigen::Index euclidean_dim = 0;
  MetricLieAlgebra reduced;
  Matrix embedding;  ///< columns: basis of [n,n] + v in original coordinates
};

/// Splits off the Euclidean factor z cap [n,n]^perp. Class > 2 is unsupported.
FlatFactor detect_flat_factor(const MetricLieAlgebra& l, double tau_rank = kDefaultTauRank);

struct NonsingularResult
{
  enum class Answer { yes, no, sampled_yes };
  Answer answer = Answer::no;
  std::optional<Vector> witness;  ///< central Z with J_Z singular
  std::string method;
};

const char* to_string(NonsingularResult::Answer a);

/**
 * Decides whether every nonzero J_Z is invertible. Exact for m <= 2 when the
 * algebra has rational data (determinant for m = 1, real-root count of the
 * Pfaffian form for m = 2); sampled over 1000 seeded directions otherwise.
 */
NonsingularResult is_nonsingular(const MetricLieAlgebra& l, std::uint64_t seed = 0,
                                 double tau_rank = kDefaultTauRank);

/// Number of distinct real roots of a rational univariate polynomial
/// (coefficients by ascending power), by Sturm sequences.
int count_real_roots(const std::vector<Rational>& ascending);

}  // namespace nilgo

#endif  // NILGO_ALGEBRA_HPP_
