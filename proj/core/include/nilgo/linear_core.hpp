#ifndef NILGO_LINEAR_CORE_HPP_
#define NILGO_LINEAR_CORE_HPP_

#include "nilgo/rational.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace nilgo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default relative threshold for numerical rank decisions.
inline constexpr double kDefaultTauRank = 1e-9;

/// Throws InputError if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what);

/**
 * Orthonormal basis (as columns) of the numerical kernel of `a`.
 *
 * Rank is decided by the singular values: sigma_i counts iff
 * sigma_i > tau_rank * sigma_max. The result has cols(a) - rank columns.
 */
Matrix nullspace(const Matrix& a, double tau_rank);

/// As nullspace(), but singular values <= floor also count as zero. Use it
/// when `a` may be pure rounding noise and an absolute scale is known.
Matrix nullspace(const Matrix& a, double tau_rank, double floor);

/// Numerical rank with the same threshold rule as nullspace().
Eigen::Index numerical_rank(const Matrix& a, double tau_rank);

struct LeastSquaresResult
{
  Vector x;                  ///< minimum-norm minimizer
  double residual = 0.0;     ///< ||A x - b||_2
  Eigen::Index rank = 0;
  double condition = 1.0;    ///< sigma_max / smallest retained sigma
};

LeastSquaresResult least_squares(const Matrix& a, const Vector& b, double tau_rank = kDefaultTauRank, double floor = 0.0);

/// Pfaffian by skew tridiagonal elimination with full pivoting.
double pfaffian_numeric(const Matrix& s);

/// Recursive first-row expansion; reference implementation for dim <= 6.
double pfaffian_expansion(const Matrix& s);

/**
 * Canonical basis of a column span: the rows of rref(span^T) with
 * partial pivoting, returned as columns. Two spanning sets of the same
 * subspace map to the same basis (up to rounding).
 */
Matrix canonical_span(const Matrix& spanning_columns, double tau_rank);

/// Gram-Schmidt of the columns of `basis` in the inner product `gram`.
Matrix gram_orthonormalize(const Matrix& basis, const Matrix& gram);

/// Exact analogues. The orthonormalization succeeds only if every norm
/// encountered is the square of a rational.
RationalMatrix canonical_span_exact(const RationalMatrix& spanning_columns);
std::optional<RationalMatrix> gram_orthonormalize_exact(const RationalMatrix& basis, const RationalMatrix& gram);

/// Largest absolute entry, 0 for empty matrices.
double max_abs(const Matrix& a);

/// Principal angle test: every column of `a` lies in span(b) up to tol (relative).
bool span_contains(const Matrix& b, const Matrix& a, double tol);

}  // namespace nilgo

#endif  // NILGO_LINEAR_CORE_HPP_
