#ifndef NILGO_GO_CHECKER_HPP_
#define NILGO_GO_CHECKER_HPP_

#include "nilgo/algebra.hpp"
#include "nilgo/jmaps.hpp"
#include "nilgo/operator_subspaces.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilgo {

struct Tolerances
{
  double feas = 1e-8;              ///< relative residual accepted as solved
  double refute = 1e-4;            ///< relative residual needed to refute
  double condition_limit = 1e10;   ///< refutation needs a better conditioned system
  double tau_rank = kDefaultTauRank;
};

struct SamplerConfig
{
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  Tolerances tol;
  bool sweep = true;        ///< deterministic basis vectors and pairwise sums
  bool keep_trace = false;  ///< store the solution found for every sample
};

enum class CertificateStatus { verified_sampled, verified_exact, refuted, inconclusive };
const char* to_string(CertificateStatus s);

struct Witness
{
  std::size_t sample = 0;
  Vector x;
  Vector y;
  double residual = 0.0;        ///< relative residual, floating point
  bool exact_confirmed = false; ///< rational least squares also leaves a positive residual
  double exact_residual = 0.0;  ///< relative residual from the rational re-check
};

struct SampleRecord
{
  std::size_t sample = 0;
  Vector x;
  Vector y;
  Matrix solution;  ///< operator found (D for Gordon/KV, X for TNC)
  double residual = 0.0;
};

struct GOCertificate
{
  std::string check;
  CertificateStatus status = CertificateStatus::inconclusive;
  std::size_t samples = 0;
  double max_residual = 0.0;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::optional<Witness> witness;
  std::vector<SampleRecord> trace;

  bool verified() const
  {
    return status == CertificateStatus::verified_sampled || status == CertificateStatus::verified_exact;
  }
};

/**
 * Reductive decomposition g = h + p with p identified with a metric
 * algebra: the p-part of [X, Y] for X, Y in p is p_algebra.bracket, h acts
 * on p by the matrices h_basis, and the inner product is p_algebra.gram().
 */
struct ReductiveDecomposition
{
  MetricLieAlgebra p_algebra;
  std::vector<Matrix> h_basis;
  std::optional<std::vector<RationalMatrix>> exact_h_basis;

  Eigen::Index p_dim() const { return static_cast<Eigen::Index>(p_algebra.dim()); }
};

/// Isometry algebra of a nilmanifold: h = D(n), p = n.
ReductiveDecomposition nilmanifold_decomposition(const MetricLieAlgebra& l, double tau_rank = kDefaultTauRank);
ReductiveDecomposition nilmanifold_decomposition(const MetricLieAlgebra& l, const DerivationAlgebra& h);

struct KvSolution
{
  Vector z;                  ///< coefficients in h_basis
  double residual = 0.0;     ///< ||A z - b||
  double relative = 0.0;     ///< residual / (||X||^2 ||c||)
  double condition = 1.0;
};

/// Minimum-norm Z in h minimizing sum_j (([X + Z, e_j]_p, X))^2.
KvSolution kv_solve(const ReductiveDecomposition& decomp, const Vector& x, double tau_rank = kDefaultTauRank);

GOCertificate kv_go_check(const ReductiveDecomposition& decomp, const SamplerConfig& cfg = {});

/**
 * For sampled X in z and Y in v looks for D in D(n) (optionally also in
 * restrict_to, a space of d x d operators) with D(X) = 0 and D(Y) = J_X(Y).
 * Requires [n, n] = z; throws PreconditionError otherwise.
 */
GOCertificate gordon_go_check(const MetricLieAlgebra& l, const SamplerConfig& cfg = {},
                              const std::vector<Matrix>* restrict_to = nullptr);

/**
 * Transitive normalizer condition of V with respect to nprime: for sampled
 * Y and Z in V, X in nprime with [X, Z] = 0 and X(Y) = Z(Y). Throws
 * InputError when nprime is not inside the normalizer of V.
 */
GOCertificate tnc_check(const SkewOperatorSubspace& v, const SkewOperatorSubspace& nprime, const SamplerConfig& cfg = {});

/// tnc_check with nprime = centralizer of V.
GOCertificate centralizer_type_check(const SkewOperatorSubspace& v, const SamplerConfig& cfg = {});

/// Inner product (.,.)_1 on V, symmetric positive definite.
struct MetricParameter
{
  Matrix q;
  std::optional<RationalMatrix> exact;

  static MetricParameter identity(Eigen::Index m);
  static MetricParameter from_double(const Matrix& q);
  static MetricParameter from_exact(const RationalMatrix& q);
  Eigen::Index dim() const { return q.rows(); }
};

/**
 * The algebra V + R^n with V central and ([X, Y], Z)_1 = (Z(X), Y) for
 * X, Y in R^n. Basis order: the basis of V first, then e_1..e_n; the gram
 * is diag(q, I).
 */
MetricLieAlgebra build_nilalgebra_from_subspace(const SkewOperatorSubspace& v, const MetricParameter& q);

/// Whether V is a Lie subalgebra of so(n).
bool naturally_reductive_flag(const SkewOperatorSubspace& v, double tau_rank = kDefaultTauRank);

/// Projection of V onto the derived part of the algebra it generates, along the center.
SkewOperatorSubspace semisimple_projection(const SkewOperatorSubspace& v, double tau_rank = kDefaultTauRank);

/// Center of the centralizer of V in so(n).
SkewOperatorSubspace centralizer_center(const SkewOperatorSubspace& v, double tau_rank = kDefaultTauRank);

/**
 * {Z + psi(Z)}: psi is given by the images of v.basis(). Needs V inside the
 * derived part of its generated algebra (PreconditionError) and every image
 * in the center of the centralizer (InputError).
 */
SkewOperatorSubspace center_shift(const SkewOperatorSubspace& v, const std::vector<Matrix>& psi,
                                  double tau_rank = kDefaultTauRank);

struct EigenspaceReport
{
  Matrix l_basis;                  ///< orthonormal basis of {Z : U Z = V Z}
  bool invariant = false;          ///< U L and V L stay in L
  std::vector<double> eigenvalues; ///< distinct eigenvalues of U^2 met by the components
  bool components_ok = false;      ///< every component lies in L and is a V^2 eigenvector
  double max_residual = 0.0;
};

/// Splits elements of L_{U,V} into U^2 eigencomponents and checks them.
EigenspaceReport common_eigenspace_check(const Matrix& u, const Matrix& v, const std::optional<Vector>& z = std::nullopt);

/// [V, W] = 0 for V, W commuting with a U of simple spectrum; preconditions are verified.
bool commuting_triple_check(const Matrix& u, const Matrix& v, const Matrix& w);

/// Riehm's table for H-type algebras with m-dimensional center and n-dimensional v.
bool riehm_predict(int m, int n, std::optional<Isotypic> isotypic = std::nullopt);

}  // namespace nilgo

#endif  // NILGO_GO_CHECKER_HPP_
