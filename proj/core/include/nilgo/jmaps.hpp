#ifndef NILGO_JMAPS_HPP_
#define NILGO_JMAPS_HPP_

#include "nilgo/algebra.hpp"
#include "nilgo/polynomial.hpp"

#include <optional>
#include <vector>

namespace nilgo {

/**
 * The operators J_Z of a two-step split, defined by
 *
 *   (J_Z X, Y) = ([X, Y], Z),   X, Y in v, Z in z,
 *
 * written in the orthonormal v basis of the split. generators[i] is J of
 * the i-th orthonormal z basis vector.
 */
struct JMapFamily
{
  TwoStepSplit split;
  std::vector<Matrix> generators;
  std::optional<std::vector<RationalMatrix>> exact_generators;

  Eigen::Index m() const { return split.m(); }
  Eigen::Index n() const { return split.n(); }
  /// J_Z for Z given by coordinates in the orthonormal z basis.
  Matrix operator()(const Vector& z_coords) const;
};

/// J_Z with Z given in orthonormal z coordinates.
Matrix build_jmap(const TwoStepSplit& split, const Vector& z_coords);
/// Exact J_Z; requires rational orthonormal bases (split.has_exact_bases()).
RationalMatrix build_jmap_exact(const TwoStepSplit& split, const RationalMatrix& z_coords);

JMapFamily build_jmap_family(const TwoStepSplit& split);

/// Rank of the stacked generators; equals m iff Z -> J_Z is injective.
Eigen::Index generator_rank(const JMapFamily& family, double tau_rank = kDefaultTauRank);

/// J_i^2 = -Id and J_i J_j + J_j J_i = 0 (i != j), to `tol`.
bool is_h_type(const TwoStepSplit& split, double tol = 1e-10);
bool is_h_type(const JMapFamily& family, double tol = 1e-10);

/**
 * Pfaffian form f(x, y) = Pf(J_{x Z_1 + y Z_2}) for m = 2, with the sign
 * normalized so the first nonzero coefficient is positive. Uses exact
 * interpolation when the split has rational orthonormal bases.
 * Throws UnsupportedError for m != 2 and InputError for odd n.
 */
HomogeneousPolynomial2 pfaffian_form(const TwoStepSplit& split);

/// rho(n) = 8b + 2^c for n = (2a + 1) 2^(4b + c), 0 <= c <= 3.
int radon_hurwitz(int n);

/// m < rho(n).
bool center_bound_check(const TwoStepSplit& split);

enum class Isotypic { plus_id, minus_id, neither };
const char* to_string(Isotypic v);

/// Classifies T = J_1 J_2 ... J_7; needs m = 7 and an H-type split.
Isotypic isotypic_test(const TwoStepSplit& split, double tol = 1e-10);

}  // namespace nilgo

#endif  // NILGO_JMAPS_HPP_
