#ifndef NILGO_INVARIANTS_HPP_
#define NILGO_INVARIANTS_HPP_

#include "nilgo/polynomial.hpp"

#include <complex>
#include <vector>

namespace nilgo {

/**
 * Roots of a binary form on the complex projective line, in the affine
 * chart w = y / x. Roots at infinity (x = 0) are counted separately.
 */
struct ProjectiveRootSet
{
  struct Root
  {
    std::complex<double> w;
    int multiplicity = 1;
  };
  std::vector<Root> roots;  ///< finite roots, one entry per distinct root
  int at_infinity = 0;
  int degree = 0;
  int real_root_count = 0;  ///< with multiplicity, infinity included
  double leading = 1.0;     ///< coefficient of the top power of w in p(1, w)
  bool exact_multiplicities = false;
};

/// Exact inputs are split into square-free factors first; float inputs are
/// clustered at 1e-10. Throws InputError for the zero form.
ProjectiveRootSet pfaffian_roots(const HomogeneousPolynomial2& p);

/// Coefficients (descending powers of x) of the form with these roots.
HomogeneousPolynomial2 polynomial_from_roots(const ProjectiveRootSet& r);

/// Sorted pairwise hyperbolic distances of the upper half-plane roots.
/// Throws UnsupportedError when a root is real.
std::vector<double> moebius_invariant(const ProjectiveRootSet& r);

/// d_H(z, w) in the upper half-plane.
double hyperbolic_distance(std::complex<double> z, std::complex<double> w);

enum class Verdict { distinct, equivalent_invariants, inconclusive };
const char* to_string(Verdict v);

/// Compares projective classes through moebius_invariant (tolerance 1e-8).
/// Equivalent invariants never imply isomorphic algebras.
Verdict distinguish(const HomogeneousPolynomial2& a, const HomogeneousPolynomial2& b);

}  // namespace nilgo

#endif  // NILGO_INVARIANTS_HPP_
