#ifndef NILGO_POLYNOMIAL_HPP_
#define NILGO_POLYNOMIAL_HPP_

#include "nilgo/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nilgo {

/**
 * Homogeneous polynomial in two variables,
 *
 *   p(x, y) = sum_i coeffs[i] * x^(degree - i) * y^i,
 *
 * i.e. coefficients are listed by descending power of x. The exact
 * coefficients are present whenever the polynomial came out of an exact
 * computation; the double coefficients are always filled.
 */
struct HomogeneousPolynomial2
{
  int degree = 0;
  std::vector<double> coeffs;
  std::optional<std::vector<Rational>> exact_coeffs;

  static HomogeneousPolynomial2 from_exact(std::vector<Rational> c);
  static HomogeneousPolynomial2 from_double(std::vector<double> c);

  double evaluate(double x, double y) const;
  bool is_exact() const { return exact_coeffs.has_value(); }
  bool is_zero() const;

  /// Scales so the first nonzero coefficient is positive.
  HomogeneousPolynomial2 sign_normalized() const;
  /// p(a x + b y, c x + d y); exact when p is exact.
  HomogeneousPolynomial2 substitute(double a, double b, double c, double d) const;
  HomogeneousPolynomial2 substitute_exact(const Rational& a, const Rational& b, const Rational& c, const Rational& d) const;
};

HomogeneousPolynomial2 operator*(const HomogeneousPolynomial2& p, const HomogeneousPolynomial2& q);

/// One interpolation datum: value of the form at the point (x, y).
template<typename T>
struct FormSample
{
  T x;
  T y;
  T value;
};

/**
 * Recovers the coefficients of a degree-`degree` form from its values.
 * Needs at least degree+1 projectively distinct points; extra points are
 * used in least squares and must agree to 1e-9 relative. Throws
 * InterpolationError when underdetermined or inconsistent.
 */
HomogeneousPolynomial2 interpolate_homogeneous2(const std::vector<FormSample<double>>& evals, int degree);
/// Exact variant; consistency is checked exactly.
HomogeneousPolynomial2 interpolate_homogeneous2(const std::vector<FormSample<Rational>>& evals, int degree);

}  // namespace nilgo

#endif  // NILGO_POLYNOMIAL_HPP_
