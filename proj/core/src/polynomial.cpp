#include "nilgo/polynomial.hpp"

#include "nilgo/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace nilgo {

namespace {

template<typename T>
std::vector<T> multiply(const std::vector<T>& p, const std::vector<T>& q)
{
  std::vector<T> out(p.size() + q.size() - 1, T(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) { out[i + j] += p[i] * q[j]; }
  }
  return out;
}

// Coefficients of sum_i c_i (a x + b y)^(deg-i) (c x + d y)^i.
template<typename T>
std::vector<T> substitute_coeffs(const std::vector<T>& coeffs, const T& a, const T& b, const T& c, const T& d)
{
  const std::size_t deg = coeffs.size() - 1;
  std::vector<std::vector<T>> pow_first{{T(1)}};
  std::vector<std::vector<T>> pow_second{{T(1)}};
  for (std::size_t k = 0; k < deg; ++k) {
    pow_first.push_back(multiply(pow_first.back(), std::vector<T>{a, b}));
    pow_second.push_back(multiply(pow_second.back(), std::vector<T>{c, d}));
  }
  std::vector<T> out(deg + 1, T(0));
  for (std::size_t i = 0; i <= deg; ++i) {
    const std::vector<T> term = multiply(pow_first[deg - i], pow_second[i]);
    for (std::size_t k = 0; k <= deg; ++k) { out[k] += coeffs[i] * term[k]; }
  }
  return out;
}

bool projectively_equal(double x1, double y1, double x2, double y2)
{
  const double scale = std::hypot(x1, y1) * std::hypot(x2, y2);
  return std::abs(x1 * y2 - x2 * y1) <= 1e-12 * scale;
}

template<typename T, typename Same>
void require_distinct_points(const std::vector<FormSample<T>>& evals, int degree, Same same)
{
  if (degree < 0) { throw InputError("interpolate_homogeneous2: negative degree"); }
  std::vector<std::size_t> reps;
  for (std::size_t k = 0; k < evals.size(); ++k) {
    if (evals[k].x == 0 && evals[k].y == 0) { throw InterpolationError("interpolate_homogeneous2: point (0,0)"); }
    bool seen = false;
    for (std::size_t r : reps) {
      if (same(evals[r], evals[k])) {
        seen = true;
        break;
      }
    }
    if (!seen) { reps.push_back(k); }
  }
  if (reps.size() < static_cast<std::size_t>(degree) + 1) {
    throw InterpolationError("interpolate_homogeneous2: fewer than degree+1 projectively distinct points");
  }
}

}  // namespace

HomogeneousPolynomial2 HomogeneousPolynomial2::from_exact(std::vector<Rational> c)
{
  if (c.empty()) { throw InputError("polynomial: empty coefficient list"); }
  HomogeneousPolynomial2 p;
  p.degree = static_cast<int>(c.size()) - 1;
  p.coeffs.reserve(c.size());
  for (const auto& v : c) { p.coeffs.push_back(v.get_d()); }
  p.exact_coeffs = std::move(c);
  return p;
}

HomogeneousPolynomial2 HomogeneousPolynomial2::from_double(std::vector<double> c)
{
  if (c.empty()) { throw InputError("polynomial: empty coefficient list"); }
  for (double v : c) {
    if (!std::isfinite(v)) { throw InputError("polynomial: non-finite coefficient"); }
  }
  HomogeneousPolynomial2 p;
  p.degree = static_cast<int>(c.size()) - 1;
  p.coeffs = std::move(c);
  return p;
}

double HomogeneousPolynomial2::evaluate(double x, double y) const
{
  double s = 0.0;
  for (int i = 0; i <= degree; ++i) {
    s += coeffs[static_cast<std::size_t>(i)] * std::pow(x, degree - i) * std::pow(y, i);
  }
  return s;
}

bool HomogeneousPolynomial2::is_zero() const
{
  if (exact_coeffs) {
    return std::all_of(exact_coeffs->begin(), exact_coeffs->end(), [](const Rational& v) { return sgn(v) == 0; });
  }
  return std::all_of(coeffs.begin(), coeffs.end(), [](double v) { return v == 0.0; });
}

HomogeneousPolynomial2 HomogeneousPolynomial2::sign_normalized() const
{
  if (exact_coeffs) {
    for (const auto& v : *exact_coeffs) {
      if (sgn(v) == 0) { continue; }
      if (sgn(v) > 0) { return *this; }
      std::vector<Rational> neg = *exact_coeffs;
      for (auto& w : neg) { w = -w; }
      return from_exact(std::move(neg));
    }
    return *this;
  }
  double scale = 0.0;
  for (double v : coeffs) { scale = std::max(scale, std::abs(v)); }
  for (double v : coeffs) {
    if (std::abs(v) <= 1e-12 * scale) { continue; }
    if (v > 0.0) { return *this; }
    std::vector<double> neg = coeffs;
    for (auto& w : neg) { w = -w; }
    return from_double(std::move(neg));
  }
  return *this;
}

HomogeneousPolynomial2 HomogeneousPolynomial2::substitute(double a, double b, double c, double d) const
{
  if (exact_coeffs) { return substitute_exact(to_rational(a), to_rational(b), to_rational(c), to_rational(d)); }
  return from_double(substitute_coeffs(coeffs, a, b, c, d));
}

HomogeneousPolynomial2 HomogeneousPolynomial2::substitute_exact(const Rational& a, const Rational& b, const Rational& c,
                                                                const Rational& d) const
{
  std::vector<Rational> base;
  if (exact_coeffs) {
    base = *exact_coeffs;
  } else {
    for (double v : coeffs) { base.push_back(to_rational(v)); }
  }
  return from_exact(substitute_coeffs(base, a, b, c, d));
}

HomogeneousPolynomial2 operator*(const HomogeneousPolynomial2& p, const HomogeneousPolynomial2& q)
{
  if (p.exact_coeffs && q.exact_coeffs) { return HomogeneousPolynomial2::from_exact(multiply(*p.exact_coeffs, *q.exact_coeffs)); }
  return HomogeneousPolynomial2::from_double(multiply(p.coeffs, q.coeffs));
}

HomogeneousPolynomial2 interpolate_homogeneous2(const std::vector<FormSample<double>>& evals, int degree)
{
  require_distinct_points(evals, degree, [](const FormSample<double>& s, const FormSample<double>& t) {
    return projectively_equal(s.x, s.y, t.x, t.y);
  });
  const auto rows = static_cast<Eigen::Index>(evals.size());
  const Eigen::Index cols = degree + 1;
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const auto& s = evals[static_cast<std::size_t>(k)];
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.value)) {
      throw InputError("interpolate_homogeneous2: non-finite sample");
    }
    // Normalize each row so points far from the unit circle do not dominate.
    const double r = std::hypot(s.x, s.y);
    const double x = s.x / r;
    const double y = s.y / r;
    for (Eigen::Index i = 0; i < cols; ++i) {
      a(k, i) = std::pow(x, static_cast<double>(degree - i)) * std::pow(y, static_cast<double>(i));
    }
    b(k) = s.value / std::pow(r, degree);
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  const double scale = std::max(b.cwiseAbs().maxCoeff(), c.cwiseAbs().maxCoeff());
  if ((a * c - b).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1e-300)) {
    throw InterpolationError("interpolate_homogeneous2: inconsistent evaluations");
  }
  return HomogeneousPolynomial2::from_double(std::vector<double>(c.data(), c.data() + c.size()));
}

HomogeneousPolynomial2 interpolate_homogeneous2(const std::vector<FormSample<Rational>>& evals, int degree)
{
  require_distinct_points(evals, degree, [](const FormSample<Rational>& s, const FormSample<Rational>& t) {
    return s.x * t.y == s.y * t.x;
  });
  const std::size_t rows = evals.size();
  const std::size_t cols = static_cast<std::size_t>(degree) + 1;
  RationalMatrix aug(rows, cols + 1);
  for (std::size_t k = 0; k < rows; ++k) {
    const auto& s = evals[k];
    for (std::size_t i = 0; i < cols; ++i) {
      Rational term = 1;
      for (std::size_t e = 0; e < cols - 1 - i; ++e) { term *= s.x; }
      for (std::size_t e = 0; e < i; ++e) { term *= s.y; }
      aug(k, i) = term;
    }
    aug(k, cols) = s.value;
  }
  const RationalEchelon e = rational_rref(aug);
  if (e.pivots.size() != cols || (!e.pivots.empty() && e.pivots.back() == cols)) {
    throw InterpolationError("interpolate_homogeneous2: inconsistent evaluations");
  }
  std::vector<Rational> c(cols);
  for (std::size_t i = 0; i < cols; ++i) { c[i] = e.reduced(i, cols); }
  return HomogeneousPolynomial2::from_exact(std::move(c));
}

}  // namespace nilgo
