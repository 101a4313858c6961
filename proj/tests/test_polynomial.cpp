#include "nilgo/error.hpp"
#include "nilgo/polynomial.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace nilgo;

namespace {

// (x^2 + y^2)(4x^2 + y^2)
Rational target(const Rational& x, const Rational& y) { return (x * x + y * y) * (4 * x * x + y * y); }

}  // namespace

TEST(Interpolate, ExactRecoversCoefficients)
{
  std::vector<FormSample<Rational>> s;
  for (int j = 0; j < 5; ++j) { s.push_back({Rational(1), Rational(j), target(1, j)}); }
  const auto p = interpolate_homogeneous2(s, 4);
  ASSERT_TRUE(p.is_exact());
  const std::vector<Rational> expected{4, 0, 5, 0, 1};
  EXPECT_EQ(*p.exact_coeffs, expected);
}

TEST(Interpolate, FloatRecoversCoefficientsFromExtraPoints)
{
  std::vector<FormSample<double>> s;
  for (int k = 0; k < 9; ++k) {
    const double a = M_PI * k / 9.0;
    const double x = std::cos(a);
    const double y = std::sin(a);
    s.push_back({2 * x, 2 * y, (x * x + y * y) * (4 * x * x + y * y) * 16});
  }
  const auto p = interpolate_homogeneous2(s, 4);
  const std::vector<double> expected{4, 0, 5, 0, 1};
  for (std::size_t i = 0; i < 5; ++i) { EXPECT_NEAR(p.coeffs[i], expected[i], 1e-12); }
}

TEST(Interpolate, Failures)
{
  std::vector<FormSample<double>> few{{1, 0, 1}, {0, 1, 1}, {2, 0, 16}};
  EXPECT_THROW(interpolate_homogeneous2(few, 2), InterpolationError);  // (1,0) and (2,0) coincide
  std::vector<FormSample<double>> origin{{0, 0, 0}, {1, 0, 1}, {0, 1, 1}};
  EXPECT_THROW(interpolate_homogeneous2(origin, 1), InterpolationError);
  std::vector<FormSample<Rational>> inconsistent{{1, 0, 1}, {0, 1, 1}, {1, 1, 7}};
  EXPECT_THROW(interpolate_homogeneous2(inconsistent, 1), InterpolationError);
  EXPECT_THROW(interpolate_homogeneous2(std::vector<FormSample<double>>{}, -1), InputError);
}

TEST(HomogeneousPolynomial2, SignAndSubstitution)
{
  const auto p = HomogeneousPolynomial2::from_exact({-1, 0, -1});
  const auto n = p.sign_normalized();
  EXPECT_EQ((*n.exact_coeffs)[0], 1);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto q = HomogeneousPolynomial2::from_exact({4, 0, 5, 0, 1});
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng), x = u(rng), y = u(rng);
    const auto s = q.substitute(a, b, c, d);
    EXPECT_NEAR(s.evaluate(x, y), q.evaluate(a * x + b * y, c * x + d * y), 1e-9 * (1 + std::abs(s.evaluate(x, y))));
  }
  const auto prod = HomogeneousPolynomial2::from_exact({1, 0, 1}) * HomogeneousPolynomial2::from_exact({4, 0, 1});
  EXPECT_EQ(*prod.exact_coeffs, (std::vector<Rational>{4, 0, 5, 0, 1}));
  EXPECT_TRUE(HomogeneousPolynomial2::from_double({0.0, 0.0}).is_zero());
  EXPECT_THROW(HomogeneousPolynomial2::from_double({}), InputError);
}
