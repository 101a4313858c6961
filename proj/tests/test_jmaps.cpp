#include "nilgo/error.hpp"
#include "nilgo/families.hpp"
#include "nilgo/jmaps.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nilgo;

namespace {

MetricParameter skewed_metric()
{
  RationalMatrix q(2, 2);
  q(0, 0) = 2;
  q(0, 1) = q(1, 0) = Rational(1, 2);
  q(1, 1) = 1;
  return MetricParameter::from_exact(q);
}

// Octonion module plus its conjugate: T = diag(-Id, Id).
MetricLieAlgebra mixed_seven()
{
  const auto one = clifford_generators(7, 1);
  std::vector<RationalMatrix> gens;
  for (const auto& g : one) {
    RationalMatrix b(16, 16);
    b.set_block(0, 0, g);
    b.set_block(8, 8, g * Rational(-1));
    gens.push_back(b);
  }
  return algebra_from_generators(gens, MetricParameter::identity(7));
}

}  // namespace

TEST(JMap, DefiningIdentityWithNonTrivialMetric)
{
  const MetricLieAlgebra l = n10(2, skewed_metric());
  const TwoStepSplit s = split_two_step(l);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Vector zc(2), xc(8), yc(8);
    for (auto* v : {&zc, &xc, &yc}) {
      for (Eigen::Index i = 0; i < v->size(); ++i) { (*v)(i) = g(rng); }
    }
    const Matrix j = build_jmap(s, zc);
    const Vector x = s.v_basis() * xc;
    const Vector y = s.v_basis() * yc;
    const Vector z = s.z_basis() * zc;
    EXPECT_NEAR((j * xc).dot(yc), l.inner(l.bracket(x, y), z), 1e-12);
    EXPECT_LT((j + j.transpose()).norm(), 1e-12);
  }
}

TEST(JMap, HeisenbergComplexStructure)
{
  const TwoStepSplit s = split_two_step(heisenberg(2));
  const JMapFamily f = build_jmap_family(s);
  ASSERT_EQ(f.generators.size(), 1u);
  const Matrix& j = f.generators[0];
  EXPECT_LT((j * j + Matrix::Identity(4, 4)).norm(), 1e-12);
  EXPECT_EQ(generator_rank(f), 1);
}

TEST(JMap, ExactGeneratorsOfN10)
{
  const TwoStepSplit s = split_two_step(n10(3));
  ASSERT_TRUE(s.has_exact_bases());
  const auto gens = n10_generators(3);
  RationalMatrix e1(2, 1), e2(2, 1);
  e1(0, 0) = 1;
  e2(1, 0) = 1;
  EXPECT_TRUE(build_jmap_exact(s, e1) == gens[0]);
  EXPECT_TRUE(build_jmap_exact(s, e2) == gens[1]);
}

TEST(HType, Classification)
{
  EXPECT_TRUE(is_h_type(split_two_step(heisenberg(2))));
  EXPECT_TRUE(is_h_type(split_two_step(quaternionic_heisenberg(2))));
  EXPECT_TRUE(is_h_type(split_two_step(n10(1))));
  EXPECT_FALSE(is_h_type(split_two_step(n10(2))));
  for (int m = 1; m <= 7; ++m) { EXPECT_TRUE(is_h_type(split_two_step(h_type_clifford(m, 1)))) << m; }
}

TEST(PfaffianForm, N10Family)
{
  for (int t : {1, 2, 3}) {
    const auto p = pfaffian_form(split_two_step(n10(t)));
    ASSERT_TRUE(p.is_exact());
    const std::vector<Rational> expected{Rational(t * t), 0, Rational(t * t + 1), 0, 1};
    EXPECT_EQ(*p.exact_coeffs, expected) << t;
  }
}

TEST(PfaffianForm, SquareIsDeterminant)
{
  const TwoStepSplit s = split_two_step(n10(2, skewed_metric()));
  const auto p = pfaffian_form(s);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Vector z(2);
    z << g(rng), g(rng);
    const double f = p.evaluate(z(0), z(1));
    const double det = build_jmap(s, z).determinant();
    EXPECT_NEAR(f * f, det, 1e-9 * (1 + std::abs(det)));
  }
}

TEST(PfaffianForm, Errors)
{
  EXPECT_THROW(pfaffian_form(split_two_step(quaternionic_heisenberg(1))), UnsupportedError);
  // [x1,x2] = z1, [x1,x3] = z2: n = 3.
  const std::size_t d = 5;
  std::vector<Rational> c(d * d * d);
  c[(2 * d + 3) * d + 0] = 1;
  c[(3 * d + 2) * d + 0] = -1;
  c[(2 * d + 4) * d + 1] = 1;
  c[(4 * d + 2) * d + 1] = -1;
  const MetricLieAlgebra odd = MetricLieAlgebra::from_exact(d, c, RationalMatrix::identity(d));
  EXPECT_THROW(pfaffian_form(split_two_step(odd)), InputError);
}

TEST(RadonHurwitz, MatchesTable)
{
  for (int n = 1; n <= 256; ++n) { EXPECT_EQ(radon_hurwitz(n), oracle::rho(n)) << n; }
  EXPECT_EQ(radon_hurwitz(2), 2);
  EXPECT_EQ(radon_hurwitz(4), 4);
  EXPECT_EQ(radon_hurwitz(8), 8);
  EXPECT_EQ(radon_hurwitz(16), 9);
  EXPECT_THROW(radon_hurwitz(0), InputError);
}

TEST(RadonHurwitz, CenterBoundOnNonsingularFamilies)
{
  for (const auto& l : {heisenberg(2), n10(2), n10_second(), family_thm2({2, 3}), quaternionic_heisenberg(1)}) {
    EXPECT_TRUE(center_bound_check(split_two_step(l)));
  }
  for (int m = 1; m <= 7; ++m) { EXPECT_TRUE(center_bound_check(split_two_step(h_type_clifford(m, 1)))); }
}

TEST(Isotypic, OctonionModule)
{
  const Isotypic single = isotypic_test(split_two_step(h_type_clifford(7, 1)));
  EXPECT_NE(single, Isotypic::neither);
  EXPECT_EQ(isotypic_test(split_two_step(h_type_clifford(7, 2))), single);
  EXPECT_EQ(isotypic_test(split_two_step(mixed_seven())), Isotypic::neither);
  EXPECT_THROW(isotypic_test(split_two_step(h_type_clifford(6, 1))), PreconditionError);
}
