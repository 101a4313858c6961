#include "nilgo/algebra.hpp"
#include "nilgo/error.hpp"
#include "nilgo/families.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nilgo;

namespace {

// [e0, e1] = e1: solvable, not nilpotent.
MetricLieAlgebra affine_line()
{
  std::vector<Rational> c(8);
  c[(0 * 2 + 1) * 2 + 1] = 1;
  c[(1 * 2 + 0) * 2 + 1] = -1;
  return MetricLieAlgebra::from_exact(2, std::move(c), RationalMatrix::identity(2));
}

// Two-step algebra with a central direction of odd-size v.
MetricLieAlgebra free_two_step_three()
{
  // basis z1, z2, x1, x2, x3 with [x1,x2] = z1, [x1,x3] = z2
  const std::size_t d = 5;
  std::vector<Rational> c(d * d * d);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
    c[(i * d + j) * d + k] = 1;
    c[(j * d + i) * d + k] = -1;
  };
  set(2, 3, 0);
  set(2, 4, 1);
  return MetricLieAlgebra::from_exact(d, std::move(c), RationalMatrix::identity(d));
}

}  // namespace

TEST(Validate, BuiltInAlgebrasPassExactly)
{
  for (const auto& l : {heisenberg(2), n10(2), n10_second(), h_type_clifford(7, 1), oracle::three_step()}) {
    const ValidationReport r = validate(l);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.exact);
  }
}

TEST(Validate, DetectsBrokenData)
{
  // Antisymmetry broken.
  std::vector<double> c(27, 0.0);
  c[(0 * 3 + 1) * 3 + 2] = 1.0;
  EXPECT_FALSE(validate(MetricLieAlgebra(3, c, Matrix::Identity(3, 3))).antisymmetric);

  // Jacobi broken: [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0.
  std::vector<Rational> q(27);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
    q[(i * 3 + j) * 3 + k] = 1;
    q[(j * 3 + i) * 3 + k] = -1;
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(0, 2, 0);
  const ValidationReport r = validate(MetricLieAlgebra::from_exact(3, q, RationalMatrix::identity(3)));
  EXPECT_TRUE(r.antisymmetric);
  EXPECT_FALSE(r.jacobi);

  RationalMatrix g = RationalMatrix::identity(3);
  g(2, 2) = -1;
  EXPECT_FALSE(validate(heisenberg(1).with_exact_gram(g)).gram_positive_definite);
}

TEST(Structure, CenterDerivedAndClass)
{
  const MetricLieAlgebra h = heisenberg(2);
  EXPECT_EQ(center(h).dim(), 1);
  EXPECT_EQ(derived(h).dim(), 1);
  EXPECT_EQ(*nilpotency_class(h), 2);
  EXPECT_EQ(*nilpotency_class(MetricLieAlgebra::abelian(3)), 1);
  EXPECT_EQ(*nilpotency_class(MetricLieAlgebra::abelian(0)), 1);
  EXPECT_EQ(*nilpotency_class(oracle::three_step()), 3);
  EXPECT_FALSE(nilpotency_class(affine_line()).has_value());
}

TEST(Structure, TwoStepSplit)
{
  const TwoStepSplit s = split_two_step(n10(2));
  EXPECT_EQ(s.m(), 2);
  EXPECT_EQ(s.n(), 8);
  EXPECT_TRUE(s.derived_equals_center);
  EXPECT_TRUE(s.has_exact_bases());
  const Matrix& g = s.parent->gram();
  Matrix all(10, 10);
  all << s.z_basis(), s.v_basis();
  EXPECT_LT((all.transpose() * g * all - Matrix::Identity(10, 10)).norm(), 1e-12);
  EXPECT_THROW(split_two_step(oracle::three_step()), NotTwoStepError);
  EXPECT_THROW(split_two_step(MetricLieAlgebra::abelian(2)), NotTwoStepError);
}

TEST(FlatFactor, SplitsEuclideanSummand)
{
  const MetricLieAlgebra l = oracle::direct_sum(heisenberg(1), MetricLieAlgebra::abelian(2));
  const FlatFactor f = detect_flat_factor(l);
  EXPECT_EQ(f.euclidean_dim, 2);
  EXPECT_EQ(f.reduced.dim(), 3u);
  EXPECT_TRUE(validate(f.reduced).passed());
  EXPECT_EQ(*nilpotency_class(f.reduced), 2);
  EXPECT_EQ(center(f.reduced).dim(), 1);
  EXPECT_EQ(detect_flat_factor(heisenberg(2)).euclidean_dim, 0);
  EXPECT_EQ(detect_flat_factor(MetricLieAlgebra::abelian(3)).euclidean_dim, 3);
  EXPECT_THROW(detect_flat_factor(oracle::three_step()), UnsupportedError);
}

TEST(Nonsingular, Families)
{
  for (int t : {1, 2, 5}) { EXPECT_EQ(is_nonsingular(n10(t)).answer, NonsingularResult::Answer::yes); }
  EXPECT_EQ(is_nonsingular(heisenberg(3)).answer, NonsingularResult::Answer::yes);
  EXPECT_EQ(is_nonsingular(n10_second()).answer, NonsingularResult::Answer::yes);
  EXPECT_EQ(is_nonsingular(quaternionic_heisenberg(1)).answer, NonsingularResult::Answer::sampled_yes);
  EXPECT_EQ(is_nonsingular(free_two_step_three()).answer, NonsingularResult::Answer::no);
}

TEST(Nonsingular, WitnessForSingularForms)
{
  // J_{xZ1+yZ2} = diag((x+y)J, (x-y)J): Pfaffian (x+y)(x-y) has real roots.
  RationalMatrix j(2, 2);
  j(0, 1) = -1;
  j(1, 0) = 1;
  RationalMatrix g1(4, 4), g2(4, 4);
  g1.set_block(0, 0, j);
  g1.set_block(2, 2, j);
  g2.set_block(0, 0, j);
  g2.set_block(2, 2, j * Rational(-1));
  const MetricLieAlgebra l = algebra_from_generators({g1, g2}, MetricParameter::identity(2));
  const NonsingularResult r = is_nonsingular(l);
  ASSERT_EQ(r.answer, NonsingularResult::Answer::no);
  ASSERT_TRUE(r.witness.has_value());
  // J_Z singular at the witness: ad(X) restricted to v misses Z.
  const TwoStepSplit s = split_two_step(l);
  Matrix form(4, 4);
  for (Eigen::Index a = 0; a < 4; ++a) {
    for (Eigen::Index b = 0; b < 4; ++b) {
      form(a, b) = l.inner(l.bracket(s.v_basis().col(a), s.v_basis().col(b)), *r.witness);
    }
  }
  EXPECT_LT(std::abs(form.determinant()), 1e-12);

  // Center bigger than [n,n]: J_Z = 0 on the extra direction.
  const MetricLieAlgebra flat = oracle::direct_sum(heisenberg(1), MetricLieAlgebra::abelian(1));
  const NonsingularResult rf = is_nonsingular(flat);
  EXPECT_EQ(rf.answer, NonsingularResult::Answer::no);
  ASSERT_TRUE(rf.witness.has_value());
  EXPECT_LT(flat.ad(*rf.witness).norm(), 1e-12);
  EXPECT_THROW(is_nonsingular(oracle::three_step()), PreconditionError);
}

TEST(Sturm, CountsDistinctRealRoots)
{
  EXPECT_EQ(count_real_roots({1, 0, 1}), 0);
  EXPECT_EQ(count_real_roots({-1, 0, 1}), 2);
  EXPECT_EQ(count_real_roots({1, -2, 1}), 1);
  EXPECT_EQ(count_real_roots({-6, 11, -6, 1}), 3);
  EXPECT_THROW(count_real_roots({0}), InputError);
}

TEST(Bracket, ExactAndFloatAgree)
{
  const MetricLieAlgebra l = n10(3);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    RationalMatrix x(10, 1), y(10, 1);
    for (std::size_t i = 0; i < 10; ++i) {
      x(i, 0) = oracle::random_rational(rng, 2, 3);
      y(i, 0) = oracle::random_rational(rng, 2, 3);
    }
    const Vector fl = l.bracket(x.to_double(), y.to_double());
    EXPECT_LT((fl - l.bracket_exact(x, y).to_double()).norm(), 1e-12);
    EXPECT_TRUE(l.bracket_exact(x, y) == l.bracket_exact(y, x) * Rational(-1));
  }
}
