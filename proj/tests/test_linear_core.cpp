#include "nilgo/error.hpp"
#include "nilgo/linear_core.hpp"
#include "nilgo/rational.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nilgo;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c)
{
  std::normal_distribution<double> g;
  Matrix a(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) { a(i, j) = g(rng); }
  }
  return a;
}

}  // namespace

TEST(Nullspace, RankDeficientProduct)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 7, 3) * random_matrix(rng, 3, 6);
    const Matrix n = nullspace(a, kDefaultTauRank);
    EXPECT_EQ(n.cols(), 3);
    EXPECT_LT((a * n).norm(), 1e-12 * a.norm());
    EXPECT_LT((n.transpose() * n - Matrix::Identity(3, 3)).norm(), 1e-12);
  }
}

TEST(Nullspace, EdgeCases)
{
  EXPECT_EQ(nullspace(Matrix(0, 4), kDefaultTauRank).cols(), 4);
  EXPECT_EQ(nullspace(Matrix::Zero(3, 2), kDefaultTauRank).cols(), 2);
  EXPECT_THROW(nullspace(Matrix::Identity(2, 2), 0.0), InputError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(nullspace(bad, kDefaultTauRank), InputError);
}

TEST(Nullspace, FloorRemovesNoise)
{
  Matrix a = Matrix::Zero(4, 3);
  a(0, 0) = 1e-15;
  a(1, 1) = 2e-15;
  EXPECT_EQ(nullspace(a, kDefaultTauRank).cols(), 1);
  EXPECT_EQ(nullspace(a, kDefaultTauRank, 1e-12).cols(), 3);
}

TEST(LeastSquares, MatchesCompleteOrthogonalDecomposition)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 8, 4) * random_matrix(rng, 4, 5);
    const Vector b = random_matrix(rng, 8, 1);
    const LeastSquaresResult ls = least_squares(a, b);
    const Vector ref = a.completeOrthogonalDecomposition().solve(b);
    EXPECT_EQ(ls.rank, 4);
    EXPECT_LT((ls.x - ref).norm(), 1e-9 * (1.0 + ref.norm()));
    EXPECT_NEAR(ls.residual, (a * ref - b).norm(), 1e-10);
  }
}

TEST(LeastSquares, ConsistentSystemHasZeroResidual)
{
  Matrix a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  Vector b(3);
  b << 1, 2, 3;
  const LeastSquaresResult ls = least_squares(a, b);
  EXPECT_LT(ls.residual, 1e-14);
  EXPECT_NEAR(ls.x(0), 1.0, 1e-14);
  EXPECT_NEAR(ls.x(1), 2.0, 1e-14);
  EXPECT_THROW(least_squares(a, Vector::Zero(2)), InputError);
}

TEST(Pfaffian, AgreesWithMatchingExpansion)
{
  std::mt19937_64 rng(3);
  for (Eigen::Index n = 2; n <= 8; n += 2) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix a = oracle::random_skew(rng, n);
      const double ref = oracle::pfaffian(a);
      EXPECT_NEAR(pfaffian_numeric(a), ref, 1e-10 * (1.0 + std::abs(ref)));
      const double det = a.determinant();
      EXPECT_NEAR(ref * ref, det, 1e-9 * (1.0 + std::abs(det)));
      if (n <= 6) { EXPECT_NEAR(pfaffian_expansion(a), ref, 1e-10 * (1.0 + std::abs(ref))); }
    }
  }
}

TEST(Pfaffian, RejectsBadInput)
{
  EXPECT_THROW(pfaffian_numeric(Matrix::Identity(2, 2)), InputError);
  EXPECT_THROW(pfaffian_numeric(Matrix::Zero(3, 3)), InputError);
  EXPECT_THROW(pfaffian_expansion(Matrix::Zero(8, 8)), InputError);
  EXPECT_EQ(pfaffian_numeric(Matrix(0, 0)), 1.0);
}

TEST(CanonicalSpan, IndependentOfSpanningSet)
{
  std::mt19937_64 rng(8);
  const Matrix b = random_matrix(rng, 6, 3);
  const Matrix mix = random_matrix(rng, 3, 5);
  const Matrix c1 = canonical_span(b, kDefaultTauRank);
  const Matrix c2 = canonical_span(b * mix, kDefaultTauRank);
  ASSERT_EQ(c1.cols(), 3);
  EXPECT_LT((c1 - c2).norm(), 1e-10);
  EXPECT_TRUE(span_contains(c1, b, 1e-10));
}

TEST(GramOrthonormalize, ProducesOrthonormalColumns)
{
  std::mt19937_64 rng(9);
  const Matrix m = random_matrix(rng, 5, 5);
  const Matrix g = m * m.transpose() + Matrix::Identity(5, 5);
  const Matrix q = gram_orthonormalize(random_matrix(rng, 5, 3), g);
  EXPECT_LT((q.transpose() * g * q - Matrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(Rational, ParseAndPrint)
{
  EXPECT_EQ(*parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(*parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(*parse_rational(" 7 "), Rational(7));
  EXPECT_FALSE(parse_rational("abc").has_value());
  EXPECT_FALSE(parse_rational("1/0").has_value());
  EXPECT_EQ(to_rational(0.5), Rational(1, 2));
  EXPECT_EQ(*rational_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(rational_sqrt(Rational(2)).has_value());
}

TEST(Rational, DeterminantAndPfaffianAgreeWithOracles)
{
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + 2 * static_cast<std::size_t>(trial % 3);
    RationalMatrix a(n, n);
    RationalMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = oracle::random_rational(rng, 3, 4);
        if (i < j) {
          s(i, j) = oracle::random_rational(rng, 3, 4);
          s(j, i) = -s(i, j);
        }
      }
    }
    EXPECT_EQ(rational_determinant(a), oracle::determinant(a));
    EXPECT_EQ(rational_pfaffian(s), oracle::pfaffian(s));
    EXPECT_EQ(rational_pfaffian(s) * rational_pfaffian(s), oracle::determinant(s));
  }
}

TEST(Rational, NullspaceAndRank)
{
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix b(5, 2);
    RationalMatrix c(2, 6);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 2; ++j) { b(i, j) = oracle::random_rational(rng, 4, 3); }
    }
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 6; ++j) { c(i, j) = oracle::random_rational(rng, 4, 3); }
    }
    const RationalMatrix a = b * c;
    const std::size_t r = rational_rank(a);
    EXPECT_EQ(static_cast<Eigen::Index>(r), numerical_rank(a.to_double(), kDefaultTauRank));
    const RationalMatrix n = rational_nullspace(a);
    EXPECT_EQ(n.cols(), 6 - r);
    EXPECT_TRUE((a * n).is_zero());
  }
}

TEST(Rational, SolveAndResidual)
{
  RationalMatrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 3;
  RationalMatrix b(2, 1);
  b(0, 0) = 1;
  b(1, 0) = 2;
  const auto x = rational_solve(a, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(a * (*x) == b);
  EXPECT_EQ(rational_residual_squared(a, b), 0);
  RationalMatrix col(2, 1);
  col(0, 0) = 1;
  col(1, 0) = 1;
  RationalMatrix rhs(2, 1);
  rhs(0, 0) = 1;
  rhs(1, 0) = -1;
  EXPECT_EQ(rational_residual_squared(col, rhs), 2);
}
