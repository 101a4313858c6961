#include "nilgo/error.hpp"
#include "nilgo/families.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nilgo;

namespace {

// Reference closed forms for alpha_1..alpha_5, written out independently.
std::array<Rational, 5> reference_alpha(const Rational& t, const Rational& x, const Rational& y,
                                      const std::array<Rational, 8>& v)
{
  const auto& [x1, x2, x3, x4, x5, x6, x7, x8] = v;
  const Rational n1 = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4;
  const Rational n2 = x5 * x5 + x6 * x6 + x7 * x7 + x8 * x8;
  return {Rational((2 * x * (x1 * x4 + x2 * x3) + 2 * y * (x1 * x3 - x2 * x4)) / n1),
          Rational((x * (x1 * x1 - x2 * x2 + x3 * x3 - x4 * x4) - 2 * y * (x1 * x2 + x3 * x4)) / n1),
          Rational((-2 * x * (x1 * x2 - x3 * x4) - y * (x1 * x1 - x2 * x2 - x3 * x3 + x4 * x4)) / n1),
          Rational((2 * t * x * (x5 * x8 + x6 * x7) + 2 * y * (x5 * x7 - x6 * x8)) / n2),
          Rational((t * x * (x5 * x5 - x6 * x6 + x7 * x7 - x8 * x8) - 2 * y * (x5 * x6 + x7 * x8)) / n2)};
}

Rational plus_sign_alpha6(const Rational& t, const Rational& x, const Rational& y, const std::array<Rational, 8>& v)
{
  const auto& [x1, x2, x3, x4, x5, x6, x7, x8] = v;
  const Rational n2 = x5 * x5 + x6 * x6 + x7 * x7 + x8 * x8;
  return (-2 * t * x * (x5 * x6 + x7 * x8) - y * (x5 * x5 - x6 * x6 - x7 * x7 + x8 * x8)) / n2;
}

RationalMatrix column(const std::array<Rational, 8>& v)
{
  RationalMatrix c(8, 1);
  for (std::size_t i = 0; i < 8; ++i) { c(i, 0) = v[i]; }
  return c;
}

RationalMatrix jz(const Rational& t, const Rational& x, const Rational& y)
{
  const auto g = n10_generators(t);
  return g[0] * x + g[1] * y;
}

bool is_zero(const RationalMatrix& m)
{
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(i, j)) != 0) { return false; }
    }
  }
  return true;
}

}  // namespace

TEST(Heisenberg, Examples)
{
  const MetricLieAlgebra h1 = heisenberg(1);
  EXPECT_EQ(h1.dim(), 3u);
  EXPECT_EQ(h1.c(0, 1, 2), 1.0);
  EXPECT_EQ(h1.c(1, 0, 2), -1.0);
  EXPECT_TRUE(is_h_type(split_two_step(heisenberg(2))));
  EXPECT_THROW(heisenberg(0), InputError);
}

TEST(So4, LMatrixEntries)
{
  Matrix expected(4, 4);
  expected << 0, -1, 0, 0,  //
      1, 0, 0, 0,           //
      0, 0, 0, -1,          //
      0, 0, 1, 0;
  EXPECT_EQ(l_matrix(1, 0, 0), expected);
}

TEST(So4, DecomposeAndCommute)
{
  const So4Parts p = so4_decompose(l_matrix(1, 2, 3));
  EXPECT_NEAR(p.beta[0], 1, 1e-15);
  EXPECT_NEAR(p.beta[1], 2, 1e-15);
  EXPECT_NEAR(p.beta[2], 3, 1e-15);
  for (double g : p.gamma) { EXPECT_NEAR(g, 0, 1e-15); }
  const Matrix l = l_matrix(1, 2, 3);
  const Matrix r = r_matrix(4, 5, 6);
  EXPECT_EQ((l * r - r * l).norm(), 0.0);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix u = oracle::random_skew(rng, 4);
    const So4Parts q = so4_decompose(u);
    const Matrix back = l_matrix(q.beta[0], q.beta[1], q.beta[2]) + r_matrix(q.gamma[0], q.gamma[1], q.gamma[2]);
    EXPECT_LT((back - u).norm(), 1e-13);
  }
  EXPECT_THROW(so4_decompose(Matrix::Identity(4, 4)), InputError);
}

TEST(So4, QuaternionRelations)
{
  const Matrix i = l_matrix(1, 0, 0), j = l_matrix(0, 1, 0), k = l_matrix(0, 0, 1);
  EXPECT_EQ(i * j, k);
  EXPECT_EQ(i * i, -Matrix::Identity(4, 4));
  const Matrix ri = r_matrix(1, 0, 0), rj = r_matrix(0, 1, 0), rk = r_matrix(0, 0, 1);
  EXPECT_EQ(ri * ri, -Matrix::Identity(4, 4));
  EXPECT_EQ(rj * ri, rk);
}

TEST(Transport, Examples)
{
  Vector u = Vector::Zero(4), v = Vector::Zero(4);
  u(0) = 1;
  v(1) = 1;
  const auto b = transport_solve(u, v, Side::left);
  EXPECT_NEAR(b[0], 1, 1e-15);
  EXPECT_NEAR(b[1], 0, 1e-15);
  EXPECT_NEAR(b[2], 0, 1e-15);
  const auto z = transport_solve(u, Vector::Zero(4), Side::right);
  for (double c : z) { EXPECT_EQ(c, 0.0); }
  EXPECT_THROW(transport_solve(Vector::Zero(4), v, Side::left), InputError);
  EXPECT_THROW(transport_solve(u, u, Side::left), InputError);
}

TEST(Transport, ExistenceOnSpheres)
{
  std::mt19937_64 rng(1000);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 1000; ++trial) {
    const double radius = std::array<double, 3>{0.5, 1.0, 2.0}[static_cast<std::size_t>(trial % 3)];
    Vector u(4), w(4);
    for (int i = 0; i < 4; ++i) {
      u(i) = g(rng);
      w(i) = g(rng);
    }
    u *= radius / u.norm();
    const Vector v = w - (w.dot(u) / u.squaredNorm()) * u;
    const auto l = transport_solve(u, v, Side::left);
    const auto r = transport_solve(u, v, Side::right);
    EXPECT_LE((l_matrix(l[0], l[1], l[2]) * u - v).norm(), 1e-10);
    EXPECT_LE((r_matrix(r[0], r[1], r[2]) * u - v).norm(), 1e-10);
  }
}

TEST(QuaternionicHeisenberg, Examples)
{
  const MetricLieAlgebra q = quaternionic_heisenberg(1);
  EXPECT_EQ(q.dim(), 7u);
  const TwoStepSplit s = split_two_step(q);
  EXPECT_EQ(s.m(), 3);
  EXPECT_TRUE(is_h_type(s));
  EXPECT_EQ(quaternionic_heisenberg(2).dim(), 11u);
  EXPECT_THROW(quaternionic_heisenberg(0), InputError);
}

TEST(HTypeClifford, Generators)
{
  for (int m = 1; m <= 7; ++m) {
    for (int copies : {1, 2}) {
      const auto g = clifford_generators(m, copies);
      ASSERT_EQ(g.size(), static_cast<std::size_t>(m));
      const std::size_t n = g[0].rows();
      EXPECT_EQ(n, static_cast<std::size_t>((m == 1 ? 2 : m <= 3 ? 4 : 8) * copies));
      const RationalMatrix id = RationalMatrix::identity(n);
      for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_TRUE(g[i] * g[i] + id == RationalMatrix(n, n));
        EXPECT_TRUE(g[i] + g[i].transpose() == RationalMatrix(n, n));
        for (std::size_t j = i + 1; j < g.size(); ++j) {
          EXPECT_TRUE(is_zero(g[i] * g[j] + g[j] * g[i]));
        }
      }
    }
  }
  EXPECT_THROW(clifford_generators(0, 1), UnsupportedError);
  EXPECT_THROW(clifford_generators(8, 1), UnsupportedError);
}

TEST(HTypeClifford, MOneIsHeisenberg)
{
  for (int k : {1, 2, 3}) {
    const MetricLieAlgebra a = h_type_clifford(1, k);
    const MetricLieAlgebra b = heisenberg(k);
    EXPECT_EQ(a.dim(), b.dim());
    EXPECT_TRUE(is_h_type(split_two_step(a)));
    EXPECT_EQ(oracle::skew_derivation_dim(a), oracle::skew_derivation_dim(b));
  }
}

TEST(HTypeClifford, OctonionTIsPlusMinusId)
{
  const auto g = clifford_generators(7, 1);
  RationalMatrix t = RationalMatrix::identity(8);
  for (const auto& j : g) { t = t * j; }
  const RationalMatrix id = RationalMatrix::identity(8);
  EXPECT_TRUE(t == id || t == id * Rational(-1));
}

TEST(N10, Examples)
{
  EXPECT_TRUE(is_h_type(split_two_step(n10(1))));
  for (int t : {1, 2, 3, 5}) {
    EXPECT_EQ(n10(t).dim(), 10u);
    EXPECT_EQ(is_nonsingular(n10(t)).answer, NonsingularResult::Answer::yes) << t;
  }
  const auto p = pfaffian_form(split_two_step(n10(2)));
  EXPECT_EQ(*p.exact_coeffs, (std::vector<Rational>{4, 0, 5, 0, 1}));
  EXPECT_THROW(n10(Rational(1, 2)), InputError);
}

TEST(N10, GeneratorsAreCBlocks)
{
  const Rational t(7, 3), x(2, 5), y(-3);
  const RationalMatrix j = jz(t, x, y);
  const RationalMatrix c1 = l_matrix_exact(0, x, -y);
  const RationalMatrix c2 = l_matrix_exact(0, t * x, -y);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(j(i, k), c1(i, k));
      EXPECT_EQ(j(i + 4, k + 4), c2(i, k));
      EXPECT_EQ(sgn(j(i, k + 4)), 0);
    }
  }
}

TEST(N10Second, Pfaffian)
{
  const auto p = pfaffian_form(split_two_step(n10_second()));
  EXPECT_EQ(p.degree, 4);
  EXPECT_EQ(*p.exact_coeffs, (std::vector<Rational>{1, 0, 2, 0, 1}));
  EXPECT_EQ(is_nonsingular(n10_second()).answer, NonsingularResult::Answer::yes);
}

TEST(CentralizerBasisN10, Examples)
{
  const SkewOperatorSubspace c = centralizer_basis_n10();
  EXPECT_EQ(c.dim(), 6);
  for (int t : {1, 2, 5}) {
    for (const auto& g : n10_generators(t)) {
      for (const Matrix& b : c.basis()) { EXPECT_EQ(commutator(b, g.to_double()).norm(), 0.0); }
    }
  }
  const auto g2 = n10_generators(2);
  EXPECT_TRUE(same_span(centralizer_in_so(SkewOperatorSubspace::from_exact(8, g2)), c));
}

TEST(Alpha, WorkedPoint)
{
  const std::array<Rational, 8> xs{1, 0, 0, 0, 1, 0, 0, 0};
  const AlphaSolution s = alpha_closed_form(2, 1, 0, xs);
  const std::array<Rational, 6> expected{0, 1, 0, 0, 2, 0};
  EXPECT_EQ(s.alpha, expected);
  EXPECT_FALSE(s.first_free || s.second_free);
}

TEST(Alpha, ZeroCentralVector)
{
  std::mt19937_64 rng(2);
  std::array<Rational, 8> xs;
  for (auto& v : xs) { v = oracle::random_rational(rng, 5, 3); }
  const AlphaSolution s = alpha_closed_form(3, 0, 0, xs);
  for (const auto& a : s.alpha) { EXPECT_EQ(sgn(a), 0); }
}

TEST(Alpha, DegenerateHalves)
{
  const std::array<Rational, 8> xs{0, 0, 0, 0, 1, 2, 0, -1};
  const AlphaSolution s = alpha_closed_form(2, 1, 1, xs);
  EXPECT_TRUE(s.first_free);
  EXPECT_FALSE(s.second_free);
  const RationalMatrix y = alpha_operator(s);
  EXPECT_TRUE(y * column(xs) == jz(2, 1, 1) * column(xs));
}

TEST(Alpha, ExactOnSeededRationals)
{
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational t = 1 + Rational(abs(oracle::random_rational(rng, 4, 5)));
    const Rational x = oracle::random_rational(rng, 6, 7);
    const Rational y = oracle::random_rational(rng, 6, 7);
    std::array<Rational, 8> xs;
    for (auto& v : xs) { v = oracle::random_rational(rng, 9, 4); }
    const AlphaSolution s = alpha_closed_form(t, x, y, xs);
    const RationalMatrix op = alpha_operator(s);
    const RationalMatrix z = jz(t, x, y);
    EXPECT_TRUE(op * column(xs) == z * column(xs));
    EXPECT_TRUE(is_zero(op * z - z * op));
  }
}

TEST(Alpha, MatchesReferenceFormulas)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational t(2 + trial, 1 + trial % 3);
    const Rational x = oracle::random_rational(rng, 5, 3);
    const Rational y = oracle::random_rational(rng, 5, 3);
    std::array<Rational, 8> xs;
    for (auto& v : xs) { v = oracle::random_rational(rng, 5, 2) + 1; }
    const AlphaSolution s = alpha_closed_form(t, x, y, xs);
    const auto expected = reference_alpha(t, x, y, xs);
    for (std::size_t i = 0; i < 5; ++i) { EXPECT_EQ(s.alpha[i], expected[i]); }
  }
}

// alpha_6 needs x5 x6 - x7 x8; the variant with x5 x6 + x7 x8 breaks Y X = Z X.
TEST(Alpha, AlphaSixSign)
{
  const std::array<Rational, 8> xs{1, 2, 3, 4, 1, 2, 3, 4};
  const Rational t = 2, x = 1, y = 0;
  AlphaSolution s = alpha_closed_form(t, x, y, xs);
  EXPECT_NE(s.alpha[5], plus_sign_alpha6(t, x, y, xs));
  EXPECT_TRUE(alpha_operator(s) * column(xs) == jz(t, x, y) * column(xs));
  s.alpha[5] = plus_sign_alpha6(t, x, y, xs);
  EXPECT_FALSE(alpha_operator(s) * column(xs) == jz(t, x, y) * column(xs));
}

TEST(Thm2, Examples)
{
  for (int t : {2, 3}) {
    const MetricLieAlgebra a = family_thm2({Rational(t)});
    const MetricLieAlgebra b = n10(t);
    EXPECT_EQ(a.exact()->structure, b.exact()->structure);
  }
  const MetricLieAlgebra l = family_thm2({2, 3});
  EXPECT_EQ(l.dim(), 14u);
  const auto p = pfaffian_form(split_two_step(l));
  const auto expected = (HomogeneousPolynomial2::from_exact({1, 0, 1}) * HomogeneousPolynomial2::from_exact({4, 0, 1})) *
                        HomogeneousPolynomial2::from_exact({9, 0, 1});
  EXPECT_EQ(*p.exact_coeffs, *expected.exact_coeffs);
  EXPECT_EQ(family_thm2({Rational(3, 2), 2, 3}).dim(), 18u);
  EXPECT_THROW(family_thm2({3, 2}), InputError);
  EXPECT_THROW(family_thm2({1, 2}), InputError);
}

TEST(Thm2, CentralizerContainsDiagonalR)
{
  const std::vector<Rational> ts{Rational(3, 2), 2, 3};
  const auto gens = thm2_generators(ts);
  const SkewOperatorSubspace c = centralizer_in_so(SkewOperatorSubspace::from_exact(16, gens));
  for (int i = 0; i < 3; ++i) {
    Matrix d = Matrix::Zero(16, 16);
    const Matrix r = r_matrix(i == 0, i == 1, i == 2);
    for (int b = 0; b < 4; ++b) { d.block(4 * b, 4 * b, 4, 4) = r; }
    EXPECT_TRUE(c.contains(d));
  }
}

TEST(Thm2, PerBlockIsotropy)
{
  const std::vector<double> ts{2, 3};
  const auto gens = thm2_generators({2, 3});
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Vector xs(12);
    for (Eigen::Index i = 0; i < 12; ++i) { xs(i) = g(rng); }
    const double x = g(rng), y = g(rng);
    const Matrix d = thm2_isotropy(ts, x, y, xs);
    const Matrix j = x * gens[0].to_double() + y * gens[1].to_double();
    EXPECT_LT((d * xs - j * xs).norm(), 1e-10);
    EXPECT_LT(commutator(d, j).norm(), 1e-10);
  }
}

TEST(Families, AllValidateExactly)
{
  RationalMatrix q(2, 2);
  q(0, 0) = 5;
  q(0, 1) = q(1, 0) = 2;
  q(1, 1) = 1;
  const MetricParameter qm = MetricParameter::from_exact(q);
  for (const auto& l : {heisenberg(3), quaternionic_heisenberg(2), h_type_clifford(5, 2), n10(2, qm), n10_second(qm),
                        family_thm2({Rational(3, 2), 2}, qm)}) {
    const ValidationReport r = validate(l);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.exact);
  }
}

TEST(Families, BuildFamilyDispatch)
{
  FamilySpec s;
  s.kind = "n10";
  s.t = 2;
  EXPECT_EQ(build_family(s).exact()->structure, n10(2).exact()->structure);
  s.kind = "thm2";
  s.ts = {2, 3};
  EXPECT_EQ(build_family(s).dim(), 14u);
  s.kind = "h_type_clifford";
  s.m = 6;
  s.copies = 1;
  EXPECT_EQ(build_family(s).dim(), 14u);
  s.kind = "nope";
  EXPECT_THROW(build_family(s), InputError);
}
