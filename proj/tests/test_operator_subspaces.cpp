#include "nilgo/error.hpp"
#include "nilgo/families.hpp"
#include "nilgo/operator_subspaces.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nilgo;

namespace {

SkewOperatorSubspace v_of(const std::vector<RationalMatrix>& gens)
{
  return SkewOperatorSubspace::from_exact(gens.front().rows(), gens);
}

SkewOperatorSubspace l_copy()
{
  return SkewOperatorSubspace(4, {l_matrix(1, 0, 0), l_matrix(0, 1, 0), l_matrix(0, 0, 1)});
}

Matrix block_diag(const Matrix& a, const Matrix& b)
{
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// so(2) + so(3) acting on R^2 + R^3.
SkewOperatorSubspace so2_so3()
{
  std::vector<Matrix> gens;
  Matrix j(2, 2);
  j << 0, -1, 1, 0;
  gens.push_back(block_diag(j, Matrix::Zero(3, 3)));
  for (Eigen::Index a = 0; a < 3; ++a) {
    for (Eigen::Index b = a + 1; b < 3; ++b) {
      Matrix e = Matrix::Zero(3, 3);
      e(a, b) = 1;
      e(b, a) = -1;
      gens.push_back(block_diag(Matrix::Zero(2, 2), e));
    }
  }
  return SkewOperatorSubspace(5, gens);
}

std::vector<MetricLieAlgebra> built_in()
{
  return {heisenberg(1), heisenberg(2), quaternionic_heisenberg(1), n10(1), n10(2), n10(5), n10_second(),
          family_thm2({2, 3}), h_type_clifford(4, 1), h_type_clifford(7, 1)};
}

SkewOperatorSubspace v_of(const MetricLieAlgebra& l)
{
  const JMapFamily f = build_jmap_family(split_two_step(l));
  return SkewOperatorSubspace(f.n(), f.generators);
}

}  // namespace

TEST(SoCoordinates, RoundTrip)
{
  std::mt19937_64 rng(1);
  for (int n : {2, 3, 5, 8}) {
    const Matrix x = oracle::random_skew(rng, n);
    const Vector c = so_coords(x);
    EXPECT_EQ(c.size(), so_dim(n));
    EXPECT_LT((so_matrix(c, n) - x).norm(), 1e-14);
  }
}

TEST(SkewOperatorSubspace, DropsDependentElements)
{
  const Matrix a = l_matrix(1, 0, 0);
  const SkewOperatorSubspace s(4, {a, 2 * a, l_matrix(0, 1, 0)});
  EXPECT_EQ(s.dim(), 2);
  EXPECT_TRUE(s.contains(l_matrix(3, -1, 0)));
  EXPECT_FALSE(s.contains(r_matrix(1, 0, 0)));
}

TEST(SkewDerivations, HeisenbergOne)
{
  const MetricLieAlgebra l = heisenberg(1);
  const DerivationAlgebra d = skew_derivations(l);
  EXPECT_EQ(d.dim(), 1);
  EXPECT_EQ(d.dim(), oracle::skew_derivation_dim(l));
  for (const Matrix& m : d.basis) {
    EXPECT_LT(derivation_residual(l, m), 1e-12);
    EXPECT_LT(skewness_residual(l, m), 1e-12);
  }
}

TEST(SkewDerivations, AbelianIsFullSo)
{
  EXPECT_EQ(skew_derivations(MetricLieAlgebra::abelian(4)).dim(), 6);
}

TEST(SkewDerivations, MatchesOracleOnFamilies)
{
  for (const auto& l : built_in()) {
    const DerivationAlgebra d = skew_derivations(l);
    EXPECT_EQ(d.dim(), oracle::skew_derivation_dim(l)) << l.dim();
    const DerivationAlgebra e = skew_derivations_exact(l);
    EXPECT_EQ(e.dim(), d.dim());
  }
}

TEST(SkewDerivations, N10WithMetric)
{
  RationalMatrix q(2, 2);
  q(0, 0) = 3;
  q(0, 1) = q(1, 0) = 1;
  q(1, 1) = 2;
  const MetricLieAlgebra l = n10(2, MetricParameter::from_exact(q));
  const DerivationAlgebra d = skew_derivations(l);
  EXPECT_EQ(d.dim(), oracle::skew_derivation_dim(l));
  for (const Matrix& m : d.basis) {
    EXPECT_LT(derivation_residual(l, m), 1e-10);
    EXPECT_LT(skewness_residual(l, m), 1e-10);
  }
}

TEST(SkewDerivations, LieClosure)
{
  for (const auto& l : built_in()) {
    const DerivationAlgebra d = skew_derivations(l);
    const auto dd = static_cast<Eigen::Index>(l.dim() * l.dim());
    Matrix cols(dd, d.dim());
    for (Eigen::Index i = 0; i < d.dim(); ++i) { cols.col(i) = d.basis[static_cast<std::size_t>(i)].reshaped(); }
    const Eigen::HouseholderQR<Matrix> qr(cols);
    const Matrix q = qr.householderQ() * Matrix::Identity(dd, d.dim());
    for (const Matrix& a : d.basis) {
      for (const Matrix& b : d.basis) {
        const Vector c = commutator(a, b).reshaped();
        EXPECT_LE((c - q * (q.transpose() * c)).norm(), 1e-9 * a.norm() * b.norm());
      }
    }
  }
}

TEST(Normalizer, Examples)
{
  EXPECT_EQ(normalizer_in_so(SkewOperatorSubspace(4, {})).dim(), 6);
  const SkewOperatorSubspace l = l_copy();
  const SkewOperatorSubspace nl = normalizer_in_so(l);
  EXPECT_EQ(nl.dim(), 6);
  const SkewOperatorSubspace full = SkewOperatorSubspace::full(5);
  EXPECT_EQ(normalizer_in_so(full).dim(), 10);
}

TEST(Centralizer, Examples)
{
  const SkewOperatorSubspace c = centralizer_in_so(l_copy());
  EXPECT_EQ(c.dim(), 3);
  EXPECT_TRUE(c.contains(r_matrix(1, 0, 0)) && c.contains(r_matrix(0, 1, 0)) && c.contains(r_matrix(0, 0, 1)));
  EXPECT_EQ(centralizer_in_so(SkewOperatorSubspace(6, {})).dim(), 15);
  for (int t : {2, 3, 5}) {
    const SkewOperatorSubspace v = v_of(n10_generators(t));
    const SkewOperatorSubspace cv = centralizer_in_so(v);
    EXPECT_EQ(cv.dim(), 6) << t;
    EXPECT_TRUE(same_span(cv, centralizer_basis_n10()));
    EXPECT_TRUE(same_span(centralizer_in_so_exact(v), cv));
  }
}

TEST(Centralizer, N10AtTOneIsLarger)
{
  const SkewOperatorSubspace v = v_of(n10_generators(1));
  const SkewOperatorSubspace cv = centralizer_in_so(v);
  EXPECT_TRUE(cv.contains(centralizer_basis_n10()));
  // The generators are L-type in both blocks, so every R-type operator on R^8 commutes with them.
  EXPECT_GT(cv.dim(), 6);
}

TEST(Centralizer, DimensionMatchesOracle)
{
  for (const auto& l : built_in()) {
    const SkewOperatorSubspace v = v_of(l);
    EXPECT_EQ(centralizer_in_so(v).dim(), oracle::centralizer_dim(v.basis(), v.ambient_dim()));
  }
}

TEST(Subalgebra, Examples)
{
  EXPECT_TRUE(is_subalgebra(SkewOperatorSubspace(4, {r_matrix(1, 2, 3)})));
  EXPECT_TRUE(is_subalgebra(l_copy()));
  for (int t : {2, 5}) { EXPECT_FALSE(is_subalgebra(v_of(n10_generators(t)))); }
}

TEST(GeneratedSubalgebra, Examples)
{
  const SkewOperatorSubspace l = l_copy();
  EXPECT_TRUE(same_span(generated_subalgebra(l), l));
  const SkewOperatorSubspace a = generated_subalgebra(v_of(n10_generators(2)));
  EXPECT_EQ(a.dim(), 6);
  EXPECT_TRUE(is_subalgebra(a));

  std::mt19937_64 rng(4);
  Matrix e12 = Matrix::Zero(3, 3), e13 = Matrix::Zero(3, 3);
  e12(0, 1) = 1;
  e12(1, 0) = -1;
  e13(0, 2) = 1;
  e13(2, 0) = -1;
  EXPECT_EQ(generated_subalgebra(SkewOperatorSubspace(3, {e12 + 0.3 * e13, e13})).dim(), 3);
}

TEST(CompactSplit, Examples)
{
  Matrix j(2, 2);
  j << 0, -1, 1, 0;
  const CompactSplit a = compact_split(SkewOperatorSubspace(2, {j}));
  EXPECT_EQ(a.center_part.dim(), 1);
  EXPECT_EQ(a.derived_part.dim(), 0);

  const CompactSplit b = compact_split(l_copy());
  EXPECT_EQ(b.center_part.dim(), 0);
  EXPECT_EQ(b.derived_part.dim(), 3);

  const CompactSplit c = compact_split(so2_so3());
  EXPECT_EQ(c.center_part.dim(), 1);
  EXPECT_EQ(c.derived_part.dim(), 3);

  EXPECT_THROW(compact_split(v_of(n10_generators(2))), PreconditionError);
}

// Centralizer containment and the generated-algebra lemma on every built-in family.
TEST(OperatorProperties, BuiltInFamilies)
{
  for (const auto& l : built_in()) {
    const SkewOperatorSubspace v = v_of(l);
    const SkewOperatorSubspace z = centralizer_in_so(v);
    EXPECT_TRUE(normalizer_in_so(v).contains(z));

    const SkewOperatorSubspace a = generated_subalgebra(v);
    for (const Matrix& x : a.basis()) {
      for (const Matrix& y : z.basis()) { EXPECT_LT(commutator(x, y).norm(), 1e-10); }
    }

    const CompactSplit s = compact_split(a);
    // Center of A equals A intersected with the centralizer of V.
    for (const Matrix& c : s.center_part.basis()) { EXPECT_TRUE(z.contains(c)); }
    std::vector<Matrix> both = a.basis();
    for (const Matrix& c : z.basis()) { both.push_back(c); }
    const Eigen::Index inter = a.dim() + z.dim() - SkewOperatorSubspace(v.ambient_dim(), both).dim();
    EXPECT_EQ(s.center_part.dim(), inter);
    EXPECT_LE(s.center_part.dim(), v.dim());
  }
}

TEST(OperatorProperties, RandomSubspaces)
{
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 4;
    const int k = 1 + trial % 3;
    std::vector<Matrix> gens;
    for (int i = 0; i < k; ++i) { gens.push_back(oracle::random_skew(rng, n)); }
    const SkewOperatorSubspace v(n, gens);
    const SkewOperatorSubspace z = centralizer_in_so(v);
    EXPECT_TRUE(normalizer_in_so(v).contains(z));
    EXPECT_EQ(z.dim(), oracle::centralizer_dim(v.basis(), n));
    const SkewOperatorSubspace a = generated_subalgebra(v);
    EXPECT_TRUE(is_subalgebra(a));
    for (const Matrix& x : a.basis()) {
      for (const Matrix& y : z.basis()) { EXPECT_LT(commutator(x, y).norm(), 1e-9); }
    }
    EXPECT_LE(compact_split(a).center_part.dim(), v.dim());
  }
}
