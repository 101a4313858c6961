#include "nilgo/families.hpp"

#include "nilgo/error.hpp"

#include <cmath>
#include <type_traits>

namespace nilgo {

namespace {

template<typename M>
M zero4()
{
  if constexpr (std::is_same_v<M, Matrix>) {
    return Matrix::Zero(4, 4);
  } else {
    return M(4, 4);
  }
}

template<typename M, typename T>
M l_form(const T& b1, const T& b2, const T& b3)
{
  M l = zero4<M>();
  l(0, 1) = -b1; l(0, 2) = -b2; l(0, 3) = -b3;
  l(1, 0) = b1;  l(1, 2) = -b3; l(1, 3) = b2;
  l(2, 0) = b2;  l(2, 1) = b3;  l(2, 3) = -b1;
  l(3, 0) = b3;  l(3, 1) = -b2; l(3, 2) = b1;
  return l;
}

template<typename M, typename T>
M r_form(const T& g1, const T& g2, const T& g3)
{
  M r = zero4<M>();
  r(0, 1) = -g1; r(0, 2) = -g2; r(0, 3) = -g3;
  r(1, 0) = g1;  r(1, 2) = g3;  r(1, 3) = -g2;
  r(2, 0) = g2;  r(2, 1) = -g3; r(2, 3) = g1;
  r(3, 0) = g3;  r(3, 1) = g2;  r(3, 2) = -g1;
  return r;
}

RationalMatrix block_diagonal(const std::vector<RationalMatrix>& blocks)
{
  std::size_t n = 0;
  for (const auto& b : blocks) { n += b.rows(); }
  RationalMatrix out(n, n);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    out.set_block(at, at, b);
    at += b.rows();
  }
  return out;
}

RationalMatrix repeat_block(const RationalMatrix& b, int copies)
{
  return block_diagonal(std::vector<RationalMatrix>(static_cast<std::size_t>(copies), b));
}

// Left multiplication by e_a on the octonions, basis (1, e_1, ..., e_7).
RationalMatrix octonion_left(int a)
{
  static const int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
  int sign[8][8];
  int index[8][8];
  for (int i = 0; i < 8; ++i) {
    sign[0][i] = sign[i][0] = 1;
    index[0][i] = index[i][0] = i;
  }
  for (int i = 1; i < 8; ++i) {
    sign[i][i] = -1;
    index[i][i] = 0;
  }
  for (const auto& t : triples) {
    for (int r = 0; r < 3; ++r) {
      const int p = t[r];
      const int q = t[(r + 1) % 3];
      const int s = t[(r + 2) % 3];
      sign[p][q] = 1;
      index[p][q] = s;
      sign[q][p] = -1;
      index[q][p] = s;
    }
  }
  RationalMatrix l(8, 8);
  for (int b = 0; b < 8; ++b) { l(static_cast<std::size_t>(index[a][b]), static_cast<std::size_t>(b)) = sign[a][b]; }
  return l;
}

RationalMatrix exact_q(const MetricParameter& q)
{
  return q.exact ? *q.exact : RationalMatrix::from_double(q.q);
}

}  // namespace

Matrix l_matrix(double b1, double b2, double b3) { return l_form<Matrix>(b1, b2, b3); }
Matrix r_matrix(double g1, double g2, double g3) { return r_form<Matrix>(g1, g2, g3); }

RationalMatrix l_matrix_exact(const Rational& b1, const Rational& b2, const Rational& b3)
{
  return l_form<RationalMatrix>(b1, b2, b3);
}

RationalMatrix r_matrix_exact(const Rational& g1, const Rational& g2, const Rational& g3)
{
  return r_form<RationalMatrix>(g1, g2, g3);
}

So4Parts so4_decompose(const Matrix& u)
{
  if (u.rows() != 4 || u.cols() != 4) { throw InputError("so4_decompose: U must be 4x4"); }
  require_finite(u, "so4_decompose");
  if (max_abs(u + u.transpose()) > 1e-12 * std::max(1.0, max_abs(u))) { throw InputError("so4_decompose: U is not skew"); }
  So4Parts p;
  p.beta = {-(u(0, 1) + u(2, 3)) / 2, (u(1, 3) - u(0, 2)) / 2, -(u(0, 3) + u(1, 2)) / 2};
  p.gamma = {(u(2, 3) - u(0, 1)) / 2, -(u(0, 2) + u(1, 3)) / 2, (u(1, 2) - u(0, 3)) / 2};
  return p;
}

std::array<double, 3> transport_solve(const Vector& u, const Vector& v, Side side)
{
  if (u.size() != 4 || v.size() != 4) { throw InputError("transport_solve: U and V must lie in R^4"); }
  require_finite(u, "transport_solve");
  require_finite(v, "transport_solve");
  const double uu = u.squaredNorm();
  if (uu == 0.0) { throw InputError("transport_solve: U = 0"); }
  if (std::abs(u.dot(v)) > 1e-10 * std::max(1.0, std::sqrt(uu) * v.norm())) {
    throw InputError("transport_solve: V is not tangent to the sphere through U");
  }
  // L(e_i) U (resp. R(e_i) U) is an orthogonal frame of U^perp with lengths |U|.
  std::array<double, 3> p{};
  for (int i = 0; i < 3; ++i) {
    const Matrix e = side == Side::left ? l_matrix(i == 0, i == 1, i == 2) : r_matrix(i == 0, i == 1, i == 2);
    p[static_cast<std::size_t>(i)] = (e * u).dot(v) / uu;
  }
  return p;
}

RationalMatrix c_block(const Rational& x, const Rational& y) { return l_matrix_exact(0, x, -y); }

MetricLieAlgebra algebra_from_generators(const std::vector<RationalMatrix>& generators, const MetricParameter& q)
{
  const std::size_t m = generators.size();
  if (static_cast<std::size_t>(q.dim()) != m) { throw InputError("algebra_from_generators: metric has wrong size"); }
  const std::size_t n = m == 0 ? 0 : generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n || !(g.transpose() == g * Rational(-1))) {
      throw InputError("algebra_from_generators: generators must be skew and of equal size");
    }
  }
  const RationalMatrix qe = exact_q(q);
  const auto qinv = rational_solve(qe, RationalMatrix::identity(m));
  if (!qinv) { throw InputError("algebra_from_generators: singular metric"); }
  const std::size_t d = m + n;
  std::vector<Rational> c(d * d * d);
  RationalMatrix gram(d, d);
  gram.set_block(0, 0, qe);
  for (std::size_t i = 0; i < n; ++i) { gram(m + i, m + i) = 1; }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      RationalMatrix w(m, 1);
      for (std::size_t l = 0; l < m; ++l) { w(l, 0) = generators[l](b, a); }
      const RationalMatrix coef = (*qinv) * w;
      for (std::size_t l = 0; l < m; ++l) {
        c[((m + a) * d + (m + b)) * d + l] = coef(l, 0);
        c[((m + b) * d + (m + a)) * d + l] = -coef(l, 0);
      }
    }
  }
  return MetricLieAlgebra::from_exact(d, std::move(c), std::move(gram));
}

MetricLieAlgebra heisenberg(int k, const MetricParameter& q)
{
  if (k < 1) { throw InputError("heisenberg: k must be at least 1"); }
  if (q.dim() != 1) { throw InputError("heisenberg: metric must be 1x1"); }
  const auto d = static_cast<std::size_t>(2 * k + 1);
  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    const std::size_t x = 2 * i;
    const std::size_t y = 2 * i + 1;
    c[(x * d + y) * d + (d - 1)] = 1;
    c[(y * d + x) * d + (d - 1)] = -1;
  }
  RationalMatrix gram = RationalMatrix::identity(d);
  gram(d - 1, d - 1) = exact_q(q)(0, 0);
  return MetricLieAlgebra::from_exact(d, std::move(c), std::move(gram));
}

MetricLieAlgebra quaternionic_heisenberg(int k, const MetricParameter& q)
{
  if (k < 1) { throw InputError("quaternionic_heisenberg: k must be at least 1"); }
  return algebra_from_generators(clifford_generators(3, k), q);
}

std::vector<RationalMatrix> clifford_generators(int m, int copies)
{
  if (m < 1 || m > 7) { throw UnsupportedError("h_type_clifford: m must be in 1..7"); }
  if (copies < 1) { throw InputError("h_type_clifford: copies must be at least 1"); }
  std::vector<RationalMatrix> out;
  if (m == 1) {
    RationalMatrix j(2, 2);
    j(0, 1) = -1;
    j(1, 0) = 1;
    out.push_back(repeat_block(j, copies));
  } else if (m <= 3) {
    for (int i = 0; i < m; ++i) { out.push_back(repeat_block(l_matrix_exact(i == 0, i == 1, i == 2), copies)); }
  } else {
    for (int i = 1; i <= m; ++i) { out.push_back(repeat_block(octonion_left(i), copies)); }
  }
  return out;
}

MetricLieAlgebra h_type_clifford(int m, int copies)
{
  return h_type_clifford(m, copies, MetricParameter::identity(std::clamp(m, 1, 7)));
}

MetricLieAlgebra h_type_clifford(int m, int copies, const MetricParameter& q)
{
  return algebra_from_generators(clifford_generators(m, copies), q);
}

std::vector<RationalMatrix> n10_generators(const Rational& t)
{
  if (t < 1) { throw InputError("n10: t must be at least 1"); }
  return {block_diagonal({c_block(1, 0), c_block(t, 0)}), block_diagonal({c_block(0, 1), c_block(0, 1)})};
}

MetricLieAlgebra n10(const Rational& t, const MetricParameter& q) { return algebra_from_generators(n10_generators(t), q); }

MetricLieAlgebra n10_second(const MetricParameter& q)
{
  // J_Z = [[0, A], [-A^T, 0]] with A linear in (x, y).
  auto a_of = [](const Rational& x, const Rational& y) {
    RationalMatrix a(4, 4);
    a(0, 2) = -x; a(0, 3) = y;
    a(1, 2) = y;  a(1, 3) = x;
    a(2, 0) = -x; a(2, 1) = y; a(2, 3) = x;
    a(3, 0) = y;  a(3, 1) = x; a(3, 2) = x;
    return a;
  };
  std::vector<RationalMatrix> gens;
  for (int i = 0; i < 2; ++i) {
    const RationalMatrix a = a_of(i == 0, i == 1);
    RationalMatrix j(8, 8);
    j.set_block(0, 4, a);
    RationalMatrix minus_at = a.transpose();
    minus_at *= Rational(-1);
    j.set_block(4, 0, minus_at);
    gens.push_back(j);
  }
  return algebra_from_generators(gens, q);
}

SkewOperatorSubspace centralizer_basis_n10()
{
  std::vector<RationalMatrix> gens;
  const RationalMatrix zero(4, 4);
  for (int half = 0; half < 2; ++half) {
    for (int i = 0; i < 3; ++i) {
      const RationalMatrix r = r_matrix_exact(i == 0, i == 1, i == 2);
      gens.push_back(half == 0 ? block_diagonal({r, zero}) : block_diagonal({zero, r}));
    }
  }
  return SkewOperatorSubspace::from_exact(8, gens);
}

std::vector<RationalMatrix> thm2_generators(const std::vector<Rational>& ts)
{
  if (ts.empty()) { throw InputError("family_thm2: need at least one parameter"); }
  Rational prev = 1;
  for (const auto& t : ts) {
    if (!(t > prev)) { throw InputError("family_thm2: parameters must satisfy 1 < t_1 < ... < t_k"); }
    prev = t;
  }
  std::vector<RationalMatrix> xs{c_block(1, 0)};
  std::vector<RationalMatrix> ys{c_block(0, 1)};
  for (const auto& t : ts) {
    xs.push_back(c_block(t, 0));
    ys.push_back(c_block(0, 1));
  }
  return {block_diagonal(xs), block_diagonal(ys)};
}

MetricLieAlgebra family_thm2(const std::vector<Rational>& ts, const MetricParameter& q)
{
  return algebra_from_generators(thm2_generators(ts), q);
}

AlphaSolution alpha_closed_form(const Rational& t, const Rational& x, const Rational& y, const std::array<Rational, 8>& xs)
{
  if (t < 1) { throw InputError("alpha_closed_form: t must be at least 1"); }
  const auto& [x1, x2, x3, x4, x5, x6, x7, x8] = xs;
  AlphaSolution s;
  const Rational n1 = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4;
  const Rational n2 = x5 * x5 + x6 * x6 + x7 * x7 + x8 * x8;
  if (sgn(n1) == 0) {
    s.first_free = true;
  } else {
    s.alpha[0] = (2 * x * (x1 * x4 + x2 * x3) + 2 * y * (x1 * x3 - x2 * x4)) / n1;
    s.alpha[1] = (x * (x1 * x1 - x2 * x2 + x3 * x3 - x4 * x4) - 2 * y * (x1 * x2 + x3 * x4)) / n1;
    s.alpha[2] = (-2 * x * (x1 * x2 - x3 * x4) - y * (x1 * x1 - x2 * x2 - x3 * x3 + x4 * x4)) / n1;
  }
  if (sgn(n2) == 0) {
    s.second_free = true;
  } else {
    const Rational tx = t * x;
    s.alpha[3] = (2 * tx * (x5 * x8 + x6 * x7) + 2 * y * (x5 * x7 - x6 * x8)) / n2;
    s.alpha[4] = (tx * (x5 * x5 - x6 * x6 + x7 * x7 - x8 * x8) - 2 * y * (x5 * x6 + x7 * x8)) / n2;
    s.alpha[5] = (-2 * tx * (x5 * x6 - x7 * x8) - y * (x5 * x5 - x6 * x6 - x7 * x7 + x8 * x8)) / n2;
  }
  return s;
}

RationalMatrix alpha_operator(const AlphaSolution& s)
{
  const auto& a = s.alpha;
  return block_diagonal({r_matrix_exact(a[0], a[1], a[2]), r_matrix_exact(a[3], a[4], a[5])});
}

Matrix thm2_isotropy(const std::vector<double>& ts, double x, double y, const Vector& xs)
{
  const auto blocks = static_cast<Eigen::Index>(ts.size() + 1);
  if (xs.size() != 4 * blocks) { throw InputError("thm2_isotropy: X has wrong dimension"); }
  Matrix d = Matrix::Zero(4 * blocks, 4 * blocks);
  for (Eigen::Index j = 0; j < blocks; ++j) {
    const double tj = j == 0 ? 1.0 : ts[static_cast<std::size_t>(j - 1)];
    const Vector xj = xs.segment(4 * j, 4);
    if (xj.squaredNorm() == 0.0) { continue; }
    const Vector target = l_matrix(0.0, tj * x, -y) * xj;
    const auto p = transport_solve(xj, target, Side::right);
    d.block(4 * j, 4 * j, 4, 4) = r_matrix(p[0], p[1], p[2]);
  }
  return d;
}

MetricLieAlgebra build_family(const FamilySpec& spec)
{
  auto metric = [&](Eigen::Index m) { return spec.metric ? *spec.metric : MetricParameter::identity(m); };
  if (spec.kind == "heisenberg") { return heisenberg(spec.k, metric(1)); }
  if (spec.kind == "quaternionic_heisenberg") { return quaternionic_heisenberg(spec.k, metric(3)); }
  if (spec.kind == "h_type_clifford") {
    if (spec.m < 1 || spec.m > 7) { throw UnsupportedError("h_type_clifford: m must be in 1..7"); }
    return h_type_clifford(spec.m, spec.copies, metric(spec.m));
  }
  if (spec.kind == "n10") { return n10(spec.t, metric(2)); }
  if (spec.kind == "n10_second") { return n10_second(metric(2)); }
  if (spec.kind == "thm2") { return family_thm2(spec.ts, metric(2)); }
  throw InputError("unknown family kind: " + spec.kind);
}

}  // namespace nilgo
