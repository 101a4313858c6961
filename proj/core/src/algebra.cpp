#include "nilgo/algebra.hpp"

#include "nilgo/error.hpp"
#include "nilgo/polynomial.hpp"
#include "nilgo/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nilgo {

MetricLieAlgebra::MetricLieAlgebra(std::size_t dim, std::vector<double> structure, Matrix gram)
    : dim_(dim), structure_(std::move(structure)), gram_(std::move(gram))
{
  if (structure_.size() != dim_ * dim_ * dim_) { throw InputError("MetricLieAlgebra: structure tensor must have dim^3 entries"); }
  if (gram_.rows() != static_cast<Eigen::Index>(dim_) || gram_.cols() != static_cast<Eigen::Index>(dim_)) {
    throw InputError("MetricLieAlgebra: gram must be dim x dim");
  }
  for (double v : structure_) {
    if (!std::isfinite(v)) { throw InputError("MetricLieAlgebra: non-finite structure constant"); }
  }
  require_finite(gram_, "MetricLieAlgebra gram");
}

MetricLieAlgebra MetricLieAlgebra::from_exact(std::size_t dim, std::vector<Rational> structure, RationalMatrix gram)
{
  std::vector<double> c;
  c.reserve(structure.size());
  for (const auto& v : structure) { c.push_back(v.get_d()); }
  MetricLieAlgebra l(dim, std::move(c), gram.to_double());
  l.exact_ = ExactAlgebraData{std::move(structure), std::move(gram)};
  return l;
}

MetricLieAlgebra MetricLieAlgebra::abelian(std::size_t dim)
{
  return from_exact(dim, std::vector<Rational>(dim * dim * dim), RationalMatrix::identity(dim));
}

Vector MetricLieAlgebra::bracket(const Vector& x, const Vector& y) const { return ad(x) * y; }

Matrix MetricLieAlgebra::ad(const Vector& x) const
{
  const auto d = static_cast<Eigen::Index>(dim_);
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < dim_; ++i) {
    const double xi = x(static_cast<Eigen::Index>(i));
    if (xi == 0.0) { continue; }
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) += xi * c(i, j, k);
      }
    }
  }
  return m;
}

double MetricLieAlgebra::max_abs_structure() const
{
  double s = 0.0;
  for (double v : structure_) { s = std::max(s, std::abs(v)); }
  return s;
}

RationalMatrix MetricLieAlgebra::ad_exact(const RationalMatrix& x) const
{
  if (!exact_) { throw PreconditionError("ad_exact: algebra has no exact data"); }
  RationalMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x(i, 0)) == 0) { continue; }
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        const Rational& cijk = exact_->structure[(i * dim_ + j) * dim_ + k];
        if (sgn(cijk) != 0) { m(k, j) += x(i, 0) * cijk; }
      }
    }
  }
  return m;
}

RationalMatrix MetricLieAlgebra::bracket_exact(const RationalMatrix& x, const RationalMatrix& y) const
{
  return ad_exact(x) * y;
}

MetricLieAlgebra MetricLieAlgebra::with_gram(const Matrix& gram) const
{
  return MetricLieAlgebra(dim_, structure_, gram);
}

MetricLieAlgebra MetricLieAlgebra::with_exact_gram(const RationalMatrix& gram) const
{
  if (!exact_) {
    MetricLieAlgebra l(dim_, structure_, gram.to_double());
    return l;
  }
  return from_exact(dim_, exact_->structure, gram);
}

namespace {

// Leading principal minors test, exact.
bool rational_positive_definite(const RationalMatrix& g)
{
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    if (sgn(rational_determinant(g.block(0, 0, k, k))) <= 0) { return false; }
  }
  return true;
}

}  // namespace

ValidationReport validate(const MetricLieAlgebra& l)
{
  ValidationReport r;
  const std::size_t d = l.dim();
  const double cmax = l.max_abs_structure();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        r.antisymmetry_residual = std::max(r.antisymmetry_residual, std::abs(l.c(i, j, k) + l.c(j, i, k)));
      }
    }
  }
  // Jacobi: [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] = 0.
  auto jac = [&](std::size_t i, std::size_t j, std::size_t l2, std::size_t k) {
    double s = 0.0;
    for (std::size_t m = 0; m < d; ++m) {
      s += l.c(i, j, m) * l.c(m, l2, k) + l.c(j, l2, m) * l.c(m, i, k) + l.c(l2, i, m) * l.c(m, j, k);
    }
    return s;
  };
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      for (std::size_t m = j + 1; m < d; ++m) {
        for (std::size_t k = 0; k < d; ++k) { r.jacobi_residual = std::max(r.jacobi_residual, std::abs(jac(i, j, m, k))); }
      }
    }
  }
  r.gram_symmetry_residual = d == 0 ? 0.0 : max_abs(l.gram() - l.gram().transpose());
  if (d > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (l.gram() + l.gram().transpose()), Eigen::EigenvaluesOnly);
    r.gram_min_eigenvalue = es.eigenvalues()(0);
  }

  if (l.has_exact()) {
    r.exact = true;
    const auto& ex = *l.exact();
    const auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rational& {
      return ex.structure[(i * d + j) * d + k];
    };
    r.antisymmetric = true;
    for (std::size_t i = 0; i < d && r.antisymmetric; ++i) {
      for (std::size_t j = 0; j < d && r.antisymmetric; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
          if (at(i, j, k) + at(j, i, k) != 0) {
            r.antisymmetric = false;
            break;
          }
        }
      }
    }
    // Exact Jacobi over the sparse support of c.
    std::vector<std::vector<std::size_t>> support(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t m = 0; m < d; ++m) {
          if (sgn(at(i, j, m)) != 0) { support[i * d + j].push_back(m); }
        }
      }
    }
    r.jacobi = true;
    std::vector<Rational> acc(d);
    for (std::size_t i = 0; i < d && r.jacobi; ++i) {
      for (std::size_t j = i + 1; j < d && r.jacobi; ++j) {
        for (std::size_t q = j + 1; q < d && r.jacobi; ++q) {
          for (auto& a : acc) { a = 0; }
          const std::size_t triples[3][3] = {{i, j, q}, {j, q, i}, {q, i, j}};
          for (const auto& t : triples) {
            for (std::size_t m : support[t[0] * d + t[1]]) {
              for (std::size_t k : support[m * d + t[2]]) { acc[k] += at(t[0], t[1], m) * at(m, t[2], k); }
            }
          }
          r.jacobi = std::all_of(acc.begin(), acc.end(), [](const Rational& a) { return sgn(a) == 0; });
        }
      }
    }
    r.gram_positive_definite = ex.gram == ex.gram.transpose() && rational_positive_definite(ex.gram);
  } else {
    r.antisymmetric = r.antisymmetry_residual <= 1e-12 * std::max(cmax, 1.0);
    r.jacobi = r.jacobi_residual <= 1e-10 * std::max(cmax * cmax, 1.0);
    const double gmax = d == 0 ? 0.0 : max_abs(l.gram());
    r.gram_positive_definite =
        r.gram_symmetry_residual <= 1e-12 * std::max(gmax, 1.0) && (d == 0 || r.gram_min_eigenvalue > 0.0);
  }
  return r;
}

namespace {

Subspace subspace_from_exact(const MetricLieAlgebra& l, const RationalMatrix& spanning)
{
  Subspace s;
  s.exact_span = canonical_span_exact(spanning);
  s.span = s.exact_span->to_double();
  s.exact_orthonormal = gram_orthonormalize_exact(*s.exact_span, l.exact()->gram);
  s.orthonormal = s.exact_orthonormal ? s.exact_orthonormal->to_double() : gram_orthonormalize(s.span, l.gram());
  return s;
}

Subspace subspace_from_float(const MetricLieAlgebra& l, const Matrix& spanning, double tau_rank)
{
  Subspace s;
  s.span = canonical_span(spanning, tau_rank);
  s.orthonormal = gram_orthonormalize(s.span, l.gram());
  return s;
}

// Rows (j, k), column i: c(i, j, k). Its kernel is the center.
Matrix center_system(const MetricLieAlgebra& l)
{
  const auto d = static_cast<Eigen::Index>(l.dim());
  Matrix a(d * d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        a(j * d + k, i) = l.c(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k));
      }
    }
  }
  return a;
}

RationalMatrix center_system_exact(const MetricLieAlgebra& l)
{
  const std::size_t d = l.dim();
  RationalMatrix a(d * d, d);
  const auto& c = l.exact()->structure;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) { a(j * d + k, i) = c[(i * d + j) * d + k]; }
    }
  }
  return a;
}

// Columns [e_i, x] for every basis e_i and every column x of `cols`.
Matrix brackets_with(const MetricLieAlgebra& l, const Matrix& cols)
{
  const auto d = static_cast<Eigen::Index>(l.dim());
  Matrix out(d, d * cols.cols());
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    out.middleCols(c * d, d) = -l.ad(cols.col(c));  // column i is [e_i, x] = -[x, e_i]
  }
  return out;
}

RationalMatrix brackets_with_exact(const MetricLieAlgebra& l, const RationalMatrix& cols)
{
  const std::size_t d = l.dim();
  RationalMatrix out(d, d * cols.cols());
  for (std::size_t c = 0; c < cols.cols(); ++c) {
    RationalMatrix a = l.ad_exact(cols.col(c));
    a *= Rational(-1);
    out.set_block(0, c * d, a);
  }
  return out;
}

}  // namespace

Subspace center(const MetricLieAlgebra& l, double tau_rank)
{
  if (l.has_exact()) {
    if (l.dim() == 0) { return subspace_from_exact(l, RationalMatrix(0, 0)); }
    return subspace_from_exact(l, rational_nullspace(center_system_exact(l)));
  }
  if (l.dim() == 0) { return subspace_from_float(l, Matrix(0, 0), tau_rank); }
  return subspace_from_float(l, nullspace(center_system(l), tau_rank), tau_rank);
}

Subspace derived(const MetricLieAlgebra& l, double tau_rank)
{
  const std::size_t d = l.dim();
  if (l.has_exact()) { return subspace_from_exact(l, brackets_with_exact(l, RationalMatrix::identity(d))); }
  return subspace_from_float(l, brackets_with(l, Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))),
                             tau_rank);
}

std::optional<int> nilpotency_class(const MetricLieAlgebra& l, double tau_rank)
{
  const std::size_t d = l.dim();
  if (l.has_exact()) {
    RationalMatrix term = RationalMatrix::identity(d);
    std::size_t dim = d;
    for (int k = 1; k <= static_cast<int>(d) + 1; ++k) {
      const RationalMatrix next = canonical_span_exact(brackets_with_exact(l, term));
      if (next.cols() == 0) { return k; }
      if (next.cols() == dim) { return std::nullopt; }
      term = next;
      dim = next.cols();
    }
    return std::nullopt;
  }
  Matrix term = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  Eigen::Index dim = term.cols();
  for (int k = 1; k <= static_cast<int>(d) + 1; ++k) {
    const Matrix spanning = brackets_with(l, term);
    if (spanning.size() == 0 || max_abs(spanning) <= tau_rank * std::max(l.max_abs_structure(), 1.0)) { return k; }
    const Matrix next = canonical_span(spanning, tau_rank);
    if (next.cols() == 0) { return k; }
    if (next.cols() == dim) { return std::nullopt; }
    term = next;
    dim = next.cols();
  }
  return std::nullopt;
}

namespace {

Subspace orthogonal_complement(const MetricLieAlgebra& l, const Subspace& s, double tau_rank)
{
  const std::size_t d = l.dim();
  if (l.has_exact() && s.exact_span) {
    const RationalMatrix constraint = s.exact_span->transpose() * l.exact()->gram;
    if (constraint.rows() == 0) { return subspace_from_exact(l, RationalMatrix::identity(d)); }
    return subspace_from_exact(l, rational_nullspace(constraint));
  }
  const Matrix constraint = s.span.transpose() * l.gram();
  if (constraint.rows() == 0) {
    return subspace_from_float(l, Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)), tau_rank);
  }
  return subspace_from_float(l, nullspace(constraint, tau_rank), tau_rank);
}

}  // namespace

TwoStepSplit split_two_step(const MetricLieAlgebra& l, double tau_rank)
{
  const auto cls = nilpotency_class(l, tau_rank);
  if (!cls || *cls != 2) {
    throw NotTwoStepError("split_two_step: algebra is not two-step nilpotent (class " +
                          (cls ? std::to_string(*cls) : std::string("none")) + ")");
  }
  TwoStepSplit s;
  s.parent = std::make_shared<const MetricLieAlgebra>(l);
  s.z = center(l, tau_rank);
  s.v = orthogonal_complement(l, s.z, tau_rank);
  const Subspace der = derived(l, tau_rank);
  s.derived_equals_center = der.dim() == s.z.dim();
  return s;
}

namespace {

Eigen::Index first_nonzero(const Vector& v)
{
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * scale) { return i; }
  }
  return v.size();
}

}  // namespace

FlatFactor detect_flat_factor(const MetricLieAlgebra& l, double tau_rank)
{
  const auto cls = nilpotency_class(l, tau_rank);
  if (!cls || *cls > 2) { throw UnsupportedError("detect_flat_factor: nilpotency class > 2"); }
  const std::size_t d = l.dim();
  FlatFactor out;
  if (*cls == 1) {
    out.euclidean_dim = static_cast<Eigen::Index>(d);
    out.reduced = MetricLieAlgebra::abelian(0);
    out.embedding = Matrix(static_cast<Eigen::Index>(d), 0);
    return out;
  }
  const Subspace z = center(l, tau_rank);
  const Subspace der = derived(l, tau_rank);
  const Subspace v = orthogonal_complement(l, z, tau_rank);
  out.euclidean_dim = z.dim() - der.dim();

  // Order basis vectors by their leading index so an already reduced
  // algebra keeps its own basis.
  const Eigen::Index k = der.dim() + v.dim();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  auto column = [&](Eigen::Index i) -> Vector { return i < der.dim() ? Vector(der.span.col(i)) : Vector(v.span.col(i - der.dim())); };
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return first_nonzero(column(a)) < first_nonzero(column(b)); });

  const bool exact = l.has_exact() && der.exact_span && v.exact_span;
  if (exact) {
    RationalMatrix basis(d, static_cast<std::size_t>(k));
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
      const auto src = static_cast<std::size_t>(order[c]);
      const std::size_t nd = static_cast<std::size_t>(der.dim());
      const RationalMatrix col = src < nd ? der.exact_span->col(src) : v.exact_span->col(src - nd);
      basis.set_block(0, c, col);
    }
    const RationalMatrix bt = basis.transpose();
    const auto left_inverse = rational_solve(bt * basis, bt);
    const std::size_t kk = static_cast<std::size_t>(k);
    std::vector<Rational> c(kk * kk * kk);
    for (std::size_t a = 0; a < kk; ++a) {
      const RationalMatrix ada = l.ad_exact(basis.col(a));
      for (std::size_t b = 0; b < kk; ++b) {
        const RationalMatrix coords = (*left_inverse) * (ada * basis.col(b));
        for (std::size_t m = 0; m < kk; ++m) { c[(a * kk + b) * kk + m] = coords(m, 0); }
      }
    }
    out.reduced = MetricLieAlgebra::from_exact(kk, std::move(c), bt * l.exact()->gram * basis);
    out.embedding = basis.to_double();
    return out;
  }
  Matrix basis(static_cast<Eigen::Index>(d), k);
  for (Eigen::Index c = 0; c < k; ++c) { basis.col(c) = column(order[static_cast<std::size_t>(c)]); }
  const Matrix left_inverse = (basis.transpose() * basis).ldlt().solve(basis.transpose());
  const auto kk = static_cast<std::size_t>(k);
  std::vector<double> c(kk * kk * kk);
  for (Eigen::Index a = 0; a < k; ++a) {
    const Matrix ada = l.ad(basis.col(a));
    for (Eigen::Index b = 0; b < k; ++b) {
      const Vector coords = left_inverse * (ada * basis.col(b));
      for (Eigen::Index m = 0; m < k; ++m) {
        c[(static_cast<std::size_t>(a) * kk + static_cast<std::size_t>(b)) * kk + static_cast<std::size_t>(m)] = coords(m);
      }
    }
  }
  out.reduced = MetricLieAlgebra(kk, std::move(c), basis.transpose() * l.gram() * basis);
  out.embedding = basis;
  return out;
}

const char* to_string(NonsingularResult::Answer a)
{
  switch (a) {
    case NonsingularResult::Answer::yes: return "yes";
    case NonsingularResult::Answer::no: return "no";
    case NonsingularResult::Answer::sampled_yes: return "sampled_yes";
  }
  return "no";
}

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p)
{
  while (!p.empty() && sgn(p.back()) == 0) { p.pop_back(); }
}

Poly derivative(const Poly& p)
{
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) { d.push_back(p[i] * static_cast<long>(i)); }
  trim(d);
  return d;
}

Poly remainder(Poly a, const Poly& b)
{
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) { a[shift + i] -= f * b[i]; }
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_changes(const std::vector<int>& signs)
{
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) { continue; }
    if (last != 0 && s != last) { ++changes; }
    last = s;
  }
  return changes;
}

// ([b_a, b_b], z)_G for exact bases.
RationalMatrix form_matrix_exact(const MetricLieAlgebra& l, const RationalMatrix& vb, const RationalMatrix& z)
{
  const RationalMatrix gz = l.exact()->gram * z;
  const std::size_t n = vb.cols();
  RationalMatrix out(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const RationalMatrix ada = l.ad_exact(vb.col(a));
    const RationalMatrix row = (ada * vb).transpose() * gz;  // entries ([b_a, b_b], z)
    for (std::size_t b = 0; b < n; ++b) { out(a, b) = row(b, 0); }
  }
  return out;
}

Matrix form_matrix(const MetricLieAlgebra& l, const Matrix& vb, const Vector& z)
{
  const Vector gz = l.gram() * z;
  const Eigen::Index n = vb.cols();
  Matrix out(n, n);
  for (Eigen::Index a = 0; a < n; ++a) { out.row(a) = ((l.ad(vb.col(a)) * vb).transpose() * gz).transpose(); }
  return out;
}

}  // namespace

int count_real_roots(const std::vector<Rational>& ascending)
{
  Poly p = ascending;
  trim(p);
  if (p.empty()) { throw InputError("count_real_roots: zero polynomial"); }
  std::vector<Poly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    Poly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) { c = -c; }
    seq.push_back(std::move(r));
  }
  seq.pop_back();
  std::vector<int> at_pos;
  std::vector<int> at_neg;
  for (const auto& q : seq) {
    const int lead = sgn(q.back());
    at_pos.push_back(lead);
    at_neg.push_back((q.size() - 1) % 2 == 0 ? lead : -lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

NonsingularResult is_nonsingular(const MetricLieAlgebra& l, std::uint64_t seed, double tau_rank)
{
  TwoStepSplit s;
  try {
    s = split_two_step(l, tau_rank);
  } catch (const NotTwoStepError& e) {
    throw PreconditionError(std::string("is_nonsingular: ") + e.what());
  }
  NonsingularResult out;
  if (!s.derived_equals_center) {
    // A central direction orthogonal to [n,n] has J_Z = 0.
    const Subspace der = derived(l, tau_rank);
    const Matrix constraint = der.span.transpose() * l.gram() * s.z_basis();
    const Matrix w = constraint.rows() == 0 ? Matrix::Identity(s.m(), s.m()) : nullspace(constraint, tau_rank);
    out.answer = NonsingularResult::Answer::no;
    out.witness = s.z_basis() * w.col(0);
    out.method = "center larger than derived algebra";
    return out;
  }
  if (s.n() % 2 != 0) {
    out.answer = NonsingularResult::Answer::no;
    out.witness = s.z_basis().col(0);
    out.method = "odd dimension of v";
    return out;
  }
  const bool exact = l.has_exact() && s.z.exact_span && s.v.exact_span;
  if (exact && s.m() == 1) {
    const Rational det = rational_determinant(form_matrix_exact(l, *s.v.exact_span, s.z.exact_span->col(0)));
    out.method = "exact determinant";
    out.answer = sgn(det) != 0 ? NonsingularResult::Answer::yes : NonsingularResult::Answer::no;
    if (sgn(det) == 0) { out.witness = s.z_basis().col(0); }
    return out;
  }
  if (exact && s.m() == 2) {
    out.method = "exact Pfaffian form real-root count";
    const RationalMatrix b1 = form_matrix_exact(l, *s.v.exact_span, s.z.exact_span->col(0));
    const RationalMatrix b2 = form_matrix_exact(l, *s.v.exact_span, s.z.exact_span->col(1));
    const int deg = static_cast<int>(s.n() / 2);
    std::vector<FormSample<Rational>> evals;
    for (int j = 0; j <= deg; ++j) {
      const Rational y = j;
      evals.push_back({Rational(1), y, rational_pfaffian(b1 + b2 * y)});
    }
    const HomogeneousPolynomial2 f = interpolate_homogeneous2(evals, deg);
    const auto& c = *f.exact_coeffs;
    const Vector z1 = s.z.span.col(0);
    const Vector z2 = s.z.span.col(1);
    if (f.is_zero()) {
      out.answer = NonsingularResult::Answer::no;
      out.witness = z1;
      return out;
    }
    if (sgn(c.back()) == 0) {
      out.answer = NonsingularResult::Answer::no;
      out.witness = z2;
      return out;
    }
    if (count_real_roots(c) == 0) {
      out.answer = NonsingularResult::Answer::yes;
      return out;
    }
    // Locate one real root of f(1, w) numerically for the witness.
    const auto n = static_cast<Eigen::Index>(c.size()) - 1;
    Matrix companion = Matrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) { companion(i, i - 1) = 1.0; }
    for (Eigen::Index i = 0; i < n; ++i) {
      companion(i, n - 1) = -Rational(c[static_cast<std::size_t>(i)] / c.back()).get_d();
    }
    const Eigen::VectorXcd roots = Eigen::EigenSolver<Matrix>(companion, false).eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < roots.size(); ++i) {
      if (std::abs(roots(i).imag()) < std::abs(roots(best).imag())) { best = i; }
    }
    out.answer = NonsingularResult::Answer::no;
    out.witness = z1 + roots(best).real() * z2;
    return out;
  }

  out.method = "sampled over 1000 central directions";
  const Matrix zb = s.z_basis();
  const Matrix vb = s.v_basis();
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Vector zeta = zb * seeded_unit(seed, i, s.m());
    const Matrix j = form_matrix(l, vb, zeta);
    Eigen::JacobiSVD<Matrix> svd(j);
    const auto& sv = svd.singularValues();
    if (sv(0) > 0.0 && sv(sv.size() - 1) > 1e-9 * sv(0)) { continue; }
    if (exact) {
      const RationalMatrix zq = RationalMatrix::from_double(zeta);
      if (sgn(rational_determinant(form_matrix_exact(l, *s.v.exact_span, zq))) != 0) { continue; }
      out.method += ", exact refutation";
    }
    out.answer = NonsingularResult::Answer::no;
    out.witness = zeta;
    return out;
  }
  out.answer = NonsingularResult::Answer::sampled_yes;
  return out;
}

}  // namespace nilgo
