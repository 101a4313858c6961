#include "nilgo/operator_subspaces.hpp"

#include "nilgo/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nilgo {

Eigen::Index so_dim(Eigen::Index n) { return n * (n - 1) / 2; }

Vector so_coords(const Matrix& x)
{
  const Eigen::Index n = x.rows();
  Vector c(so_dim(n));
  Eigen::Index p = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) { c(p++) = x(a, b); }
  }
  return c;
}

Matrix so_matrix(const Vector& coords, Eigen::Index n)
{
  if (coords.size() != so_dim(n)) { throw InputError("so_matrix: wrong coordinate count"); }
  Matrix x = Matrix::Zero(n, n);
  Eigen::Index p = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      x(a, b) = coords(p);
      x(b, a) = -coords(p);
      ++p;
    }
  }
  return x;
}

RationalMatrix so_coords_exact(const RationalMatrix& x)
{
  const std::size_t n = x.rows();
  RationalMatrix c(n * (n - 1) / 2, 1);
  std::size_t p = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) { c(p++, 0) = x(a, b); }
  }
  return c;
}

RationalMatrix so_matrix_exact(const RationalMatrix& coords, std::size_t n)
{
  if (coords.rows() != n * (n - 1) / 2) { throw InputError("so_matrix_exact: wrong coordinate count"); }
  RationalMatrix x(n, n);
  std::size_t p = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      x(a, b) = coords(p, 0);
      x(b, a) = -coords(p, 0);
      ++p;
    }
  }
  return x;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

namespace {

void require_skew_operator(const Matrix& x, Eigen::Index n)
{
  if (x.rows() != n || x.cols() != n) { throw InputError("SkewOperatorSubspace: element has wrong shape"); }
  require_finite(x, "SkewOperatorSubspace");
  if (max_abs(x + x.transpose()) > 1e-12 * std::max(1.0, max_abs(x))) {
    throw InputError("SkewOperatorSubspace: element is not skew-symmetric");
  }
}

}  // namespace

SkewOperatorSubspace::SkewOperatorSubspace(Eigen::Index n, const std::vector<Matrix>& spanning, double tau_rank) : n_(n)
{
  if (n < 0) { throw InputError("SkewOperatorSubspace: negative dimension"); }
  Matrix q(so_dim(n), 0);
  for (const auto& x : spanning) {
    require_skew_operator(x, n);
    const Vector c = so_coords(x);
    const double nc = c.norm();
    if (nc == 0.0) { continue; }
    Vector r = c;
    for (int pass = 0; pass < 2; ++pass) { r -= q * (q.transpose() * r); }
    if (r.norm() <= tau_rank * nc) { continue; }
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = r / r.norm();
    basis_.push_back(0.5 * (x - x.transpose()));
  }
}

SkewOperatorSubspace SkewOperatorSubspace::from_exact(std::size_t n, const std::vector<RationalMatrix>& spanning)
{
  SkewOperatorSubspace s;
  s.n_ = static_cast<Eigen::Index>(n);
  std::vector<RationalMatrix> kept;
  RationalMatrix coords(n * (n - 1) / 2, 0);
  for (const auto& x : spanning) {
    if (x.rows() != n || x.cols() != n) { throw InputError("SkewOperatorSubspace: element has wrong shape"); }
    if (!(x + x.transpose()).is_zero()) { throw InputError("SkewOperatorSubspace: element is not skew-symmetric"); }
    RationalMatrix trial(coords.rows(), coords.cols() + 1);
    trial.set_block(0, 0, coords);
    trial.set_block(0, coords.cols(), so_coords_exact(x));
    if (rational_rank(trial) != trial.cols()) { continue; }
    coords = std::move(trial);
    kept.push_back(x);
    s.basis_.push_back(x.to_double());
  }
  s.exact_ = std::move(kept);
  return s;
}

SkewOperatorSubspace SkewOperatorSubspace::from_coordinates(Eigen::Index n, const Matrix& coords, double tau_rank)
{
  SkewOperatorSubspace s;
  s.n_ = n;
  const Matrix canon = canonical_span(coords, tau_rank);
  for (Eigen::Index k = 0; k < canon.cols(); ++k) { s.basis_.push_back(so_matrix(canon.col(k), n)); }
  return s;
}

SkewOperatorSubspace SkewOperatorSubspace::from_coordinates_exact(std::size_t n, const RationalMatrix& coords)
{
  SkewOperatorSubspace s;
  s.n_ = static_cast<Eigen::Index>(n);
  const RationalMatrix canon = canonical_span_exact(coords);
  std::vector<RationalMatrix> ex;
  for (std::size_t k = 0; k < canon.cols(); ++k) {
    ex.push_back(so_matrix_exact(canon.col(k), n));
    s.basis_.push_back(ex.back().to_double());
  }
  s.exact_ = std::move(ex);
  return s;
}

SkewOperatorSubspace SkewOperatorSubspace::full(Eigen::Index n)
{
  const auto p = static_cast<std::size_t>(so_dim(n));
  return from_coordinates_exact(static_cast<std::size_t>(n), RationalMatrix::identity(p));
}

Matrix SkewOperatorSubspace::coordinates() const
{
  Matrix c(so_dim(n_), dim());
  for (Eigen::Index k = 0; k < dim(); ++k) { c.col(k) = so_coords(basis_[static_cast<std::size_t>(k)]); }
  return c;
}

RationalMatrix SkewOperatorSubspace::coordinates_exact() const
{
  if (!exact_) { throw PreconditionError("SkewOperatorSubspace: no exact basis"); }
  const auto n = static_cast<std::size_t>(n_);
  RationalMatrix c(n * (n - 1) / 2, exact_->size());
  for (std::size_t k = 0; k < exact_->size(); ++k) { c.set_block(0, k, so_coords_exact((*exact_)[k])); }
  return c;
}

Matrix SkewOperatorSubspace::orthonormal_coordinates() const
{
  const Matrix c = coordinates();
  if (c.cols() == 0) { return c; }
  Eigen::HouseholderQR<Matrix> qr(c);
  return qr.householderQ() * Matrix::Identity(c.rows(), c.cols());
}

std::vector<Matrix> SkewOperatorSubspace::orthonormal_basis() const
{
  const Matrix q = orthonormal_coordinates();
  std::vector<Matrix> out;
  for (Eigen::Index k = 0; k < q.cols(); ++k) { out.push_back(so_matrix(q.col(k), n_)); }
  return out;
}

Matrix SkewOperatorSubspace::element(const Vector& coeffs) const
{
  if (coeffs.size() != dim()) { throw InputError("SkewOperatorSubspace::element: wrong coefficient count"); }
  Matrix x = Matrix::Zero(n_, n_);
  for (Eigen::Index k = 0; k < dim(); ++k) { x += coeffs(k) * basis_[static_cast<std::size_t>(k)]; }
  return x;
}

bool SkewOperatorSubspace::contains(const Matrix& x, double tol) const
{
  const Vector c = so_coords(x);
  const double nc = c.norm();
  if (nc == 0.0) { return true; }
  const Matrix q = orthonormal_coordinates();
  const Vector r = q.cols() == 0 ? c : Vector(c - q * (q.transpose() * c));
  return r.norm() <= tol * nc;
}

bool SkewOperatorSubspace::contains(const SkewOperatorSubspace& other, double tol) const
{
  return std::all_of(other.basis().begin(), other.basis().end(), [&](const Matrix& x) { return contains(x, tol); });
}

bool same_span(const SkewOperatorSubspace& a, const SkewOperatorSubspace& b, double tol)
{
  return a.ambient_dim() == b.ambient_dim() && a.dim() == b.dim() && a.contains(b, tol) && b.contains(a, tol);
}

double derivation_residual(const MetricLieAlgebra& l, const Matrix& d)
{
  const auto n = static_cast<Eigen::Index>(l.dim());
  double r = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector ei = Vector::Unit(n, i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Vector ej = Vector::Unit(n, j);
      const Vector res = d * l.bracket(ei, ej) - l.bracket(d * ei, ej) - l.bracket(ei, d * ej);
      r = std::max(r, res.cwiseAbs().maxCoeff());
    }
  }
  return r;
}

double skewness_residual(const MetricLieAlgebra& l, const Matrix& d)
{
  return d.size() == 0 ? 0.0 : max_abs(l.gram() * d + d.transpose() * l.gram());
}

namespace {

// Residual of the derivation identity for one D, over pairs i < j.
void derivation_rows(const MetricLieAlgebra& l, const Matrix& d, Eigen::Ref<Vector> out)
{
  const std::size_t n = l.dim();
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
          s += d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) * l.c(i, j, m);
          s -= d(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i)) * l.c(m, j, k);
          s -= d(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) * l.c(i, m, k);
        }
        out(row++) = s;
      }
    }
  }
}

struct SparseEntry
{
  std::size_t row;
  std::size_t col;
  Rational value;
};

}  // namespace

DerivationAlgebra skew_derivations(const MetricLieAlgebra& l, double tau_rank)
{
  const auto d = static_cast<Eigen::Index>(l.dim());
  DerivationAlgebra out;
  out.parent = std::make_shared<const MetricLieAlgebra>(l);
  if (d < 2) { return out; }
  const Eigen::Index p = so_dim(d);
  const Matrix ginv = l.gram().ldlt().solve(Matrix::Identity(d, d));
  Matrix system(d * d * (d - 1) / 2, p);
  std::vector<Matrix> generators;
  for (Eigen::Index k = 0; k < p; ++k) {
    generators.push_back(ginv * so_matrix(Vector::Unit(p, k), d));
    derivation_rows(l, generators.back(), system.col(k));
  }
  const Matrix kernel = nullspace(system, tau_rank);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Matrix dm = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < p; ++k) { dm += kernel(k, c) * generators[static_cast<std::size_t>(k)]; }
    out.basis.push_back(dm);
  }
  return out;
}

DerivationAlgebra skew_derivations_exact(const MetricLieAlgebra& l)
{
  if (!l.has_exact()) { throw PreconditionError("skew_derivations_exact: algebra has no exact data"); }
  const std::size_t d = l.dim();
  DerivationAlgebra out;
  out.parent = std::make_shared<const MetricLieAlgebra>(l);
  out.exact_basis.emplace();
  if (d < 2) { return out; }
  const auto& c = l.exact()->structure;
  const auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rational& { return c[(i * d + j) * d + k]; };
  const auto ginv = rational_solve(l.exact()->gram, RationalMatrix::identity(d));
  if (!ginv) { throw InputError("skew_derivations_exact: singular gram"); }

  const std::size_t p = d * (d - 1) / 2;
  RationalMatrix system(d * d * (d - 1) / 2, p);
  std::vector<RationalMatrix> generators;
  std::size_t k = 0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b, ++k) {
      // D = G^{-1} E_ab has columns a and b only: D e_b = G^{-1} e_a, D e_a = -G^{-1} e_b.
      RationalMatrix dm(d, d);
      for (std::size_t r = 0; r < d; ++r) {
        dm(r, b) = (*ginv)(r, a);
        dm(r, a) = -(*ginv)(r, b);
      }
      std::vector<SparseEntry> nz;
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t s : {a, b}) {
          if (sgn(dm(r, s)) != 0) { nz.push_back({r, s, dm(r, s)}); }
        }
      }
      std::size_t row = 0;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j, row += d) {
          for (const auto& e : nz) {
            // D [e_i, e_j] picks entry (e.row, e.col) times c(i, j, e.col).
            if (sgn(at(i, j, e.col)) != 0) { system(row + e.row, k) += e.value * at(i, j, e.col); }
            // [D e_i, e_j]: column i of D.
            if (e.col == i) {
              for (std::size_t q = 0; q < d; ++q) {
                if (sgn(at(e.row, j, q)) != 0) { system(row + q, k) -= e.value * at(e.row, j, q); }
              }
            }
            if (e.col == j) {
              for (std::size_t q = 0; q < d; ++q) {
                if (sgn(at(i, e.row, q)) != 0) { system(row + q, k) -= e.value * at(i, e.row, q); }
              }
            }
          }
        }
      }
      generators.push_back(std::move(dm));
    }
  }
  const RationalMatrix kernel = rational_nullspace(system);
  for (std::size_t col = 0; col < kernel.cols(); ++col) {
    RationalMatrix dm(d, d);
    for (std::size_t g = 0; g < p; ++g) {
      if (sgn(kernel(g, col)) != 0) { dm += generators[g] * kernel(g, col); }
    }
    out.basis.push_back(dm.to_double());
    out.exact_basis->push_back(std::move(dm));
  }
  return out;
}

namespace {

// Column q: so-coordinates of [E_q, x].
Matrix bracket_map(const Matrix& x)
{
  const Eigen::Index n = x.rows();
  const Eigen::Index p = so_dim(n);
  Matrix m(p, p);
  for (Eigen::Index q = 0; q < p; ++q) { m.col(q) = so_coords(commutator(so_matrix(Vector::Unit(p, q), n), x)); }
  return m;
}

RationalMatrix bracket_map_exact(const RationalMatrix& x)
{
  const std::size_t n = x.rows();
  const std::size_t p = n * (n - 1) / 2;
  RationalMatrix m(p, p);
  for (std::size_t q = 0; q < p; ++q) {
    RationalMatrix e(p, 1);
    e(q, 0) = 1;
    m.set_block(0, q, so_coords_exact(commutator(so_matrix_exact(e, n), x)));
  }
  return m;
}

Matrix stack_rows(const std::vector<Matrix>& blocks, Eigen::Index cols)
{
  Eigen::Index rows = 0;
  for (const auto& b : blocks) { rows += b.rows(); }
  Matrix out(rows, cols);
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

RationalMatrix stack_rows_exact(const std::vector<RationalMatrix>& blocks, std::size_t cols)
{
  std::size_t rows = 0;
  for (const auto& b : blocks) { rows += b.rows(); }
  RationalMatrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    out.set_block(r, 0, b);
    r += b.rows();
  }
  return out;
}

SkewOperatorSubspace kernel_subspace(Eigen::Index n, const Matrix& system, double tau_rank)
{
  const Eigen::Index p = so_dim(n);
  if (system.rows() == 0) { return SkewOperatorSubspace::from_coordinates(n, Matrix::Identity(p, p), tau_rank); }
  return SkewOperatorSubspace::from_coordinates(n, nullspace(system, tau_rank), tau_rank);
}

SkewOperatorSubspace kernel_subspace_exact(std::size_t n, const RationalMatrix& system)
{
  const std::size_t p = n * (n - 1) / 2;
  if (system.rows() == 0) { return SkewOperatorSubspace::from_coordinates_exact(n, RationalMatrix::identity(p)); }
  return SkewOperatorSubspace::from_coordinates_exact(n, rational_nullspace(system));
}

}  // namespace

SkewOperatorSubspace normalizer_in_so(const SkewOperatorSubspace& v, double tau_rank)
{
  const Eigen::Index n = v.ambient_dim();
  const Eigen::Index p = so_dim(n);
  if (v.dim() == 0) { return kernel_subspace(n, Matrix(0, p), tau_rank); }
  // Rows of `annihilator` span the orthogonal complement of span(V).
  const Matrix annihilator = nullspace(v.coordinates().transpose(), tau_rank).transpose();
  std::vector<Matrix> blocks;
  for (const auto& x : v.basis()) { blocks.push_back(annihilator * bracket_map(x)); }
  return kernel_subspace(n, stack_rows(blocks, p), tau_rank);
}

SkewOperatorSubspace centralizer_in_so(const SkewOperatorSubspace& v, double tau_rank)
{
  const Eigen::Index n = v.ambient_dim();
  const Eigen::Index p = so_dim(n);
  std::vector<Matrix> blocks;
  for (const auto& x : v.basis()) { blocks.push_back(bracket_map(x)); }
  return kernel_subspace(n, stack_rows(blocks, p), tau_rank);
}

SkewOperatorSubspace normalizer_in_so_exact(const SkewOperatorSubspace& v)
{
  if (!v.exact_basis()) { throw PreconditionError("normalizer_in_so_exact: no exact basis"); }
  const auto n = static_cast<std::size_t>(v.ambient_dim());
  const std::size_t p = n * (n - 1) / 2;
  if (v.dim() == 0) { return kernel_subspace_exact(n, RationalMatrix(0, p)); }
  const RationalMatrix annihilator = rational_nullspace(v.coordinates_exact().transpose()).transpose();
  std::vector<RationalMatrix> blocks;
  for (const auto& x : *v.exact_basis()) { blocks.push_back(annihilator * bracket_map_exact(x)); }
  return kernel_subspace_exact(n, stack_rows_exact(blocks, p));
}

SkewOperatorSubspace centralizer_in_so_exact(const SkewOperatorSubspace& v)
{
  if (!v.exact_basis()) { throw PreconditionError("centralizer_in_so_exact: no exact basis"); }
  const auto n = static_cast<std::size_t>(v.ambient_dim());
  const std::size_t p = n * (n - 1) / 2;
  std::vector<RationalMatrix> blocks;
  for (const auto& x : *v.exact_basis()) { blocks.push_back(bracket_map_exact(x)); }
  return kernel_subspace_exact(n, stack_rows_exact(blocks, p));
}

bool is_subalgebra(const SkewOperatorSubspace& v, double tau_rank)
{
  const Eigen::Index k = v.dim();
  if (k <= 1) { return true; }
  const Matrix base = v.coordinates();
  Matrix all(base.rows(), k + k * (k - 1) / 2);
  all.leftCols(k) = base;
  Eigen::Index c = k;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      all.col(c++) = so_coords(commutator(v.basis()[static_cast<std::size_t>(i)], v.basis()[static_cast<std::size_t>(j)]));
    }
  }
  return numerical_rank(all, tau_rank) == numerical_rank(base, tau_rank);
}

SkewOperatorSubspace generated_subalgebra(const SkewOperatorSubspace& v, double tau_rank)
{
  const Eigen::Index n = v.ambient_dim();
  const Eigen::Index p = so_dim(n);
  if (v.dim() == 0) { return v; }
  Matrix span = v.coordinates();
  Eigen::Index rank = numerical_rank(span, tau_rank);
  for (Eigen::Index iter = 0; iter <= p; ++iter) {
    const SkewOperatorSubspace current = SkewOperatorSubspace::from_coordinates(n, span, tau_rank);
    Matrix grown(p, span.cols() + current.dim() * v.dim());
    grown.leftCols(span.cols()) = span;
    Eigen::Index c = span.cols();
    for (const auto& a : current.basis()) {
      for (const auto& b : v.basis()) { grown.col(c++) = so_coords(commutator(a, b)); }
    }
    const Eigen::Index next = numerical_rank(grown, tau_rank);
    if (next == rank) { return current; }
    rank = next;
    span = SkewOperatorSubspace::from_coordinates(n, grown, tau_rank).coordinates();
  }
  throw PreconditionError("generated_subalgebra: rank kept growing past dim so(n)");
}

CompactSplit compact_split(const SkewOperatorSubspace& a, double tau_rank)
{
  if (!is_subalgebra(a, tau_rank)) { throw PreconditionError("compact_split: input is not a subalgebra"); }
  const Eigen::Index n = a.ambient_dim();
  const Eigen::Index p = so_dim(n);
  const Eigen::Index k = a.dim();
  CompactSplit out;
  if (k == 0) {
    out.center_part = a;
    out.derived_part = a;
    return out;
  }
  // Center: coefficients x with [sum x_i A_i, A_j] = 0 for all j.
  Matrix system(p * k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      system.block(j * p, i, p, 1) = so_coords(commutator(a.basis()[static_cast<std::size_t>(i)], a.basis()[static_cast<std::size_t>(j)]));
    }
  }
  const Matrix coeffs = nullspace(system, tau_rank);
  const Matrix base = a.coordinates();
  out.center_part = SkewOperatorSubspace::from_coordinates(n, coeffs.cols() == 0 ? Matrix(p, 0) : Matrix(base * coeffs), tau_rank);
  Matrix brackets(p, k * (k - 1) / 2);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      brackets.col(c++) = so_coords(commutator(a.basis()[static_cast<std::size_t>(i)], a.basis()[static_cast<std::size_t>(j)]));
    }
  }
  double scale = 0.0;
  for (const auto& x : a.basis()) { scale = std::max(scale, x.squaredNorm()); }
  for (Eigen::Index j = 0; j < brackets.cols(); ++j) {
    if (brackets.col(j).norm() <= 1e-12 * scale) { brackets.col(j).setZero(); }
  }
  if (brackets.cols() == 0 || max_abs(brackets) == 0.0) {
    out.derived_part = SkewOperatorSubspace(n, {});
  } else {
    out.derived_part = SkewOperatorSubspace::from_coordinates(n, brackets, tau_rank);
  }
  return out;
}

}  // namespace nilgo
