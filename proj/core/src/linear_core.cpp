#include "nilgo/linear_core.hpp"

#include "nilgo/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace nilgo {

void require_finite(const Matrix& a, const char* what)
{
  if (!a.allFinite()) { throw InputError(std::string(what) + ": non-finite entries"); }
}

namespace {

Eigen::Index retained_rank(const Vector& sv, double tau_rank, double floor = 0.0)
{
  if (sv.size() == 0 || sv(0) == 0.0) { return 0; }
  const double cut = std::max(tau_rank * sv(0), floor);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) { ++r; }
  return r;
}

}  // namespace

Matrix nullspace(const Matrix& a, double tau_rank) { return nullspace(a, tau_rank, 0.0); }

Matrix nullspace(const Matrix& a, double tau_rank, double floor)
{
  if (!(tau_rank > 0.0)) { throw InputError("nullspace: tau_rank must be positive"); }
  require_finite(a, "nullspace");
  const Eigen::Index n = a.cols();
  if (n == 0) { return Matrix(0, 0); }
  if (a.rows() == 0) { return Matrix::Identity(n, n); }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Eigen::Index r = retained_rank(svd.singularValues(), tau_rank, floor);
  return svd.matrixV().rightCols(n - r);
}

Eigen::Index numerical_rank(const Matrix& a, double tau_rank)
{
  require_finite(a, "numerical_rank");
  if (a.size() == 0) { return 0; }
  Eigen::JacobiSVD<Matrix> svd(a);
  return retained_rank(svd.singularValues(), tau_rank);
}

LeastSquaresResult least_squares(const Matrix& a, const Vector& b, double tau_rank, double floor)
{
  if (a.rows() != b.size()) { throw InputError("least_squares: rows(A) != len(b)"); }
  require_finite(a, "least_squares");
  require_finite(b, "least_squares");
  LeastSquaresResult out;
  out.x = Vector::Zero(a.cols());
  if (a.size() == 0) {
    out.residual = b.norm();
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const Eigen::Index r = retained_rank(sv, tau_rank, floor);
  out.rank = r;
  if (r > 0) {
    const Vector ub = svd.matrixU().leftCols(r).transpose() * b;
    out.x = svd.matrixV().leftCols(r) * ub.cwiseQuotient(sv.head(r));
    out.condition = sv(0) / sv(r - 1);
  }
  out.residual = (a * out.x - b).norm();
  return out;
}

namespace {

void swap_symmetric(Matrix& a, Eigen::Index i, Eigen::Index j)
{
  a.row(i).swap(a.row(j));
  a.col(i).swap(a.col(j));
}

void require_skew(const Matrix& s, const char* what)
{
  if (s.rows() != s.cols()) { throw InputError(std::string(what) + ": matrix is not square"); }
  if (s.rows() % 2 != 0) { throw InputError(std::string(what) + ": odd dimension"); }
  require_finite(s, what);
  const double scale = max_abs(s);
  if (scale > 0.0 && max_abs(s + s.transpose()) > 1e-12 * scale) {
    throw InputError(std::string(what) + ": matrix is not skew-symmetric");
  }
}

}  // namespace

double pfaffian_numeric(const Matrix& s)
{
  require_skew(s, "pfaffian_numeric");
  Matrix a = 0.5 * (s - s.transpose());
  const Eigen::Index n = a.rows();
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index p = k;
    Eigen::Index q = k + 1;
    double best = 0.0;
    for (Eigen::Index i = k; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          p = i;
          q = j;
        }
      }
    }
    if (best == 0.0) { return 0.0; }
    if (p != k) {
      swap_symmetric(a, k, p);
      pf = -pf;
    }
    if (q != k + 1) {
      swap_symmetric(a, k + 1, q);
      pf = -pf;
    }
    const double pivot = a(k, k + 1);
    pf *= pivot;
    const Eigen::Index rest = n - k - 2;
    if (rest > 0) {
      const Vector u = a.col(k).tail(rest);
      const Vector w = a.col(k + 1).tail(rest);
      // Schur complement of [[0, p], [-p, 0]]; u, w are minus the pivot rows.
      a.bottomRightCorner(rest, rest) += (w * u.transpose() - u * w.transpose()) / pivot;
    }
  }
  return pf;
}

namespace {

double expand(const Matrix& a, std::vector<Eigen::Index>& idx)
{
  if (idx.empty()) { return 1.0; }
  const Eigen::Index first = idx.front();
  double total = 0.0;
  double sign = 1.0;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const Eigen::Index partner = idx[j];
    const double entry = a(first, partner);
    if (entry != 0.0) {
      std::vector<Eigen::Index> rest;
      rest.reserve(idx.size() - 2);
      for (std::size_t k = 1; k < idx.size(); ++k) {
        if (k != j) { rest.push_back(idx[k]); }
      }
      total += sign * entry * expand(a, rest);
    }
    sign = -sign;
  }
  return total;
}

}  // namespace

double pfaffian_expansion(const Matrix& s)
{
  require_skew(s, "pfaffian_expansion");
  if (s.rows() > 6) { throw InputError("pfaffian_expansion: dimension > 6"); }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(s.rows()));
  for (Eigen::Index i = 0; i < s.rows(); ++i) { idx[static_cast<std::size_t>(i)] = i; }
  return expand(s, idx);
}

Matrix canonical_span(const Matrix& spanning_columns, double tau_rank)
{
  require_finite(spanning_columns, "canonical_span");
  const Eigen::Index d = spanning_columns.rows();
  if (spanning_columns.cols() == 0 || d == 0) { return Matrix(d, 0); }
  Eigen::JacobiSVD<Matrix> svd(spanning_columns, Eigen::ComputeThinU);
  const Eigen::Index r = retained_rank(svd.singularValues(), tau_rank);
  Matrix rows = svd.matrixU().leftCols(r).transpose();  // orthonormal rows
  const double pivot_tol = std::sqrt(tau_rank);
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < d && row < r; ++c) {
    Eigen::Index p = row;
    double best = 0.0;
    for (Eigen::Index i = row; i < r; ++i) {
      if (std::abs(rows(i, c)) > best) {
        best = std::abs(rows(i, c));
        p = i;
      }
    }
    if (best <= pivot_tol) { continue; }
    rows.row(p).swap(rows.row(row));
    rows.row(row) /= rows(row, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (i != row) { rows.row(i) -= rows(i, c) * rows.row(row); }
    }
    // Clean the pivot column so the canonical form is exact there.
    for (Eigen::Index i = 0; i < r; ++i) { rows(i, c) = (i == row) ? 1.0 : 0.0; }
    ++row;
  }
  return rows.topRows(row).transpose();
}

Matrix gram_orthonormalize(const Matrix& basis, const Matrix& gram)
{
  Matrix q = basis;
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) {
        const double c = q.col(j).dot(gram * q.col(k));
        q.col(k) -= c * q.col(j);
      }
    }
    const double nrm2 = q.col(k).dot(gram * q.col(k));
    if (!(nrm2 > 0.0)) { throw InputError("gram_orthonormalize: dependent vectors or indefinite gram"); }
    q.col(k) /= std::sqrt(nrm2);
  }
  return q;
}

RationalMatrix canonical_span_exact(const RationalMatrix& spanning_columns)
{
  const RationalEchelon e = rational_rref(spanning_columns.transpose());
  return e.reduced.block(0, 0, e.pivots.size(), spanning_columns.rows()).transpose();
}

std::optional<RationalMatrix> gram_orthonormalize_exact(const RationalMatrix& basis, const RationalMatrix& gram)
{
  RationalMatrix q = basis;
  const std::size_t d = q.rows();
  auto inner = [&](std::size_t a, std::size_t b) {
    Rational s = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(q(i, a)) == 0) { continue; }
      for (std::size_t j = 0; j < d; ++j) {
        if (sgn(q(j, b)) != 0 && sgn(gram(i, j)) != 0) { s += q(i, a) * gram(i, j) * q(j, b); }
      }
    }
    return s;
  };
  for (std::size_t k = 0; k < q.cols(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      const Rational c = inner(j, k);
      if (sgn(c) == 0) { continue; }
      for (std::size_t i = 0; i < d; ++i) { q(i, k) -= c * q(i, j); }
    }
    const auto root = rational_sqrt(inner(k, k));
    if (!root || sgn(*root) == 0) { return std::nullopt; }
    for (std::size_t i = 0; i < d; ++i) { q(i, k) /= *root; }
  }
  return q;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool span_contains(const Matrix& b, const Matrix& a, double tol)
{
  if (a.cols() == 0) { return true; }
  if (b.cols() == 0) { return max_abs(a) == 0.0; }
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeThinU);
  const Eigen::Index r = retained_rank(svd.singularValues(), kDefaultTauRank);
  const Matrix q = svd.matrixU().leftCols(r);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const Vector col = a.col(j);
    if (col.norm() == 0.0) { continue; }
    const double resid = (col - q * (q.transpose() * col)).norm();
    if (resid > tol * std::max(col.norm(), 1e-300)) { return false; }
  }
  return true;
}

}  // namespace nilgo
