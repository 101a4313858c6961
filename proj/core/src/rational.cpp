#include "nilgo/rational.hpp"

#include "nilgo/error.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace nilgo {

Rational to_rational(double value)
{
  if (!std::isfinite(value)) { throw InputError("non-finite value cannot be converted to a rational"); }
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);  // exact for every finite double
  return r;
}

namespace {

bool all_digits(std::string_view s)
{
  if (s.empty()) { return false; }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) { return false; }
  }
  return true;
}

mpz_class pow10(long e)
{
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

std::optional<Rational> parse_decimal(std::string_view text)
{
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) { return std::nullopt; }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) { exponent = -exponent; }
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    if (ip.empty() && fp.empty()) { return std::nullopt; }
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) { return std::nullopt; }
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(text)) { return std::nullopt; }
    digits = std::string(text);
  }
  Rational r(mpz_class(digits, 10));
  if (exponent > 0) {
    r *= Rational(pow10(exponent));
  } else if (exponent < 0) {
    r /= Rational(pow10(-exponent));
  }
  r.canonicalize();
  if (negative) { r = -r; }
  return r;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text)
{
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) { text.remove_prefix(1); }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) { text.remove_suffix(1); }
  if (text.empty()) { return std::nullopt; }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_decimal(text.substr(0, slash));
    auto den = parse_decimal(text.substr(slash + 1));
    if (!num || !den || *den == 0) { return std::nullopt; }
    Rational r = *num / *den;
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::optional<Rational> rational_sqrt(const Rational& value)
{
  if (sgn(value) < 0) { return std::nullopt; }
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rational r(sn, sd);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) { m(i, i) = 1; }
  return m;
}

RationalMatrix RationalMatrix::from_double(const Eigen::MatrixXd& m)
{
  RationalMatrix r(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = to_rational(m(i, j));
    }
  }
  return r;
}

RationalMatrix RationalMatrix::transpose() const
{
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) { t(j, i) = (*this)(i, j); }
  }
  return t;
}

RationalMatrix RationalMatrix::col(std::size_t c) const { return block(0, c, rows_, 1); }

RationalMatrix RationalMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
  if (r0 + nr > rows_ || c0 + nc > cols_) { throw InputError("RationalMatrix::block out of range"); }
  RationalMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) { b(i, j) = (*this)(r0 + i, c0 + j); }
  }
  return b;
}

void RationalMatrix::set_block(std::size_t r0, std::size_t c0, const RationalMatrix& b)
{
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) { throw InputError("RationalMatrix::set_block out of range"); }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) { (*this)(r0 + i, c0 + j) = b(i, j); }
  }
}

Eigen::MatrixXd RationalMatrix::to_double() const
{
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).get_d();
    }
  }
  return m;
}

bool RationalMatrix::is_zero() const
{
  for (const auto& v : data_) {
    if (sgn(v) != 0) { return false; }
  }
  return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o)
{
  if (rows_ != o.rows_ || cols_ != o.cols_) { throw InputError("RationalMatrix size mismatch in +"); }
  for (std::size_t i = 0; i < data_.size(); ++i) { data_[i] += o.data_[i]; }
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o)
{
  if (rows_ != o.rows_ || cols_ != o.cols_) { throw InputError("RationalMatrix size mismatch in -"); }
  for (std::size_t i = 0; i < data_.size(); ++i) { data_[i] -= o.data_[i]; }
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s)
{
  for (auto& v : data_) { v *= s; }
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
  if (a.cols_ != b.rows_) { throw InputError("RationalMatrix size mismatch in *"); }
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) { continue; }
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(k, j)) != 0) { c(i, j) += aik * b(k, j); }
      }
    }
  }
  return c;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b)
{
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------
// Exact elimination

RationalEchelon rational_rref(RationalMatrix a)
{
  RationalEchelon out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && sgn(a(p, c)) == 0) { ++p; }
    if (p == a.rows()) { continue; }
    if (p != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) { std::swap(a(p, j), a(row, j)); }
    }
    const Rational inv = 1 / a(row, c);
    for (std::size_t j = c; j < a.cols(); ++j) { a(row, j) *= inv; }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || sgn(a(i, c)) == 0) { continue; }
      const Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (sgn(a(row, j)) != 0) { a(i, j) -= f * a(row, j); }
      }
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rational_rank(const RationalMatrix& a) { return rational_rref(a).pivots.size(); }

RationalMatrix rational_nullspace(const RationalMatrix& a)
{
  const RationalEchelon e = rational_rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) { is_pivot[p] = true; }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!is_pivot[c]) { free_cols.push_back(c); }
  }
  RationalMatrix basis(a.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) { basis(e.pivots[r], k) = -e.reduced(r, f); }
  }
  return basis;
}

Rational rational_determinant(RationalMatrix a)
{
  if (a.rows() != a.cols()) { throw InputError("determinant of a non-square matrix"); }
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) { ++p; }
    if (p == n) { return 0; }
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) { std::swap(a(p, j), a(c, j)); }
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) { continue; }
      const Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) { a(i, j) -= f * a(c, j); }
    }
  }
  return det;
}

namespace {

void swap_symmetric(RationalMatrix& a, std::size_t i, std::size_t j)
{
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) { std::swap(a(i, c), a(j, c)); }
  for (std::size_t r = 0; r < n; ++r) { std::swap(a(r, i), a(r, j)); }
}

}  // namespace

Rational rational_pfaffian(RationalMatrix a)
{
  const std::size_t n = a.rows();
  if (n != a.cols()) { throw InputError("Pfaffian of a non-square matrix"); }
  if (n % 2 != 0) { throw InputError("Pfaffian of an odd-dimensional matrix"); }
  Rational pf = 1;
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t p = k + 1;
    while (p < n && sgn(a(k, p)) == 0) { ++p; }
    if (p == n) { return 0; }
    if (p != k + 1) {
      swap_symmetric(a, k + 1, p);
      pf = -pf;
    }
    const Rational pivot = a(k, k + 1);
    pf *= pivot;
    // Schur complement of the 2x2 pivot block [[0, p], [-p, 0]].
    for (std::size_t i = k + 2; i < n; ++i) {
      if (sgn(a(i, k)) == 0 && sgn(a(i, k + 1)) == 0) { continue; }
      for (std::size_t j = k + 2; j < n; ++j) {
        a(i, j) += (a(i, k) * a(k + 1, j) - a(i, k + 1) * a(k, j)) / pivot;
      }
    }
  }
  return pf;
}

std::optional<RationalMatrix> rational_solve(const RationalMatrix& a, const RationalMatrix& b)
{
  if (a.rows() != a.cols() || b.rows() != a.rows()) { throw InputError("rational_solve size mismatch"); }
  const std::size_t n = a.rows();
  RationalMatrix aug(n, n + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  const RationalEchelon e = rational_rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) { return std::nullopt; }
  return e.reduced.block(0, n, n, b.cols());
}

Rational rational_residual_squared(const RationalMatrix& a, const RationalMatrix& b)
{
  if (b.rows() != a.rows() || b.cols() != 1) { throw InputError("rational_residual_squared size mismatch"); }
  // Keep a maximal independent set of columns, then project through the normal equations.
  const RationalEchelon e = rational_rref(a);
  RationalMatrix basis(a.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) { basis.set_block(0, k, a.col(e.pivots[k])); }
  RationalMatrix r = b;
  if (!e.pivots.empty()) {
    const RationalMatrix bt = basis.transpose();
    auto coeffs = rational_solve(bt * basis, bt * b);
    if (!coeffs) { throw InputError("rational_residual_squared: dependent pivot columns"); }
    r -= basis * *coeffs;
  }
  Rational s = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) { s += r(i, 0) * r(i, 0); }
  return s;
}

}  // namespace nilgo
