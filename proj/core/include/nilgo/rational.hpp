#ifndef NILGO_RATIONAL_HPP_
#define NILGO_RATIONAL_HPP_

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilgo {

using Rational = mpq_class;

/// Exact conversion: every finite double is a dyadic rational.
Rational to_rational(double value);

/// Parses "p", "p/q" or a decimal literal with optional exponent
/// ("-1.25e-3") exactly. Returns nullopt on malformed text.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text: "p" or "p/q".
std::string to_string(const Rational& value);

/// Exact square root when value is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& value);

/// Dense row-major matrix of exact rationals.
class RationalMatrix
{
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_double(const Eigen::MatrixXd& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalMatrix col(std::size_t c) const;
  RationalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RationalMatrix& b);
  Eigen::MatrixXd to_double() const;
  bool is_zero() const;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator-=(const RationalMatrix& o);
  RationalMatrix& operator*=(const Rational& s);

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form; pivot columns are returned in order.
struct RationalEchelon
{
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

RationalEchelon rational_rref(RationalMatrix a);
std::size_t rational_rank(const RationalMatrix& a);
/// Columns form a basis of ker(a), one per free column (identity there).
RationalMatrix rational_nullspace(const RationalMatrix& a);
Rational rational_determinant(RationalMatrix a);
/// Pfaffian of a skew matrix by exact skew elimination.
Rational rational_pfaffian(RationalMatrix a);
/// Exact solution of a square non-singular system; nullopt if singular.
std::optional<RationalMatrix> rational_solve(const RationalMatrix& a, const RationalMatrix& b);

/// Squared Euclidean distance from b to the column span of a, exactly.
Rational rational_residual_squared(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace nilgo

#endif  // NILGO_RATIONAL_HPP_
