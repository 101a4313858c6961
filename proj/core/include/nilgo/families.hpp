#ifndef NILGO_FAMILIES_HPP_
#define NILGO_FAMILIES_HPP_

#include "nilgo/go_checker.hpp"

#include <array>
#include <string>
#include <vector>

namespace nilgo {

/// Quaternion-type 4x4 skew matrices. L and R commute and together span so(4).
Matrix l_matrix(double b1, double b2, double b3);
Matrix r_matrix(double g1, double g2, double g3);
RationalMatrix l_matrix_exact(const Rational& b1, const Rational& b2, const Rational& b3);
RationalMatrix r_matrix_exact(const Rational& g1, const Rational& g2, const Rational& g3);

struct So4Parts
{
  std::array<double, 3> beta{};
  std::array<double, 3> gamma{};
};

/// The unique U = L(beta) + R(gamma).
So4Parts so4_decompose(const Matrix& u);

enum class Side { left, right };

/// Triple p with L(p) U = V (or R(p) U = V). Needs U != 0 and (U, V) = 0.
std::array<double, 3> transport_solve(const Vector& u, const Vector& v, Side side);

/// C(x, y) = L(0, x, -y), the 4x4 block of the ten-dimensional family.
RationalMatrix c_block(const Rational& x, const Rational& y);

/// Metric algebra with J_{Z_l} = generators[l] on R^n; basis (Z_1..Z_m, e_1..e_n),
/// gram diag(q, I).
MetricLieAlgebra algebra_from_generators(const std::vector<RationalMatrix>& generators, const MetricParameter& q);

/// [x_i, y_i] = z on the basis (x_1, y_1, ..., x_k, y_k, z).
MetricLieAlgebra heisenberg(int k, const MetricParameter& q = MetricParameter::identity(1));
MetricLieAlgebra quaternionic_heisenberg(int k, const MetricParameter& q = MetricParameter::identity(3));

/// Anticommuting complex structures J_1..J_m on the smallest faithful module,
/// repeated `copies` times: n = 2 copies (m = 1), 4 copies (m = 2, 3),
/// 8 copies (m = 4..7).
std::vector<RationalMatrix> clifford_generators(int m, int copies);
MetricLieAlgebra h_type_clifford(int m, int copies);
MetricLieAlgebra h_type_clifford(int m, int copies, const MetricParameter& q);

/// J_{x Z_1 + y Z_2} = diag(C(x, y), C(t x, y)), t >= 1.
std::vector<RationalMatrix> n10_generators(const Rational& t);
MetricLieAlgebra n10(const Rational& t, const MetricParameter& q = MetricParameter::identity(2));
MetricLieAlgebra n10_second(const MetricParameter& q = MetricParameter::identity(2));
/// diag(R(e_i), 0) and diag(0, R(e_j)).
SkewOperatorSubspace centralizer_basis_n10();

/// J = diag(C(x, y), C(t_1 x, y), ..., C(t_k x, y)) with 1 < t_1 < ... < t_k.
std::vector<RationalMatrix> thm2_generators(const std::vector<Rational>& ts);
MetricLieAlgebra family_thm2(const std::vector<Rational>& ts, const MetricParameter& q = MetricParameter::identity(2));

struct AlphaSolution
{
  std::array<Rational, 6> alpha;
  bool first_free = false;   ///< x_1..x_4 = 0, any alpha_1..alpha_3 works
  bool second_free = false;  ///< x_5..x_8 = 0, any alpha_4..alpha_6 works
};

/// Y = diag(R(alpha_1..3), R(alpha_4..6)) with Y X = J_{x Z_1 + y Z_2} X in n10(t).
AlphaSolution alpha_closed_form(const Rational& t, const Rational& x, const Rational& y, const std::array<Rational, 8>& xs);
RationalMatrix alpha_operator(const AlphaSolution& s);

/// Block-diagonal R-type operator D with D X = J_{x Z_1 + y Z_2} X for the
/// multi-block family, one transport solve per block.
Matrix thm2_isotropy(const std::vector<double>& ts, double x, double y, const Vector& xs);

struct FamilySpec
{
  std::string kind;  ///< heisenberg, quaternionic_heisenberg, h_type_clifford, n10, n10_second, thm2
  int k = 1;
  int m = 1;
  int copies = 1;
  Rational t = 1;
  std::vector<Rational> ts;
  std::optional<MetricParameter> metric;
};

MetricLieAlgebra build_family(const FamilySpec& spec);

}  // namespace nilgo

#endif  // NILGO_FAMILIES_HPP_
