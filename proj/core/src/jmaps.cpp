#include "nilgo/jmaps.hpp"

#include "nilgo/error.hpp"

#include <cmath>
#include <numbers>

namespace nilgo {

Matrix JMapFamily::operator()(const Vector& z_coords) const
{
  if (z_coords.size() != m()) { throw InputError("JMapFamily: wrong number of z coordinates"); }
  Matrix j = Matrix::Zero(n(), n());
  for (Eigen::Index i = 0; i < m(); ++i) { j += z_coords(i) * generators[static_cast<std::size_t>(i)]; }
  return j;
}

Matrix build_jmap(const TwoStepSplit& split, const Vector& z_coords)
{
  if (z_coords.size() != split.m()) { throw InputError("build_jmap: wrong number of z coordinates"); }
  const MetricLieAlgebra& l = *split.parent;
  const Matrix& w = split.v_basis();
  const Vector gz = l.gram() * (split.z_basis() * z_coords);
  Matrix j(split.n(), split.n());
  for (Eigen::Index a = 0; a < split.n(); ++a) { j.col(a) = (l.ad(w.col(a)) * w).transpose() * gz; }
  return j;
}

RationalMatrix build_jmap_exact(const TwoStepSplit& split, const RationalMatrix& z_coords)
{
  if (!split.has_exact_bases() || !split.parent->has_exact()) {
    throw PreconditionError("build_jmap_exact: split has no rational orthonormal bases");
  }
  const MetricLieAlgebra& l = *split.parent;
  const RationalMatrix& w = *split.v.exact_orthonormal;
  const RationalMatrix gz = l.exact()->gram * (*split.z.exact_orthonormal * z_coords);
  const std::size_t n = w.cols();
  RationalMatrix j(n, n);
  for (std::size_t a = 0; a < n; ++a) { j.set_block(0, a, (l.ad_exact(w.col(a)) * w).transpose() * gz); }
  return j;
}

JMapFamily build_jmap_family(const TwoStepSplit& split)
{
  JMapFamily f;
  f.split = split;
  const auto m = static_cast<std::size_t>(split.m());
  for (std::size_t i = 0; i < m; ++i) {
    f.generators.push_back(build_jmap(split, Vector::Unit(split.m(), static_cast<Eigen::Index>(i))));
  }
  if (split.has_exact_bases() && split.parent->has_exact()) {
    std::vector<RationalMatrix> ex;
    for (std::size_t i = 0; i < m; ++i) {
      RationalMatrix e(m, 1);
      e(i, 0) = 1;
      ex.push_back(build_jmap_exact(split, e));
      f.generators[i] = ex.back().to_double();
    }
    f.exact_generators = std::move(ex);
  }
  return f;
}

Eigen::Index generator_rank(const JMapFamily& family, double tau_rank)
{
  if (family.generators.empty()) { return 0; }
  const Eigen::Index n = family.n();
  Matrix stacked(n * n, family.m());
  for (Eigen::Index i = 0; i < family.m(); ++i) {
    stacked.col(i) = family.generators[static_cast<std::size_t>(i)].reshaped();
  }
  return numerical_rank(stacked, tau_rank);
}

bool is_h_type(const JMapFamily& family, double tol)
{
  const Eigen::Index n = family.n();
  const Matrix id = Matrix::Identity(n, n);
  const auto& g = family.generators;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (max_abs(g[i] * g[i] + id) > tol) { return false; }
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (max_abs(g[i] * g[j] + g[j] * g[i]) > tol) { return false; }
    }
  }
  return true;
}

bool is_h_type(const TwoStepSplit& split, double tol) { return is_h_type(build_jmap_family(split), tol); }

HomogeneousPolynomial2 pfaffian_form(const TwoStepSplit& split)
{
  if (split.m() != 2) { throw UnsupportedError("pfaffian_form: center dimension must be 2"); }
  if (split.n() % 2 != 0) { throw InputError("pfaffian_form: dim v is odd"); }
  const JMapFamily f = build_jmap_family(split);
  const int deg = static_cast<int>(split.n() / 2);
  if (f.exact_generators) {
    const auto& g = *f.exact_generators;
    std::vector<FormSample<Rational>> evals;
    for (int j = 0; j <= deg; ++j) {
      const Rational y = j;
      evals.push_back({Rational(1), y, rational_pfaffian(g[0] + g[1] * y)});
    }
    return interpolate_homogeneous2(evals, deg).sign_normalized();
  }
  std::vector<FormSample<double>> evals;
  const int count = deg + 3;
  for (int k = 0; k < count; ++k) {
    const double theta = std::numbers::pi * k / count;
    const double x = std::cos(theta);
    const double y = std::sin(theta);
    evals.push_back({x, y, pfaffian_numeric(x * f.generators[0] + y * f.generators[1])});
  }
  return interpolate_homogeneous2(evals, deg).sign_normalized();
}

int radon_hurwitz(int n)
{
  if (n <= 0) { throw InputError("radon_hurwitz: n must be positive"); }
  int e = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++e;
  }
  const int b = e / 4;
  const int c = e % 4;
  return 8 * b + (1 << c);
}

bool center_bound_check(const TwoStepSplit& split)
{
  return split.m() < radon_hurwitz(static_cast<int>(split.n()));
}

const char* to_string(Isotypic v)
{
  switch (v) {
    case Isotypic::plus_id: return "plus_id";
    case Isotypic::minus_id: return "minus_id";
    case Isotypic::neither: return "neither";
  }
  return "neither";
}

Isotypic isotypic_test(const TwoStepSplit& split, double tol)
{
  if (split.m() != 7) { throw PreconditionError("isotypic_test: center dimension must be 7"); }
  const JMapFamily f = build_jmap_family(split);
  if (!is_h_type(f, tol)) { throw PreconditionError("isotypic_test: algebra is not of H-type"); }
  const Matrix id = Matrix::Identity(f.n(), f.n());
  Matrix t = id;
  for (const auto& g : f.generators) { t = t * g; }
  if (max_abs(t - id) <= tol) { return Isotypic::plus_id; }
  if (max_abs(t + id) <= tol) { return Isotypic::minus_id; }
  return Isotypic::neither;
}

}  // namespace nilgo
