#include "nilgo/geodesics.hpp"

#include "nilgo/error.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <functional>

namespace nilgo {

namespace {

void require_two_step(const MetricLieAlgebra& l)
{
  const auto cls = nilpotency_class(l);
  if (!cls || *cls > 2) { throw UnsupportedError("group model needs a nilpotent algebra of class at most 2"); }
}

std::size_t step_count(double t_end, double h)
{
  if (!(h > 0.0) || !std::isfinite(h)) { throw InputError("integrator: h must be positive"); }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) { throw InputError("integrator: T must be non-negative"); }
  return static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
}

// Position equation x' = v + [x, v] / 2 with a prescribed velocity v(t),
// sampled at step starts, midpoints and ends.
Curve reconstruct(const MetricLieAlgebra& l, std::size_t steps, double h,
                  const std::function<Vector(std::size_t, int)>& velocity)
{
  Curve c;
  Vector x = Vector::Zero(static_cast<Eigen::Index>(l.dim()));
  auto f = [&](const Vector& p, const Vector& v) { return Vector(v + 0.5 * l.bracket(p, v)); };
  c.times.push_back(0.0);
  c.points.push_back(x);
  c.velocities.push_back(velocity(0, 0));
  for (std::size_t k = 0; k < steps; ++k) {
    const Vector v0 = velocity(k, 0);
    const Vector vm = velocity(k, 1);
    const Vector v1 = velocity(k, 2);
    const Vector k1 = f(x, v0);
    const Vector k2 = f(x + 0.5 * h * k1, vm);
    const Vector k3 = f(x + 0.5 * h * k2, vm);
    const Vector k4 = f(x + h * k3, v1);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    c.times.push_back(static_cast<double>(k + 1) * h);
    c.points.push_back(x);
    c.velocities.push_back(v1);
  }
  return c;
}

}  // namespace

GroupPoint group_mult(const MetricLieAlgebra& l, const GroupPoint& a, const GroupPoint& b)
{
  require_two_step(l);
  const auto d = static_cast<Eigen::Index>(l.dim());
  if (a.coords.size() != d || b.coords.size() != d) { throw InputError("group_mult: wrong dimension"); }
  return {a.coords + b.coords + 0.5 * l.bracket(a.coords, b.coords)};
}

GroupPoint group_inverse(const GroupPoint& a) { return {-a.coords}; }

Vector connection(const MetricLieAlgebra& l, const Vector& x, const Vector& y)
{
  const Matrix& g = l.gram();
  const Vector rhs = 0.5 * (g * l.bracket(x, y) - l.ad(y).transpose() * (g * x) - l.ad(x).transpose() * (g * y));
  return g.ldlt().solve(rhs);
}

Curve geodesic_integrate(const MetricLieAlgebra& l, const Vector& x0, double t_end, double h)
{
  if (x0.size() != static_cast<Eigen::Index>(l.dim())) { throw InputError("geodesic_integrate: wrong dimension"); }
  require_two_step(l);
  const std::size_t steps = step_count(t_end, h);
  const double hs = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);
  const Matrix& g = l.gram();
  const auto ldlt = g.ldlt();
  // (v', w) = ([v, w], v) for all w.
  auto vdot = [&](const Vector& v) { return Vector(ldlt.solve(l.ad(v).transpose() * (g * v))); };
  auto xdot = [&](const Vector& x, const Vector& v) { return Vector(v + 0.5 * l.bracket(x, v)); };
  Curve c;
  Vector x = Vector::Zero(x0.size());
  Vector v = x0;
  c.times.push_back(0.0);
  c.points.push_back(x);
  c.velocities.push_back(v);
  for (std::size_t k = 0; k < steps; ++k) {
    const Vector a1 = vdot(v);
    const Vector b1 = xdot(x, v);
    const Vector v2 = v + 0.5 * hs * a1;
    const Vector x2 = x + 0.5 * hs * b1;
    const Vector a2 = vdot(v2);
    const Vector b2 = xdot(x2, v2);
    const Vector v3 = v + 0.5 * hs * a2;
    const Vector x3 = x + 0.5 * hs * b2;
    const Vector a3 = vdot(v3);
    const Vector b3 = xdot(x3, v3);
    const Vector v4 = v + hs * a3;
    const Vector x4 = x + hs * b3;
    const Vector a4 = vdot(v4);
    const Vector b4 = xdot(x4, v4);
    v += hs / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    x += hs / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    c.times.push_back(static_cast<double>(k + 1) * hs);
    c.points.push_back(x);
    c.velocities.push_back(v);
  }
  return c;
}

Curve orbit_integrate(const MetricLieAlgebra& l, const Vector& x, const Matrix& d, double t_end, double h)
{
  const auto dim = static_cast<Eigen::Index>(l.dim());
  if (x.size() != dim || d.rows() != dim || d.cols() != dim) { throw InputError("orbit_integrate: wrong dimension"); }
  require_finite(d, "orbit_integrate");
  const double scale = std::max(1.0, max_abs(d));
  if (derivation_residual(l, d) > 1e-9 * scale * std::max(1.0, l.max_abs_structure()) ||
      skewness_residual(l, d) > 1e-9 * scale * std::max(1.0, max_abs(l.gram()))) {
    throw InputError("orbit_integrate: D is not a skew-symmetric derivation");
  }
  require_two_step(l);
  const std::size_t steps = step_count(t_end, h);
  const double hs = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);
  const Matrix half = (0.5 * hs * d).exp();
  // v at half-step k/2 is half^k x.
  std::vector<Vector> v{x};
  for (std::size_t k = 0; k < 2 * steps; ++k) { v.push_back(half * v.back()); }
  return reconstruct(l, steps, hs, [&](std::size_t k, int stage) { return v[2 * k + static_cast<std::size_t>(stage)]; });
}

GeodesicComparison compare_geodesic_orbit(const MetricLieAlgebra& l, const Vector& x0, const GeodesicConfig& cfg)
{
  return compare_geodesic_orbit(nilmanifold_decomposition(l, cfg.tau_rank), x0, cfg);
}

GeodesicComparison compare_geodesic_orbit(const ReductiveDecomposition& decomp, const Vector& x0, const GeodesicConfig& cfg)
{
  const MetricLieAlgebra& l = decomp.p_algebra;
  const auto dim = static_cast<Eigen::Index>(l.dim());
  GeodesicComparison out;
  const KvSolution kv = kv_solve(decomp, x0, cfg.tau_rank);
  out.z_used = kv.z;
  out.kv_residual = kv.residual;
  out.d_used = Matrix::Zero(dim, dim);
  for (std::size_t b = 0; b < decomp.h_basis.size(); ++b) { out.d_used += kv.z(static_cast<Eigen::Index>(b)) * decomp.h_basis[b]; }
  const Curve geo = geodesic_integrate(l, x0, cfg.t_end, cfg.h);
  const Curve orb = orbit_integrate(l, x0, out.d_used, cfg.t_end, cfg.h);
  out.step = geo.times.size() > 1 ? geo.times[1] : 0.0;
  for (std::size_t k = 0; k < geo.times.size(); ++k) {
    const Vector diff = geo.points[k] - orb.points[k];
    const double dev = std::sqrt(std::max(0.0, l.inner(diff, diff)));
    out.times.push_back(geo.times[k]);
    out.deviations.push_back(dev);
    out.sup_deviation = std::max(out.sup_deviation, dev);
  }
  return out;
}

}  // namespace nilgo
