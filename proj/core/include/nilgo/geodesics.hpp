#ifndef NILGO_GEODESICS_HPP_
#define NILGO_GEODESICS_HPP_

#include "nilgo/go_checker.hpp"

#include <vector>

namespace nilgo {

/// Point of the simply connected group in exponential coordinates.
struct GroupPoint
{
  Vector coords;
};

/// a * b = a + b + [a, b] / 2; throws UnsupportedError for class > 2.
GroupPoint group_mult(const MetricLieAlgebra& l, const GroupPoint& a, const GroupPoint& b);
GroupPoint group_inverse(const GroupPoint& a);

/// Levi-Civita connection of the left-invariant metric on left-invariant fields.
Vector connection(const MetricLieAlgebra& l, const Vector& x, const Vector& y);

struct Curve
{
  std::vector<double> times;
  std::vector<Vector> points;      ///< exponential coordinates
  std::vector<Vector> velocities;  ///< left-trivialized velocity
};

/// Geodesic through the identity with initial velocity x0, RK4 with step
/// close to h (T/h is rounded up to an integer number of steps).
Curve geodesic_integrate(const MetricLieAlgebra& l, const Vector& x0, double t_end, double h);

/// Orbit of exp(t(X + D)) through the identity; velocity exp(tD) X.
/// Throws InputError unless D is a skew derivation.
Curve orbit_integrate(const MetricLieAlgebra& l, const Vector& x, const Matrix& d, double t_end, double h);

struct GeodesicConfig
{
  double t_end = 1.0;
  double h = 1e-3;
  double tau_rank = kDefaultTauRank;
};

struct GeodesicComparison
{
  std::vector<double> times;
  std::vector<double> deviations;
  double sup_deviation = 0.0;
  Vector z_used;  ///< coefficients in the derivation basis
  Matrix d_used;  ///< the corresponding derivation
  double kv_residual = 0.0;
  double step = 0.0;
};

/// Integrates the geodesic with initial velocity x0 and the orbit generated
/// by X + D with D from kv_solve on (D(n), n); reports the gram distance.
GeodesicComparison compare_geodesic_orbit(const MetricLieAlgebra& l, const Vector& x0, const GeodesicConfig& cfg = {});
GeodesicComparison compare_geodesic_orbit(const ReductiveDecomposition& decomp, const Vector& x0, const GeodesicConfig& cfg = {});

}  // namespace nilgo

#endif  // NILGO_GEODESICS_HPP_
