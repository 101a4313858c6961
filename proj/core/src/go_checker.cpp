#include "nilgo/go_checker.hpp"

#include "nilgo/error.hpp"
#include "nilgo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace nilgo {

const char* to_string(CertificateStatus s)
{
  switch (s) {
    case CertificateStatus::verified_sampled: return "verified_sampled";
    case CertificateStatus::verified_exact: return "verified_exact";
    case CertificateStatus::refuted: return "refuted";
    case CertificateStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct SamplePoint
{
  Vector x;
  Vector y;
};

struct SampleOutcome
{
  double relative = 0.0;
  double condition = 1.0;
  Matrix solution;
};

// Basis vectors and normalized pairwise sums of the columns of `basis`.
std::vector<Vector> sweep_vectors(const Matrix& basis)
{
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) { out.emplace_back(basis.col(i)); }
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < basis.cols(); ++j) { out.emplace_back((basis.col(i) + basis.col(j)) / std::sqrt(2.0)); }
  }
  return out;
}

/// Assembles a certificate. `recheck(i)` returns the exact relative residual
/// of sample i when an exact path exists.
GOCertificate assemble(const std::string& check, const SamplerConfig& cfg, const std::vector<SamplePoint>& points,
                       std::vector<SampleOutcome>& outcomes,
                       const std::function<std::optional<double>(std::size_t)>& recheck)
{
  GOCertificate cert;
  cert.check = check;
  cert.samples = points.size();
  cert.tolerances = cfg.tol;
  cert.seed = cfg.seed;
  bool above_feas = false;
  int rechecks = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    cert.max_residual = std::max(cert.max_residual, o.relative);
    if (o.relative > cfg.tol.feas) { above_feas = true; }
    if (cfg.keep_trace) { cert.trace.push_back({i, points[i].x, points[i].y, o.solution, o.relative}); }
    if (cert.witness || o.relative <= cfg.tol.refute || o.condition >= cfg.tol.condition_limit) { continue; }
    Witness w{i, points[i].x, points[i].y, o.relative, false, o.relative};
    if (rechecks < 8) {
      ++rechecks;
      const auto exact = recheck(i);
      if (exact) {
        w.exact_residual = *exact;
        if (*exact <= cfg.tol.refute) { continue; }
        w.exact_confirmed = true;
      }
    }
    cert.witness = w;
  }
  if (cert.witness) {
    cert.status = CertificateStatus::refuted;
  } else if (above_feas) {
    cert.status = CertificateStatus::inconclusive;
  } else {
    cert.status = CertificateStatus::verified_sampled;
  }
  return cert;
}

// Exact vector in the span of a reduced echelon basis, read off at the pivots.
RationalMatrix rationalize_in(const RationalMatrix& canon, const Vector& x)
{
  RationalMatrix coeffs(canon.cols(), 1);
  for (std::size_t k = 0; k < canon.cols(); ++k) {
    std::size_t pivot = 0;
    while (pivot < canon.rows() && sgn(canon(pivot, k)) == 0) { ++pivot; }
    coeffs(k, 0) = to_rational(x(static_cast<Eigen::Index>(pivot))) / canon(pivot, k);
  }
  return canon * coeffs;
}

double rational_norm(const RationalMatrix& x) { return x.to_double().norm(); }

double max_norm(const std::vector<Matrix>& ms)
{
  double s = 0.0;
  for (const auto& m : ms) { s = std::max(s, m.norm()); }
  return s;
}

}  // namespace

ReductiveDecomposition nilmanifold_decomposition(const MetricLieAlgebra& l, double tau_rank)
{
  ReductiveDecomposition d = nilmanifold_decomposition(l, skew_derivations(l, tau_rank));
  if (l.has_exact()) { d.exact_h_basis = skew_derivations_exact(l).exact_basis; }
  return d;
}

ReductiveDecomposition nilmanifold_decomposition(const MetricLieAlgebra& l, const DerivationAlgebra& h)
{
  ReductiveDecomposition d;
  d.p_algebra = l;
  d.h_basis = h.basis;
  d.exact_h_basis = h.exact_basis;
  return d;
}

namespace {

struct KvSystem
{
  Matrix a;
  Vector b;
};

KvSystem kv_system(const ReductiveDecomposition& decomp, const Vector& x)
{
  const MetricLieAlgebra& l = decomp.p_algebra;
  const Vector gx = l.gram() * x;
  KvSystem s;
  s.a.resize(decomp.p_dim(), static_cast<Eigen::Index>(decomp.h_basis.size()));
  for (std::size_t b = 0; b < decomp.h_basis.size(); ++b) {
    s.a.col(static_cast<Eigen::Index>(b)) = decomp.h_basis[b].transpose() * gx;
  }
  s.b = -(l.ad(x).transpose() * gx);
  return s;
}

}  // namespace

KvSolution kv_solve(const ReductiveDecomposition& decomp, const Vector& x, double tau_rank)
{
  if (x.size() != decomp.p_dim()) { throw InputError("kv_solve: X has wrong dimension"); }
  const KvSystem s = kv_system(decomp, x);
  const double xx = decomp.p_algebra.inner(x, x);
  const double floor = 1e-12 * std::sqrt(xx) * x.norm() * max_norm(decomp.h_basis);
  const LeastSquaresResult ls = least_squares(s.a, s.b, tau_rank, floor);
  KvSolution out;
  out.z = ls.x;
  out.residual = ls.residual;
  out.condition = ls.condition;
  const double scale = xx * decomp.p_algebra.max_abs_structure();
  out.relative = out.residual == 0.0 ? 0.0 : out.residual / std::max(scale, 1e-300);
  return out;
}

GOCertificate kv_go_check(const ReductiveDecomposition& decomp, const SamplerConfig& cfg)
{
  const MetricLieAlgebra& l = decomp.p_algebra;
  const Eigen::Index d = decomp.p_dim();
  std::vector<SamplePoint> points;
  auto g_unit = [&](Vector v) { return Vector(v / std::sqrt(l.inner(v, v))); };
  if (cfg.sweep) {
    for (const auto& v : sweep_vectors(Matrix::Identity(d, d))) { points.push_back({g_unit(v), Vector()}); }
  }
  for (std::size_t i = 0; i < cfg.samples; ++i) { points.push_back({g_unit(seeded_unit(cfg.seed, i, d)), Vector()}); }

  std::vector<SampleOutcome> outcomes;
  for (const auto& p : points) {
    const KvSolution s = kv_solve(decomp, p.x, cfg.tol.tau_rank);
    Matrix op = Matrix::Zero(d, d);
    for (std::size_t b = 0; b < decomp.h_basis.size(); ++b) { op += s.z(static_cast<Eigen::Index>(b)) * decomp.h_basis[b]; }
    outcomes.push_back({s.relative, s.condition, op});
  }

  std::optional<std::vector<RationalMatrix>> exact_h = decomp.exact_h_basis;
  auto recheck = [&](std::size_t i) -> std::optional<double> {
    if (!l.has_exact() || !exact_h) { return std::nullopt; }
    const Vector& x = points[i].x;
    const RationalMatrix xq = RationalMatrix::from_double(x);
    const RationalMatrix gx = l.exact()->gram * xq;
    RationalMatrix a(static_cast<std::size_t>(d), exact_h->size());
    for (std::size_t b = 0; b < exact_h->size(); ++b) { a.set_block(0, b, (*exact_h)[b].transpose() * gx); }
    RationalMatrix rhs = l.ad_exact(xq).transpose() * gx;
    rhs *= Rational(-1);
    const double res = std::sqrt(rational_residual_squared(a, rhs).get_d());
    return res / std::max(l.inner(x, x) * l.max_abs_structure(), 1e-300);
  };
  return assemble("kv", cfg, points, outcomes, recheck);
}

GOCertificate gordon_go_check(const MetricLieAlgebra& l, const SamplerConfig& cfg, const std::vector<Matrix>* restrict_to)
{
  TwoStepSplit split;
  try {
    split = split_two_step(l, cfg.tol.tau_rank);
  } catch (const NotTwoStepError& e) {
    throw PreconditionError(std::string("gordon_go_check: ") + e.what());
  }
  if (!split.derived_equals_center) { throw PreconditionError("gordon_go_check: [n,n] differs from the center"); }
  const auto d = static_cast<Eigen::Index>(l.dim());
  std::vector<Matrix> ops = skew_derivations(l, cfg.tol.tau_rank).basis;
  if (restrict_to != nullptr) {
    // D(n) intersected with span(restrict_to).
    Matrix sys(d * d, static_cast<Eigen::Index>(ops.size() + restrict_to->size()));
    Eigen::Index c = 0;
    for (const auto& m : ops) { sys.col(c++) = m.reshaped(); }
    for (const auto& m : *restrict_to) {
      if (m.rows() != d || m.cols() != d) { throw InputError("gordon_go_check: restriction operator has wrong shape"); }
      sys.col(c++) = -m.reshaped();
    }
    const Matrix ker = nullspace(sys, cfg.tol.tau_rank);
    std::vector<Matrix> meet;
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
      Matrix m = Matrix::Zero(d, d);
      for (std::size_t j = 0; j < ops.size(); ++j) { m += ker(static_cast<Eigen::Index>(j), k) * ops[j]; }
      meet.push_back(m);
    }
    ops = std::move(meet);
  }
  const Matrix ginv = l.gram().ldlt().solve(Matrix::Identity(d, d));
  const Matrix g = l.gram();
  auto jxy = [&](const Vector& x, const Vector& y) { return Vector(ginv * (l.ad(y).transpose() * (g * x))); };

  std::vector<SamplePoint> points;
  if (cfg.sweep) {
    const auto xs = sweep_vectors(split.z_basis());
    const auto ys = sweep_vectors(split.v_basis());
    for (const auto& x : xs) {
      for (const auto& y : ys) { points.push_back({x, y}); }
    }
  }
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto rng = sample_rng(cfg.seed, i);
    const Vector xc = random_unit(rng, split.m());
    const Vector yc = random_unit(rng, split.n());
    points.push_back({split.z_basis() * xc, split.v_basis() * yc});
  }

  const double opscale = max_norm(ops);
  std::vector<SampleOutcome> outcomes;
  for (const auto& p : points) {
    Matrix a(2 * d, static_cast<Eigen::Index>(ops.size()));
    for (std::size_t k = 0; k < ops.size(); ++k) {
      a.col(static_cast<Eigen::Index>(k)) << ops[k] * p.x, ops[k] * p.y;
    }
    Vector b(2 * d);
    const Vector target = jxy(p.x, p.y);
    b << Vector::Zero(d), target;
    const double norm = target.norm() + p.x.norm() * p.y.norm();
    const LeastSquaresResult ls = least_squares(a, b, cfg.tol.tau_rank, 1e-12 * opscale * norm);
    Matrix op = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < ops.size(); ++k) { op += ls.x(static_cast<Eigen::Index>(k)) * ops[k]; }
    outcomes.push_back({ls.residual / norm, ls.condition, op});
  }

  std::optional<DerivationAlgebra> exact_der;
  auto recheck = [&](std::size_t i) -> std::optional<double> {
    if (!l.has_exact() || restrict_to != nullptr || !split.z.exact_span || !split.v.exact_span) { return std::nullopt; }
    if (!exact_der) { exact_der = skew_derivations_exact(l); }
    const auto& basis = *exact_der->exact_basis;
    const RationalMatrix xq = rationalize_in(*split.z.exact_span, points[i].x);
    const RationalMatrix yq = rationalize_in(*split.v.exact_span, points[i].y);
    const auto ginv_q = rational_solve(l.exact()->gram, RationalMatrix::identity(l.dim()));
    const RationalMatrix target = (*ginv_q) * (l.ad_exact(yq).transpose() * (l.exact()->gram * xq));
    const auto du = static_cast<std::size_t>(d);
    RationalMatrix a(2 * du, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      a.set_block(0, k, basis[k] * xq);
      a.set_block(du, k, basis[k] * yq);
    }
    RationalMatrix b(2 * du, 1);
    b.set_block(du, 0, target);
    const double res = std::sqrt(rational_residual_squared(a, b).get_d());
    return res / (rational_norm(target) + rational_norm(xq) * rational_norm(yq));
  };
  return assemble("gordon", cfg, points, outcomes, recheck);
}

GOCertificate tnc_check(const SkewOperatorSubspace& v, const SkewOperatorSubspace& nprime, const SamplerConfig& cfg)
{
  const Eigen::Index n = v.ambient_dim();
  if (nprime.ambient_dim() != n) { throw InputError("tnc_check: ambient dimensions differ"); }
  for (const auto& x : nprime.basis()) {
    for (const auto& z : v.basis()) {
      const Matrix c = commutator(x, z);
      if (!v.contains(c, 1e-8) && c.norm() > 1e-12 * x.norm() * z.norm()) {
        throw InputError("tnc_check: N' is not contained in the normalizer of V");
      }
    }
  }
  const std::vector<Matrix>& nb = nprime.basis();
  const std::vector<Matrix>& vb = v.basis();
  const auto k = static_cast<Eigen::Index>(vb.size());

  // Points: x holds the coefficients of Z in v.basis(), y the vector Y.
  std::vector<SamplePoint> points;
  auto unit_coeffs = [&](Vector u) {
    const double nz = v.element(u).norm();
    return Vector(nz == 0.0 ? u : Vector(u / nz));
  };
  if (cfg.sweep && k > 0) {
    const auto zs = sweep_vectors(Matrix::Identity(k, k));
    const auto ys = sweep_vectors(Matrix::Identity(n, n));
    for (const auto& z : zs) {
      for (const auto& y : ys) { points.push_back({unit_coeffs(z), y}); }
    }
  }
  for (std::size_t i = 0; i < cfg.samples && k > 0; ++i) {
    auto rng = sample_rng(cfg.seed, i);
    const Vector u = random_unit(rng, k);
    const Vector y = random_unit(rng, n);
    points.push_back({unit_coeffs(u), y});
  }

  const double nscale = max_norm(nb);
  std::vector<SampleOutcome> outcomes;
  for (const auto& p : points) {
    const Matrix z = v.element(p.x);
    const Vector target = z * p.y;
    const double norm = target.norm() + z.norm() * p.y.norm();
    const auto r = static_cast<Eigen::Index>(nb.size());
    Matrix kernel;
    if (r == 0) {
      kernel = Matrix(0, 0);
    } else {
      Matrix cmat(so_dim(n), r);
      for (Eigen::Index j = 0; j < r; ++j) { cmat.col(j) = so_coords(commutator(nb[static_cast<std::size_t>(j)], z)); }
      kernel = nullspace(cmat, cfg.tol.tau_rank, 1e-12 * nscale * z.norm());
    }
    std::vector<Matrix> allowed;
    for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
      Matrix m = Matrix::Zero(n, n);
      for (Eigen::Index q = 0; q < r; ++q) { m += kernel(q, j) * nb[static_cast<std::size_t>(q)]; }
      allowed.push_back(m);
    }
    Matrix a(n, static_cast<Eigen::Index>(allowed.size()));
    for (std::size_t j = 0; j < allowed.size(); ++j) { a.col(static_cast<Eigen::Index>(j)) = allowed[j] * p.y; }
    const LeastSquaresResult ls = least_squares(a, target, cfg.tol.tau_rank, 1e-12 * nscale * norm);
    Matrix x = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < allowed.size(); ++j) { x += ls.x(static_cast<Eigen::Index>(j)) * allowed[j]; }
    outcomes.push_back({norm == 0.0 ? 0.0 : ls.residual / norm, ls.condition, x});
  }

  auto recheck = [&](std::size_t i) -> std::optional<double> {
    if (!v.exact_basis() || !nprime.exact_basis()) { return std::nullopt; }
    const auto& ve = *v.exact_basis();
    const auto& ne = *nprime.exact_basis();
    const auto nu = static_cast<std::size_t>(n);
    RationalMatrix z(nu, nu);
    for (std::size_t q = 0; q < ve.size(); ++q) { z += ve[q] * to_rational(points[i].x(static_cast<Eigen::Index>(q))); }
    const RationalMatrix y = RationalMatrix::from_double(points[i].y);
    const RationalMatrix target = z * y;
    RationalMatrix allowed_coeffs;
    if (ne.empty()) {
      allowed_coeffs = RationalMatrix(0, 0);
    } else {
      RationalMatrix cmat(nu * (nu - 1) / 2, ne.size());
      for (std::size_t j = 0; j < ne.size(); ++j) { cmat.set_block(0, j, so_coords_exact(commutator(ne[j], z))); }
      allowed_coeffs = rational_nullspace(cmat);
    }
    RationalMatrix a(nu, allowed_coeffs.cols());
    for (std::size_t j = 0; j < allowed_coeffs.cols(); ++j) {
      RationalMatrix m(nu, nu);
      for (std::size_t q = 0; q < ne.size(); ++q) {
        if (sgn(allowed_coeffs(q, j)) != 0) { m += ne[q] * allowed_coeffs(q, j); }
      }
      a.set_block(0, j, m * y);
    }
    const double res = std::sqrt(rational_residual_squared(a, target).get_d());
    const Matrix zd = z.to_double();
    return res / (rational_norm(target) + zd.norm() * points[i].y.norm());
  };
  return assemble("tnc", cfg, points, outcomes, recheck);
}

GOCertificate centralizer_type_check(const SkewOperatorSubspace& v, const SamplerConfig& cfg)
{
  const SkewOperatorSubspace z = v.exact_basis() ? centralizer_in_so_exact(v) : centralizer_in_so(v, cfg.tol.tau_rank);
  GOCertificate cert = tnc_check(v, z, cfg);
  cert.check = "centralizer_type";
  return cert;
}

MetricParameter MetricParameter::identity(Eigen::Index m)
{
  return from_exact(RationalMatrix::identity(static_cast<std::size_t>(m)));
}

MetricParameter MetricParameter::from_double(const Matrix& q)
{
  if (q.rows() != q.cols()) { throw InputError("MetricParameter: q must be square"); }
  require_finite(q, "MetricParameter");
  if (max_abs(q - q.transpose()) > 1e-12 * std::max(1.0, max_abs(q))) { throw InputError("MetricParameter: q is not symmetric"); }
  if (q.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(q, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues()(0) > 0.0)) { throw InputError("MetricParameter: q is not positive definite"); }
  }
  MetricParameter p;
  p.q = q;
  return p;
}

MetricParameter MetricParameter::from_exact(const RationalMatrix& q)
{
  if (q.rows() != q.cols()) { throw InputError("MetricParameter: q must be square"); }
  if (!(q == q.transpose())) { throw InputError("MetricParameter: q is not symmetric"); }
  for (std::size_t k = 1; k <= q.rows(); ++k) {
    if (sgn(rational_determinant(q.block(0, 0, k, k))) <= 0) { throw InputError("MetricParameter: q is not positive definite"); }
  }
  MetricParameter p;
  p.q = q.to_double();
  p.exact = q;
  return p;
}

MetricLieAlgebra build_nilalgebra_from_subspace(const SkewOperatorSubspace& v, const MetricParameter& q)
{
  const auto k = static_cast<std::size_t>(v.dim());
  const auto n = static_cast<std::size_t>(v.ambient_dim());
  if (static_cast<std::size_t>(q.dim()) != k) { throw InputError("build_nilalgebra_from_subspace: q has wrong size"); }
  const std::size_t d = k + n;
  if (v.exact_basis() && q.exact) {
    const auto qinv = rational_solve(*q.exact, RationalMatrix::identity(k));
    std::vector<Rational> c(d * d * d);
    RationalMatrix gram(d, d);
    gram.set_block(0, 0, *q.exact);
    for (std::size_t i = 0; i < n; ++i) { gram(k + i, k + i) = 1; }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        RationalMatrix w(k, 1);
        for (std::size_t l = 0; l < k; ++l) { w(l, 0) = (*v.exact_basis())[l](b, a); }
        const RationalMatrix coef = (*qinv) * w;
        for (std::size_t l = 0; l < k; ++l) {
          c[((k + a) * d + (k + b)) * d + l] = coef(l, 0);
          c[((k + b) * d + (k + a)) * d + l] = -coef(l, 0);
        }
      }
    }
    return MetricLieAlgebra::from_exact(d, std::move(c), std::move(gram));
  }
  const auto ki = static_cast<Eigen::Index>(k);
  const Matrix qinv = q.q.ldlt().solve(Matrix::Identity(ki, ki));
  std::vector<double> c(d * d * d, 0.0);
  Matrix gram = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  gram.topLeftCorner(ki, ki) = q.q;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector w(ki);
      for (std::size_t l = 0; l < k; ++l) {
        w(static_cast<Eigen::Index>(l)) = v.basis()[l](static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
      }
      const Vector coef = qinv * w;
      for (std::size_t l = 0; l < k; ++l) {
        c[((k + a) * d + (k + b)) * d + l] = coef(static_cast<Eigen::Index>(l));
        c[((k + b) * d + (k + a)) * d + l] = -coef(static_cast<Eigen::Index>(l));
      }
    }
  }
  return MetricLieAlgebra(d, std::move(c), gram);
}

bool naturally_reductive_flag(const SkewOperatorSubspace& v, double tau_rank) { return is_subalgebra(v, tau_rank); }

SkewOperatorSubspace semisimple_projection(const SkewOperatorSubspace& v, double tau_rank)
{
  const Eigen::Index n = v.ambient_dim();
  const SkewOperatorSubspace a = generated_subalgebra(v, tau_rank);
  const CompactSplit cs = compact_split(a, tau_rank);
  const Matrix cc = cs.center_part.coordinates();
  const Matrix sc = cs.derived_part.coordinates();
  if (sc.cols() == 0) { return SkewOperatorSubspace(n, {}); }
  Matrix both(so_dim(n), cc.cols() + sc.cols());
  both << cc, sc;
  std::vector<Matrix> parts;
  for (const auto& x : v.basis()) {
    const LeastSquaresResult ls = least_squares(both, so_coords(x), tau_rank);
    const Vector s = sc * ls.x.tail(sc.cols());
    if (s.norm() > 1e-10 * so_coords(x).norm()) { parts.push_back(so_matrix(s, n)); }
  }
  return SkewOperatorSubspace(n, parts, tau_rank);
}

SkewOperatorSubspace centralizer_center(const SkewOperatorSubspace& v, double tau_rank)
{
  return compact_split(centralizer_in_so(v, tau_rank), tau_rank).center_part;
}

SkewOperatorSubspace center_shift(const SkewOperatorSubspace& v, const std::vector<Matrix>& psi, double tau_rank)
{
  if (psi.size() != v.basis().size()) { throw InputError("center_shift: psi needs one image per basis element"); }
  const CompactSplit cs = compact_split(generated_subalgebra(v, tau_rank), tau_rank);
  if (!cs.derived_part.contains(v, 1e-8)) { throw PreconditionError("center_shift: V is not inside the derived part of the algebra it generates"); }
  const SkewOperatorSubspace cz = centralizer_center(v, tau_rank);
  std::vector<Matrix> shifted;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (psi[i].rows() != v.ambient_dim() || psi[i].cols() != v.ambient_dim()) { throw InputError("center_shift: image has wrong shape"); }
    if (!cz.contains(psi[i], 1e-8)) { throw InputError("center_shift: psi image is outside the center of the centralizer"); }
    shifted.push_back(v.basis()[i] + psi[i]);
  }
  return SkewOperatorSubspace(v.ambient_dim(), shifted, tau_rank);
}

EigenspaceReport common_eigenspace_check(const Matrix& u, const Matrix& v, const std::optional<Vector>& z)
{
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows()) {
    throw InputError("common_eigenspace_check: shapes differ");
  }
  const double scale = std::max(1.0, u.norm() * v.norm());
  if (commutator(u, v).norm() > 1e-10 * scale) { throw PreconditionError("common_eigenspace_check: U and V do not commute"); }
  const Eigen::Index n = u.rows();
  const double opscale = std::max(1.0, u.norm() + v.norm());
  EigenspaceReport r;
  const Matrix diff = u - v;
  r.l_basis = max_abs(diff) == 0.0 ? Matrix(Matrix::Identity(n, n)) : nullspace(diff, kDefaultTauRank, 1e-12 * opscale);
  const double tol = 1e-8 * opscale;
  r.invariant = true;
  for (Eigen::Index i = 0; i < r.l_basis.cols(); ++i) {
    const Vector l = r.l_basis.col(i);
    r.invariant = r.invariant && (diff * (u * l)).norm() <= tol * opscale && (diff * (v * l)).norm() <= tol * opscale;
  }
  std::vector<Vector> tests;
  for (Eigen::Index i = 0; i < r.l_basis.cols(); ++i) { tests.emplace_back(r.l_basis.col(i)); }
  if (z) {
    if (z->size() != n) { throw InputError("common_eigenspace_check: Z has wrong dimension"); }
    if ((diff * *z).norm() > tol * std::max(1.0, z->norm())) { throw InputError("common_eigenspace_check: Z is not in L_{U,V}"); }
    tests.push_back(*z);
  }
  const Matrix u2 = u * u;
  const Matrix v2 = v * v;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (u2 + u2.transpose()));
  const Vector& ev = es.eigenvalues();
  const Matrix& q = es.eigenvectors();
  const double cluster = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<std::pair<Eigen::Index, Eigen::Index>> groups;  // [begin, end)
  for (Eigen::Index i = 0; i < n;) {
    Eigen::Index j = i + 1;
    while (j < n && ev(j) - ev(j - 1) <= cluster) { ++j; }
    groups.emplace_back(i, j);
    i = j;
  }
  r.components_ok = true;
  std::vector<bool> met(groups.size(), false);
  for (const auto& t : tests) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto [b, e] = groups[g];
      const Matrix qg = q.middleCols(b, e - b);
      const Vector comp = qg * (qg.transpose() * t);
      if (comp.norm() <= 1e-12 * std::max(1.0, t.norm())) { continue; }
      met[g] = true;
      const double lambda = ev.segment(b, e - b).mean();
      const double in_l = (diff * comp).norm();
      const double eig = (v2 * comp - lambda * comp).norm();
      r.max_residual = std::max({r.max_residual, in_l, eig});
      if (in_l > tol * t.norm() || eig > tol * opscale * t.norm()) { r.components_ok = false; }
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (met[g]) { r.eigenvalues.push_back(ev.segment(groups[g].first, groups[g].second - groups[g].first).mean()); }
  }
  return r;
}

bool commuting_triple_check(const Matrix& u, const Matrix& v, const Matrix& w)
{
  if (u.rows() != u.cols() || v.rows() != u.rows() || w.rows() != u.rows() || v.cols() != u.cols() || w.cols() != u.cols()) {
    throw InputError("commuting_triple_check: shapes differ");
  }
  if (commutator(u, v).norm() > 1e-10 * std::max(1.0, u.norm() * v.norm()) ||
      commutator(u, w).norm() > 1e-10 * std::max(1.0, u.norm() * w.norm())) {
    throw PreconditionError("commuting_triple_check: V or W does not commute with U");
  }
  const Matrix u2 = u * u;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (u2 + u2.transpose()), Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  const double sep = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size();) {
    Eigen::Index j = i + 1;
    while (j < ev.size() && ev(j) - ev(j - 1) <= sep) { ++j; }
    const Eigen::Index mult = j - i;
    const bool zero = std::abs(ev.segment(i, mult).mean()) <= sep;
    if ((zero && mult > 2) || (!zero && mult != 2)) {
      throw PreconditionError("commuting_triple_check: U has a repeated eigenvalue");
    }
    i = j;
  }
  return commutator(v, w).norm() <= 1e-9 * std::max(1.0, v.norm() * w.norm());
}

bool riehm_predict(int m, int n, std::optional<Isotypic> isotypic)
{
  if (m >= 1 && m <= 3) { return true; }
  if ((m == 5 || m == 6) && n == 8) { return true; }
  if (m == 7 && (n == 8 || n == 16 || n == 24)) {
    // The irreducible module of dimension 8 is trivially isotypic.
    if (n == 8 && !isotypic) { return true; }
    return isotypic.has_value() && *isotypic != Isotypic::neither;
  }
  return false;
}

}  // namespace nilgo
