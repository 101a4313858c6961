#include "nilgo/invariants.hpp"

#include "nilgo/algebra.hpp"
#include "nilgo/error.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>

namespace nilgo {

namespace {

using Poly = std::vector<Rational>;  // ascending powers

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

// Quotient and remainder of a by b (b nonzero).
std::pair<Poly, Poly> divide(Poly a, const Poly& b)
{
  trim(a);
  if (a.size() < b.size()) { return {Poly{}, a}; }
  Poly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    if (sgn(c) == 0) { continue; }
    for (std::size_t i = 0; i < b.size(); ++i) { a[k + i] -= c * b[i]; }
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly monic(Poly p)
{
  trim(p);
  const Rational lead = p.back();
  for (auto& c : p) { c /= lead; }
  return p;
}

Poly gcd(Poly a, Poly b)
{
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly subtract(const Poly& a, const Poly& b)
{
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) { out[i] += a[i]; }
  for (std::size_t i = 0; i < b.size(); ++i) { out[i] -= b[i]; }
  trim(out);
  return out;
}

// Square-free factors a_1, a_2, ... with f = c * prod a_i^i.
std::vector<Poly> yun(const Poly& f)
{
  std::vector<Poly> out;
  const Poly fp = derivative(f);
  if (fp.empty()) { return out; }
  const Poly a0 = gcd(f, fp);
  Poly b = divide(f, a0).first;
  Poly c = divide(fp, a0).first;
  Poly d = subtract(c, derivative(b));
  while (b.size() > 1) {
    const Poly a = gcd(b, d);
    out.push_back(a);
    b = divide(b, a).first;
    c = divide(d, a).first;
    d = subtract(c, derivative(b));
  }
  return out;
}

std::vector<std::complex<double>> polished_roots(const std::vector<double>& ascending)
{
  std::vector<std::complex<double>> out;
  if (ascending.size() < 2) { return out; }
  Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(ascending.data(), static_cast<Eigen::Index>(ascending.size()));
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
    std::complex<double> z = solver.roots()(i);
    for (int it = 0; it < 3; ++it) {
      std::complex<double> p = 0.0;
      std::complex<double> dp = 0.0;
      for (std::size_t k = ascending.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + ascending[k];
      }
      if (std::abs(dp) == 0.0) { break; }
      const std::complex<double> next = z - p / dp;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) { break; }
      z = next;
    }
    out.push_back(z);
  }
  return out;
}

bool near(std::complex<double> a, std::complex<double> b, double tol)
{
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

ProjectiveRootSet pfaffian_roots(const HomogeneousPolynomial2& p)
{
  if (p.is_zero()) { throw InputError("pfaffian_roots: zero polynomial"); }
  ProjectiveRootSet r;
  r.degree = p.degree;
  if (p.exact_coeffs) {
    Poly f = *p.exact_coeffs;  // coeffs[i] multiplies w^i in p(1, w)
    trim(f);
    r.at_infinity = p.degree - static_cast<int>(f.size() - 1);
    r.leading = f.back().get_d();
    r.exact_multiplicities = true;
    const std::vector<Poly> factors = yun(f);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Poly& a = factors[i];
      if (a.size() < 2) { continue; }
      const int mult = static_cast<int>(i) + 1;
      std::vector<double> ad;
      for (const auto& c : a) { ad.push_back(c.get_d()); }
      auto roots = polished_roots(ad);
      // Sturm count decides which roots are real.
      const int real = count_real_roots(a);
      std::sort(roots.begin(), roots.end(), [](auto u, auto v) { return std::abs(u.imag()) < std::abs(v.imag()); });
      for (std::size_t k = 0; k < roots.size(); ++k) {
        if (static_cast<int>(k) < real) { roots[k] = {roots[k].real(), 0.0}; }
        r.roots.push_back({roots[k], mult});
      }
      r.real_root_count += real * mult;
    }
  } else {
    std::vector<double> f = p.coeffs;
    double scale = 0.0;
    for (double c : f) { scale = std::max(scale, std::abs(c)); }
    while (!f.empty() && std::abs(f.back()) <= 1e-12 * scale) { f.pop_back(); }
    r.at_infinity = p.degree - static_cast<int>(f.size() - 1);
    r.leading = f.back();
    for (const auto& z : polished_roots(f)) {
      const std::complex<double> w = std::abs(z.imag()) <= 1e-10 * std::max(1.0, std::abs(z)) ? std::complex<double>(z.real(), 0.0) : z;
      auto hit = std::find_if(r.roots.begin(), r.roots.end(), [&](const auto& e) { return near(e.w, w, 1e-10); });
      if (hit != r.roots.end()) {
        ++hit->multiplicity;
      } else {
        r.roots.push_back({w, 1});
      }
      if (w.imag() == 0.0) { ++r.real_root_count; }
    }
  }
  r.real_root_count += r.at_infinity;
  return r;
}

HomogeneousPolynomial2 polynomial_from_roots(const ProjectiveRootSet& r)
{
  // prod (w - root) in ascending powers of w.
  std::vector<std::complex<double>> acc{1.0};
  for (const auto& root : r.roots) {
    for (int k = 0; k < root.multiplicity; ++k) {
      std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        next[i] -= root.w * acc[i];
        next[i + 1] += acc[i];
      }
      acc = std::move(next);
    }
  }
  std::vector<double> coeffs(static_cast<std::size_t>(r.degree) + 1, 0.0);
  for (std::size_t i = 0; i < acc.size(); ++i) { coeffs[i] = r.leading * acc[i].real(); }
  return HomogeneousPolynomial2::from_double(std::move(coeffs));
}

double hyperbolic_distance(std::complex<double> z, std::complex<double> w)
{
  return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

std::vector<double> moebius_invariant(const ProjectiveRootSet& r)
{
  if (r.real_root_count > 0) { throw UnsupportedError("moebius_invariant: the form has a real root"); }
  std::vector<std::complex<double>> upper;
  for (const auto& root : r.roots) {
    if (root.w.imag() > 0.0) {
      for (int k = 0; k < root.multiplicity; ++k) { upper.push_back(root.w); }
    }
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    for (std::size_t j = i + 1; j < upper.size(); ++j) { out.push_back(hyperbolic_distance(upper[i], upper[j])); }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const char* to_string(Verdict v)
{
  switch (v) {
    case Verdict::distinct: return "distinct";
    case Verdict::equivalent_invariants: return "equivalent_invariants";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict distinguish(const HomogeneousPolynomial2& a, const HomogeneousPolynomial2& b)
{
  const ProjectiveRootSet ra = pfaffian_roots(a);
  const ProjectiveRootSet rb = pfaffian_roots(b);
  if (ra.real_root_count > 0 || rb.real_root_count > 0) { throw UnsupportedError("distinguish: singular form"); }
  if (ra.degree != rb.degree) { return Verdict::distinct; }
  const auto da = moebius_invariant(ra);
  const auto db = moebius_invariant(rb);
  double diff = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) { diff = std::max(diff, std::abs(da[i] - db[i]) / std::max(1.0, std::abs(da[i]))); }
  if (diff > 1e-8) { return Verdict::distinct; }
  // Clustered float roots can hide a genuine multiplicity difference.
  if (!ra.exact_multiplicities || !rb.exact_multiplicities) {
    auto shape = [](const ProjectiveRootSet& r) {
      std::vector<int> m;
      for (const auto& root : r.roots) { m.push_back(root.multiplicity); }
      std::sort(m.begin(), m.end());
      return m;
    };
    if (shape(ra) != shape(rb)) { return Verdict::inconclusive; }
  }
  return Verdict::equivalent_invariants;
}

}  // namespace nilgo
