#include "nilgo/io.hpp"

#include "nilgo/error.hpp"
#include "nilgo/version.hpp"

#include <cmath>

namespace nilgo {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
  throw InputError("schema: " + field + ": " + what);
}

Rational read_value(const Json& v, const std::string& field)
{
  if (v.is_number_integer()) { return Rational(v.get<long>()); }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) { fail(field, "non-finite number"); }
    return to_rational(d);
  }
  if (v.is_string()) {
    const auto r = parse_rational(v.get<std::string>());
    if (!r) { fail(field, "cannot parse '" + v.get<std::string>() + "' as a rational"); }
    return *r;
  }
  fail(field, "expected a number or a numeric string");
}

std::size_t read_index(const Json& v, const std::string& field, std::size_t bound)
{
  if (!v.is_number_integer() || v.get<long>() < 0 || static_cast<std::size_t>(v.get<long>()) >= bound) {
    fail(field, "expected an index in [0, " + std::to_string(bound) + ")");
  }
  return static_cast<std::size_t>(v.get<long>());
}

RationalMatrix read_matrix(const Json& v, std::size_t rows, std::size_t cols, const std::string& field)
{
  if (!v.is_array() || v.size() != rows) { fail(field, "expected " + std::to_string(rows) + " rows"); }
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != cols) { fail(rf, "expected " + std::to_string(cols) + " entries"); }
    for (std::size_t j = 0; j < cols; ++j) { m(i, j) = read_value(v[i][j], rf + "[" + std::to_string(j) + "]"); }
  }
  return m;
}

Json exact_value(const Rational& r) { return to_string(r); }

}  // namespace

MetricLieAlgebra algebra_from_json(const Json& j)
{
  if (!j.is_object()) { fail("<root>", "expected an object"); }
  if (!j.contains("dim")) { fail("dim", "missing"); }
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 0) { fail("dim", "expected a non-negative integer"); }
  const auto d = static_cast<std::size_t>(j["dim"].get<long>());
  std::vector<Rational> c(d * d * d);
  if (j.contains("brackets")) {
    const Json& br = j["brackets"];
    if (!br.is_array()) { fail("brackets", "expected an array"); }
    for (std::size_t e = 0; e < br.size(); ++e) {
      const std::string f = "brackets[" + std::to_string(e) + "]";
      const Json& item = br[e];
      if (!item.is_object() || !item.contains("i") || !item.contains("j") || !item.contains("coeffs")) {
        fail(f, "expected {\"i\", \"j\", \"coeffs\"}");
      }
      const std::size_t a = read_index(item["i"], f + ".i", d);
      const std::size_t b = read_index(item["j"], f + ".j", d);
      if (a >= b) { fail(f, "brackets must have i < j"); }
      if (!item["coeffs"].is_object()) { fail(f + ".coeffs", "expected an object keyed by basis index"); }
      for (const auto& [key, value] : item["coeffs"].items()) {
        std::size_t k = 0;
        try {
          std::size_t used = 0;
          k = static_cast<std::size_t>(std::stoul(key, &used));
          if (used != key.size()) { throw std::invalid_argument(key); }
        } catch (const std::exception&) {
          fail(f + ".coeffs", "key '" + key + "' is not an index");
        }
        if (k >= d) { fail(f + ".coeffs", "index " + key + " out of range"); }
        const Rational v = read_value(value, f + ".coeffs." + key);
        c[(a * d + b) * d + k] = v;
        c[(b * d + a) * d + k] = -v;
      }
    }
  }
  RationalMatrix gram = RationalMatrix::identity(d);
  if (j.contains("gram")) { gram = read_matrix(j["gram"], d, d, "gram"); }
  return MetricLieAlgebra::from_exact(d, std::move(c), std::move(gram));
}

MetricLieAlgebra parse_algebra(std::string_view text)
{
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("json: ") + e.what());
  }
  return algebra_from_json(j);
}

Json algebra_to_json(const MetricLieAlgebra& l)
{
  const std::size_t d = l.dim();
  Json out;
  out["dim"] = d;
  Json brackets = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      Json coeffs = Json::object();
      for (std::size_t k = 0; k < d; ++k) {
        if (l.has_exact()) {
          const Rational& v = l.exact()->structure[(i * d + j) * d + k];
          if (sgn(v) != 0) { coeffs[std::to_string(k)] = exact_value(v); }
        } else if (l.c(i, j, k) != 0.0) {
          coeffs[std::to_string(k)] = l.c(i, j, k);
        }
      }
      if (!coeffs.empty()) { brackets.push_back(Json{{"i", i}, {"j", j}, {"coeffs", coeffs}}); }
    }
  }
  out["brackets"] = brackets;
  Json gram = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d; ++j) {
      if (l.has_exact()) {
        row.push_back(exact_value(l.exact()->gram(i, j)));
      } else {
        row.push_back(l.gram()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
    }
    gram.push_back(row);
  }
  out["gram"] = gram;
  out["tool_version"] = kVersion;
  return out;
}

SkewOperatorSubspace subspace_from_json(const Json& j)
{
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long>() < 0) {
    fail("n", "expected a non-negative integer");
  }
  const auto n = static_cast<std::size_t>(j["n"].get<long>());
  if (!j.contains("operators") || !j["operators"].is_array()) { fail("operators", "expected an array"); }
  std::vector<RationalMatrix> ops;
  for (std::size_t e = 0; e < j["operators"].size(); ++e) {
    const std::string f = "operators[" + std::to_string(e) + "]";
    RationalMatrix m = read_matrix(j["operators"][e], n, n, f);
    RationalMatrix neg = m.transpose();
    neg *= Rational(-1);
    if (!(m == neg)) { fail(f, "operator is not skew-symmetric"); }
    ops.push_back(std::move(m));
  }
  return SkewOperatorSubspace::from_exact(n, ops);
}

Json subspace_to_json(const SkewOperatorSubspace& v)
{
  Json out;
  out["n"] = v.ambient_dim();
  Json ops = Json::array();
  if (v.exact_basis()) {
    for (const auto& m : *v.exact_basis()) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) { row.push_back(exact_value(m(i, k))); }
        rows.push_back(row);
      }
      ops.push_back(rows);
    }
  } else {
    for (const auto& m : v.basis()) { ops.push_back(matrix_to_json(m)); }
  }
  out["operators"] = ops;
  return out;
}

Json matrix_to_json(const Matrix& m)
{
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) { row.push_back(m(i, k)); }
    rows.push_back(row);
  }
  return rows;
}

Json vector_to_json(const Vector& v)
{
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) { out.push_back(v(i)); }
  return out;
}

Json certificate_to_json(const GOCertificate& c)
{
  Json out;
  out["check"] = c.check;
  out["status"] = to_string(c.status);
  out["samples"] = c.samples;
  out["max_residual"] = c.max_residual;
  out["tolerances"] = Json{{"feas", c.tolerances.feas},
                           {"refute", c.tolerances.refute},
                           {"condition_limit", c.tolerances.condition_limit},
                           {"tau_rank", c.tolerances.tau_rank}};
  if (c.witness) {
    const Witness& w = *c.witness;
    out["witness"] = Json{{"sample", w.sample},
                          {"X", vector_to_json(w.x)},
                          {"Y", vector_to_json(w.y)},
                          {"residual", w.residual},
                          {"exact_confirmed", w.exact_confirmed},
                          {"exact_residual", w.exact_residual}};
  } else {
    out["witness"] = nullptr;
  }
  out["seed"] = c.seed;
  out["tool_version"] = kVersion;
  if (!c.trace.empty()) {
    Json trace = Json::array();
    for (const auto& s : c.trace) {
      trace.push_back(Json{{"sample", s.sample}, {"X", vector_to_json(s.x)}, {"Y", vector_to_json(s.y)}, {"residual", s.residual}});
    }
    out["trace"] = trace;
  }
  return out;
}

Json polynomial_to_json(const HomogeneousPolynomial2& p)
{
  Json out;
  out["degree"] = p.degree;
  Json coeffs = Json::array();
  if (p.exact_coeffs) {
    for (const auto& c : *p.exact_coeffs) { coeffs.push_back(exact_value(c)); }
  } else {
    for (double c : p.coeffs) { coeffs.push_back(c); }
  }
  out["coeffs"] = coeffs;
  out["exact"] = p.is_exact();
  return out;
}

HomogeneousPolynomial2 polynomial_from_json(const Json& j)
{
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
    fail("coeffs", "expected a non-empty array");
  }
  std::vector<Rational> c;
  bool exact = true;
  for (std::size_t i = 0; i < j["coeffs"].size(); ++i) {
    const Json& v = j["coeffs"][i];
    exact = exact && !v.is_number_float();
    c.push_back(read_value(v, "coeffs[" + std::to_string(i) + "]"));
  }
  if (j.contains("degree") && (!j["degree"].is_number_integer() || j["degree"].get<long>() + 1 != static_cast<long>(c.size()))) {
    fail("degree", "does not match the number of coefficients");
  }
  if (exact) { return HomogeneousPolynomial2::from_exact(std::move(c)); }
  std::vector<double> d;
  for (const auto& v : c) { d.push_back(v.get_d()); }
  return HomogeneousPolynomial2::from_double(std::move(d));
}

Json roots_to_json(const ProjectiveRootSet& r)
{
  Json roots = Json::array();
  for (const auto& root : r.roots) {
    roots.push_back(Json{{"re", root.w.real()}, {"im", root.w.imag()}, {"multiplicity", root.multiplicity}});
  }
  if (r.at_infinity > 0) { roots.push_back(Json{{"infinity", true}, {"multiplicity", r.at_infinity}}); }
  return roots;
}

}  // namespace nilgo
