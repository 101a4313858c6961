#include "cli.hpp"

#include "nilgo/error.hpp"
#include "nilgo/families.hpp"
#include "nilgo/geodesics.hpp"
#include "nilgo/io.hpp"
#include "nilgo/jmaps.hpp"
#include "nilgo/sampling.hpp"
#include "nilgo/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace nilgo::cli {

namespace {

struct RunConfig
{
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  double tol_feas = Tolerances{}.feas;
  double tol_refute = Tolerances{}.refute;
  std::string metric;
  std::string format = "json";
  bool trace = false;
};

std::uint64_t default_seed()
{
  if (const char* env = std::getenv("NILGO_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("NILGO_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

std::string read_text(const std::string& path, std::istream& in)
{
  if (path == "-") { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }
  std::ifstream f(path);
  if (!f) { throw InputError("cannot open " + path); }
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Json read_json(const std::string& path, std::istream& in)
{
  try {
    return Json::parse(read_text(path, in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) { out.push_back(item); }
  return out;
}

Rational read_rational(const std::string& s, const std::string& what)
{
  const auto r = parse_rational(s);
  if (!r) { throw InputError(what + ": cannot parse '" + s + "'"); }
  return *r;
}

/// Upper triangle, row by row: q11,q12,q22 for m = 2.
MetricParameter parse_metric(const std::string& text)
{
  const auto parts = split_list(text);
  std::size_t m = 0;
  while (m * (m + 1) / 2 < parts.size()) { ++m; }
  if (m * (m + 1) / 2 != parts.size()) { throw InputError("--metric: expected m(m+1)/2 entries"); }
  RationalMatrix q(m, m);
  std::size_t at = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      q(i, j) = q(j, i) = read_rational(parts[at++], "--metric");
    }
  }
  return MetricParameter::from_exact(q);
}

/// Replaces the gram block of the center; the center must be spanned by the
/// first or the last m basis vectors.
MetricLieAlgebra apply_metric(const MetricLieAlgebra& l, const MetricParameter& q)
{
  const TwoStepSplit s = split_two_step(l);
  const auto d = static_cast<Eigen::Index>(l.dim());
  const Eigen::Index m = s.m();
  if (q.dim() != m) { throw InputError("--metric: size does not match the center dimension"); }
  const Matrix& z = s.z.span;
  Eigen::Index offset = -1;
  if (m == d || max_abs(z.bottomRows(d - m)) == 0.0) {
    offset = 0;
  } else if (max_abs(z.topRows(d - m)) == 0.0) {
    offset = d - m;
  } else {
    throw InputError("--metric: the center is not a block of basis vectors");
  }
  Matrix cross = l.gram().block(offset, 0, m, d);
  cross.block(0, offset, m, m).setZero();
  if (max_abs(cross) != 0.0) { throw InputError("--metric: the center is not orthogonal to the other basis vectors"); }
  if (l.has_exact()) {
    RationalMatrix g = l.exact()->gram;
    const RationalMatrix qe = q.exact ? *q.exact : RationalMatrix::from_double(q.q);
    g.set_block(static_cast<std::size_t>(offset), static_cast<std::size_t>(offset), qe);
    return l.with_exact_gram(g);
  }
  Matrix g = l.gram();
  g.block(offset, offset, m, m) = q.q;
  return l.with_gram(g);
}

SamplerConfig sampler(const RunConfig& rc)
{
  SamplerConfig cfg;
  cfg.seed = rc.seed;
  cfg.samples = rc.samples;
  cfg.tol.feas = rc.tol_feas;
  cfg.tol.refute = rc.tol_refute;
  cfg.keep_trace = rc.trace;
  return cfg;
}

int exit_for(CertificateStatus s)
{
  switch (s) {
    case CertificateStatus::verified_sampled:
    case CertificateStatus::verified_exact: return kPass;
    case CertificateStatus::refuted: return kRefuted;
    case CertificateStatus::inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string normalize_kind(std::string k)
{
  for (auto& c : k) {
    if (c == '-') { c = '_'; }
  }
  if (k == "h_type") { return "h_type_clifford"; }
  return k;
}

bool wants_kv(const MetricLieAlgebra& l)
{
  const auto cls = nilpotency_class(l);
  if (!cls || *cls != 2) { return true; }
  return !split_two_step(l).derived_equals_center;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
  RunConfig rc;
  std::string file;
  std::string file_b;
  std::string method = "auto";
  std::string kind;
  FamilySpec spec;
  std::string t_text = "1";
  std::string ts_text;
  std::string nprime = "centralizer";
  std::string x0_text = "random";
  std::uint64_t x0_index = 0;
  double t_end = 1.0;
  double h = 1e-3;
  double dev_tol = 1e-6;
  std::string csv_path;

  CLI::App app{"Two-step nilpotent metric Lie algebras: GO checks, Pfaffian forms, invariants", "nilgo"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  try {
    rc.seed = default_seed();
  } catch (const InputError& e) {
    err << "nilgo: " << e.what() << "\n";
    return kInputError;
  }
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", rc.seed, "Sampling seed (default: $NILGO_SEED or 0)");
    sub->add_option("--samples", rc.samples, "Random samples after the sweep")->check(CLI::PositiveNumber);
    sub->add_option("--tol-feas", rc.tol_feas, "Relative feasibility tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-refute", rc.tol_refute, "Relative refutation threshold")->check(CLI::PositiveNumber);
    sub->add_option("--metric", rc.metric, "Metric on the center, upper triangle: q11,q12,q22");
    sub->add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* validate = app.add_subcommand("validate", "Check antisymmetry, Jacobi and the gram matrix");
  validate->add_option("file", file, "Algebra JSON or -")->required();

  auto* family = app.add_subcommand("family", "Emit a built-in family as algebra JSON");
  family->add_option("kind", kind, "heisenberg, quaternionic-heisenberg, h-type, n10, n10-second, thm2")->required();
  family->add_option("--k", spec.k, "Heisenberg rank");
  family->add_option("--m", spec.m, "Center dimension of h-type");
  family->add_option("--copies", spec.copies, "Module copies of h-type");
  family->add_option("--t", t_text, "Parameter of n10");
  family->add_option("--ts", ts_text, "Parameters t1,...,tk of thm2");
  family->add_option("--metric", rc.metric, "Metric on the center, upper triangle");

  auto* go = app.add_subcommand("go-check", "Sampled geodesic-orbit certificate");
  go->add_option("file", file, "Algebra JSON or -")->required();
  go->add_option("--method", method, "gordon, kv or auto")->check(CLI::IsMember({"auto", "gordon", "kv"}));
  go->add_flag("--trace", rc.trace, "Record every sample");
  common(go);

  auto* der = app.add_subcommand("derivations", "Basis of the skew-symmetric derivations");
  der->add_option("file", file, "Algebra JSON or -")->required();

  auto* pf = app.add_subcommand("pfaffian", "Pfaffian form of a two-step algebra with m = 2");
  pf->add_option("file", file, "Algebra JSON or -")->required();

  auto* inv = app.add_subcommand("invariant", "Pfaffian roots, distance invariant, verdict");
  inv->add_option("file", file, "Algebra or polynomial JSON")->required();
  inv->add_option("other", file_b, "Second algebra or polynomial JSON");

  auto* tnc = app.add_subcommand("tnc", "Transitive normalizer condition for a subspace of so(n)");
  tnc->add_option("file", file, "Subspace JSON or -")->required();
  tnc->add_option("--nprime", nprime, "normalizer, centralizer or self")
      ->check(CLI::IsMember({"normalizer", "centralizer", "self"}));
  common(tnc);

  auto* geo = app.add_subcommand("geodesic-compare", "Geodesic versus orbit of the solved isometry");
  geo->add_option("file", file, "Algebra JSON or -")->required();
  geo->add_option("--x0", x0_text, "random, basis:i, or comma-separated coordinates");
  geo->add_option("--index", x0_index, "Sample index for --x0 random");
  geo->add_option("--T", t_end, "End time");
  geo->add_option("--step", h, "Step size")->check(CLI::PositiveNumber);
  geo->add_option("--tol", dev_tol, "Pass threshold on the sup deviation");
  geo->add_option("--csv", csv_path, "Also write t,deviation rows to this file");
  common(geo);

  std::vector<std::string> argv_store{"nilgo"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) { argv.push_back(a.data()); }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (validate->parsed()) {
      const MetricLieAlgebra l = parse_algebra(read_text(file, in));
      const ValidationReport r = nilgo::validate(l);
      emit(out, Json{{"valid", r.passed()},
                     {"dim", l.dim()},
                     {"exact", r.exact},
                     {"antisymmetric", r.antisymmetric},
                     {"jacobi", r.jacobi},
                     {"gram_positive_definite", r.gram_positive_definite},
                     {"jacobi_residual", r.jacobi_residual},
                     {"tool_version", kVersion}});
      return r.passed() ? kPass : kRefuted;
    }
    if (family->parsed()) {
      spec.kind = normalize_kind(kind);
      spec.t = read_rational(t_text, "--t");
      for (const auto& s : split_list(ts_text)) { spec.ts.push_back(read_rational(s, "--ts")); }
      if (!rc.metric.empty()) { spec.metric = parse_metric(rc.metric); }
      emit(out, algebra_to_json(build_family(spec)));
      return kPass;
    }
    if (go->parsed()) {
      MetricLieAlgebra l = parse_algebra(read_text(file, in));
      if (!nilgo::validate(l).passed()) { throw InputError(file + ": not a metric Lie algebra"); }
      if (!rc.metric.empty()) { l = apply_metric(l, parse_metric(rc.metric)); }
      const SamplerConfig cfg = sampler(rc);
      const bool kv = method == "kv" || (method == "auto" && wants_kv(l));
      const GOCertificate c = kv ? kv_go_check(nilmanifold_decomposition(l), cfg) : gordon_go_check(l, cfg);
      emit(out, certificate_to_json(c));
      return exit_for(c.status);
    }
    if (der->parsed()) {
      const MetricLieAlgebra l = parse_algebra(read_text(file, in));
      const DerivationAlgebra d = l.has_exact() ? skew_derivations_exact(l) : skew_derivations(l);
      Json basis = Json::array();
      for (const auto& m : d.basis) { basis.push_back(matrix_to_json(m)); }
      emit(out, Json{{"dim", d.dim()}, {"exact", d.exact_basis.has_value()}, {"basis", basis}, {"tool_version", kVersion}});
      return kPass;
    }
    if (pf->parsed()) {
      const MetricLieAlgebra l = parse_algebra(read_text(file, in));
      Json j = polynomial_to_json(pfaffian_form(split_two_step(l)));
      j["tool_version"] = kVersion;
      emit(out, j);
      return kPass;
    }
    if (inv->parsed()) {
      auto form_of = [&](const std::string& path) {
        const Json j = read_json(path, in);
        if (j.is_object() && j.contains("coeffs")) { return polynomial_from_json(j); }
        return pfaffian_form(split_two_step(algebra_from_json(j)));
      };
      const HomogeneousPolynomial2 pa = form_of(file);
      const ProjectiveRootSet ra = pfaffian_roots(pa);
      Json result;
      if (file_b.empty()) {
        result["roots"] = roots_to_json(ra);
        result["distances"] = ra.real_root_count == 0 ? Json(moebius_invariant(ra)) : Json(nullptr);
        result["verdict"] = nullptr;
        result["tool_version"] = kVersion;
        emit(out, result);
        return kPass;
      }
      const HomogeneousPolynomial2 pb = form_of(file_b);
      const ProjectiveRootSet rb = pfaffian_roots(pb);
      const Verdict v = distinguish(pa, pb);
      result["roots"] = Json{{"a", roots_to_json(ra)}, {"b", roots_to_json(rb)}};
      result["distances"] = Json{{"a", moebius_invariant(ra)}, {"b", moebius_invariant(rb)}};
      result["verdict"] = to_string(v);
      result["tool_version"] = kVersion;
      emit(out, result);
      return v == Verdict::inconclusive ? kInconclusive : kPass;
    }
    if (tnc->parsed()) {
      const SkewOperatorSubspace v = subspace_from_json(read_json(file, in));
      SkewOperatorSubspace np = v;
      if (nprime == "normalizer") {
        np = v.exact_basis() ? normalizer_in_so_exact(v) : normalizer_in_so(v);
      } else if (nprime == "centralizer") {
        np = v.exact_basis() ? centralizer_in_so_exact(v) : centralizer_in_so(v);
      }
      GOCertificate c = tnc_check(v, np, sampler(rc));
      Json j = certificate_to_json(c);
      j["nprime"] = nprime;
      emit(out, j);
      return exit_for(c.status);
    }
    if (geo->parsed()) {
      MetricLieAlgebra l = parse_algebra(read_text(file, in));
      if (!rc.metric.empty()) { l = apply_metric(l, parse_metric(rc.metric)); }
      const auto d = static_cast<Eigen::Index>(l.dim());
      Vector x0;
      if (x0_text == "random") {
        x0 = seeded_unit(rc.seed, x0_index, d);
      } else if (x0_text.rfind("basis:", 0) == 0) {
        const long i = std::stol(x0_text.substr(6));
        if (i < 0 || i >= d) { throw InputError("--x0: basis index out of range"); }
        x0 = Vector::Unit(d, i);
      } else {
        const auto parts = split_list(x0_text);
        if (static_cast<Eigen::Index>(parts.size()) != d) { throw InputError("--x0: wrong number of coordinates"); }
        x0.resize(d);
        for (Eigen::Index i = 0; i < d; ++i) { x0(i) = read_rational(parts[static_cast<std::size_t>(i)], "--x0").get_d(); }
      }
      const double nrm = std::sqrt(l.inner(x0, x0));
      if (!(nrm > 0.0)) { throw InputError("--x0: zero vector"); }
      x0 /= nrm;
      GeodesicConfig gc;
      gc.t_end = t_end;
      gc.h = h;
      const GeodesicComparison cmp = compare_geodesic_orbit(l, x0, gc);
      auto write_csv = [&](std::ostream& os) {
        os << "t,deviation\n";
        for (std::size_t k = 0; k < cmp.times.size(); ++k) { os << Json(cmp.times[k]).dump() << "," << Json(cmp.deviations[k]).dump() << "\n"; }
      };
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) { throw InputError("cannot write " + csv_path); }
        write_csv(f);
      }
      if (rc.format == "csv") {
        write_csv(out);
      } else {
        emit(out, Json{{"sup_deviation", cmp.sup_deviation},
                       {"kv_residual", cmp.kv_residual},
                       {"step", cmp.step},
                       {"T", t_end},
                       {"X0", vector_to_json(x0)},
                       {"Z", vector_to_json(cmp.z_used)},
                       {"seed", rc.seed},
                       {"tool_version", kVersion}});
      }
      return cmp.sup_deviation <= dev_tol ? kPass : kRefuted;
    }
  } catch (const InputError& e) {
    err << "nilgo: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "nilgo: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace nilgo::cli
