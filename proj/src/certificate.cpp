#include "flatsig/certificate.hpp"

#include <cmath>
#include <cstdio>

#include "flatsig/errors.hpp"

namespace flatsig {

using nlohmann::json;

namespace {

std::string decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_decimal(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw Error(ErrorCode::InvalidInput, "bad decimal '" + s + "'");
  return v;
}

Rational parse_exact(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return parse_rational(j.get<std::string>());
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(format_rational(r));
  return a;
}

}  // namespace

json to_json(const SL2Element& g) {
  json j;
  j["matrix"] = json::array({json::array({decimal(g.a()), decimal(g.b())}),
                             json::array({decimal(g.c()), decimal(g.d())})});
  if (auto q = g.rational_entries(); q && std::holds_alternative<RationalEntries>(g.tag())) {
    j["exact"] = {{"rational_entries", rationals({(*q)[0], (*q)[1], (*q)[2], (*q)[3]})}};
  } else if (auto t = g.rotation_t()) {
    j["exact"] = {{"rotation_by_pi", format_rational(*t)}};
  }
  return j;
}

SL2Element sl2_from_json(const json& j) {
  const auto& m = j.at("matrix");
  double a = parse_decimal(m.at(0).at(0)), b = parse_decimal(m.at(0).at(1));
  double c = parse_decimal(m.at(1).at(0)), d = parse_decimal(m.at(1).at(1));
  if (!j.contains("exact")) return SL2Element::from_doubles(a, b, c, d);
  const auto& ex = j.at("exact");
  SL2Element g;
  if (ex.contains("rational_entries")) {
    const auto& e = ex.at("rational_entries");
    g = SL2Element::from_rationals(parse_exact(e.at(0)), parse_exact(e.at(1)),
                                   parse_exact(e.at(2)), parse_exact(e.at(3)));
  } else if (ex.contains("rotation_by_pi")) {
    g = SL2Element::rotation(parse_exact(ex.at("rotation_by_pi")));
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown exact annotation");
  }
  double scale = 1 + std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
  if (g.distance(SL2Element::from_doubles(a, b, c, d)) > 1e-12 * scale)
    throw Error(ErrorCode::InvalidInput, "matrix disagrees with its exact annotation");
  return g;
}

json to_json(const UnitaryElement& g) {
  json j;
  j["shape"] = json::array({g.p(), g.q()});
  if (g.is_torus()) {
    j["torus"] = rationals(g.angles());
  } else if (g.is_sl2_blocks()) {
    json a = json::array();
    for (const auto& b : g.blocks()) a.push_back(to_json(b));
    j["sl2_blocks"] = a;
  } else {
    auto m = g.complex_matrix();
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < m.cols(); ++c)
        row.push_back(json::array({decimal(m(r, c).real()), decimal(m(r, c).imag())}));
      rows.push_back(row);
    }
    j["matrix"] = rows;
  }
  return j;
}

UnitaryElement unitary_from_json(const json& j) {
  int p = j.at("shape").at(0).get<int>();
  int q = j.at("shape").at(1).get<int>();
  if (j.contains("torus")) {
    std::vector<Rational> t;
    for (const auto& x : j.at("torus")) t.push_back(parse_exact(x));
    return UnitaryElement::torus(p, q, std::move(t));
  }
  if (j.contains("sl2_blocks")) {
    std::vector<SL2Element> parts;
    for (const auto& x : j.at("sl2_blocks")) parts.push_back(sl2_from_json(x));
    return direct_sum(parts);
  }
  const auto& rows = j.at("matrix");
  Eigen::MatrixXcd m(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows.size(); ++c)
      m(r, c) = {parse_decimal(rows.at(r).at(c).at(0)), parse_decimal(rows.at(r).at(c).at(1))};
  return UnitaryElement::matrix(p, q, m);
}

json to_json(const ConjClass& c) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, cls::Elliptic>) {
          if (auto e = x.exact()) return {{"type", "elliptic"}, {"t", format_rational(*e)}};
          return {{"type", "elliptic"}, {"t_numeric", x.value()}};
        } else if constexpr (std::is_same_v<T, cls::ParPosTrace>) {
          return {{"type", "parabolic_pos"}, {"mu_sign", x.mu_sign}};
        } else if constexpr (std::is_same_v<T, cls::ParNegTrace>) {
          return {{"type", "parabolic_neg"}, {"mu_sign", x.mu_sign}};
        } else if constexpr (std::is_same_v<T, cls::Hyperbolic>) {
          return {{"type", "hyperbolic"}, {"trace_sign", x.trace_sign}};
        } else if constexpr (std::is_same_v<T, cls::PlusIdentity>) {
          return {{"type", "identity"}};
        } else {
          return {{"type", "minus_identity"}};
        }
      },
      c);
}

ConjClass class_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "elliptic") {
    if (j.contains("t")) return cls::Elliptic{parse_exact(j.at("t"))};
    return cls::Elliptic{j.at("t_numeric").get<double>()};
  }
  if (type == "parabolic_pos") return cls::ParPosTrace{j.at("mu_sign").get<int>()};
  if (type == "parabolic_neg") return cls::ParNegTrace{j.at("mu_sign").get<int>()};
  if (type == "hyperbolic") return cls::Hyperbolic{j.at("trace_sign").get<int>()};
  if (type == "identity") return cls::PlusIdentity{};
  if (type == "minus_identity") return cls::MinusIdentity{};
  throw Error(ErrorCode::InvalidInput, "unknown class type '" + type + "'");
}

json to_json(const Representation& rep) {
  json images = json::array();
  std::string kind;
  switch (rep.kind()) {
    case RepKind::SL2:
      kind = "sl2";
      for (const auto& g : rep.sl2) images.push_back(to_json(g));
      break;
    case RepKind::SL2Blocks:
    case RepKind::Unitary:
      kind = rep.kind() == RepKind::SL2Blocks ? "sl2_blocks" : "unitary";
      for (const auto& g : rep.unitary) images.push_back(to_json(g));
      break;
  }
  json classes = json::array();
  for (const auto& c : rep.boundary_classes) classes.push_back(to_json(c));
  return {{"surface", {{"genus", rep.surface.genus}, {"boundary", rep.surface.boundary}}},
          {"kind", kind},
          {"generators", rep.surface.generator_names()},
          {"images", images},
          {"boundary_classes", classes},
          {"provenance", rep.provenance}};
}

Representation representation_from_json(const json& j) {
  int g = j.at("surface").at("genus").get<int>();
  int n = j.at("surface").at("boundary").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  std::vector<ConjClass> classes;
  for (const auto& c : j.at("boundary_classes")) classes.push_back(class_from_json(c));
  json prov = j.value("provenance", json::object());
  if (kind == "sl2") {
    std::vector<SL2Element> images;
    for (const auto& x : j.at("images")) images.push_back(sl2_from_json(x));
    return make_sl2_rep(g, n, std::move(images), std::move(classes), std::move(prov));
  }
  std::vector<UnitaryElement> images;
  for (const auto& x : j.at("images")) images.push_back(unitary_from_json(x));
  Representation rep = make_unitary_rep(g, n, std::move(images), std::move(prov));
  if (kind == "sl2_blocks") {
    if (rep.kind() != RepKind::SL2Blocks ||
        classes.size() != static_cast<std::size_t>(rep.block_count() * n))
      throw Error(ErrorCode::InvalidInput, "block classes do not match the images");
    rep.boundary_classes = std::move(classes);
  }
  return rep;
}

json to_json(const Rho& r) {
  json j = {{"value", r.value}};
  j["exact"] = r.exact ? json(format_rational(*r.exact)) : json(nullptr);
  return j;
}

json to_json(const InvariantReport& r) {
  json rho = json::array();
  for (const auto& x : r.rho_per_boundary) rho.push_back(to_json(x));
  json j = {{"toledo", r.toledo},
            {"rho_per_boundary", rho},
            {"rho_total", to_json(r.rho_total)},
            {"signature_formula", r.signature_formula},
            {"bound", r.bound},
            {"residual", r.residual},
            {"integral", r.integral},
            {"within_bound", r.within_bound},
            {"convention", r.convention}};
  j["signature_oracle"] = r.signature_oracle ? json(*r.signature_oracle) : json(nullptr);
  return j;
}

json to_json(const OracleResult& r) {
  return {{"dim_c0", r.dim_c0},
          {"dim_c1", r.dim_c1},
          {"dim_c2", r.dim_c2},
          {"dim_h1", r.dim_h1},
          {"dim_parabolic", r.dim_parabolic},
          {"signature", r.signature},
          {"eigenvalues", r.eigenvalues},
          {"spectral_gap", r.spectral_gap},
          {"dd_defect", r.dd_defect}};
}

json Certificate::to_json() const {
  json factors_json = json::array();
  for (const auto& f : factors) factors_json.push_back(flatsig::to_json(f));
  json reports_json = json::array();
  for (const auto& r : reports) reports_json.push_back(flatsig::to_json(r));
  json j = {{"schema", kSchemaVersion},
            {"steps", steps},
            {"factors", factors_json},
            {"invariants", reports_json}};
  j["target"] = target ? target->to_json() : json(nullptr);
  if (!oracle.empty()) {
    json o = json::array();
    for (const auto& r : oracle) o.push_back(flatsig::to_json(r));
    j["oracle"] = o;
  }
  return j;
}

Certificate Certificate::from_json(const json& j) {
  if (j.value("schema", 0) != kSchemaVersion)
    throw Error(ErrorCode::InvalidInput, "unsupported certificate schema");
  Certificate c;
  if (j.contains("target") && !j.at("target").is_null())
    c.target = PlanTarget::from_json(j.at("target"));
  c.steps = j.value("steps", json::array());
  for (const auto& f : j.at("factors")) c.factors.push_back(representation_from_json(f));
  if (j.contains("invariants"))
    for (const auto& r : j.at("invariants")) {
      InvariantReport rep;
      rep.signature_formula = r.at("signature_formula").get<int>();
      rep.toledo = r.value("toledo", 0.0);
      rep.bound = r.value("bound", 0);
      if (r.contains("signature_oracle") && !r.at("signature_oracle").is_null())
        rep.signature_oracle = r.at("signature_oracle").get<int>();
      c.reports.push_back(rep);
    }
  return c;
}

namespace {

std::optional<OracleResult> oracle_if_supported(const Representation& rep, unsigned seed) {
  try {
    return signature_direct(rep, seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RealificationUnsupported) return std::nullopt;
    throw;
  }
}

}  // namespace

Certificate certify(const PlanTarget& target, bool with_oracle, unsigned seed) {
  auto p = plan(target);
  auto realization = execute_factors(p);
  Certificate c;
  c.target = target;
  c.steps = p.steps;
  c.factors = std::move(realization.factors);
  for (const auto& f : c.factors) {
    auto report = signature_of(f);
    if (with_oracle) {
      if (auto o = oracle_if_supported(f, seed)) {
        report.signature_oracle = o->signature;
        c.oracle.push_back(std::move(*o));
      }
    }
    c.reports.push_back(report);
  }
  return c;
}

VerifyOutcome verify(const Certificate& cert, bool with_oracle, unsigned seed) {
  VerifyOutcome out;
  auto fail = [&](const std::string& why) {
    out.ok = false;
    out.failures.push_back(why);
  };
  if (cert.factors.empty()) fail("certificate has no representation");
  int total = 0;
  for (std::size_t k = 0; k < cert.factors.size(); ++k) {
    const auto& rep = cert.factors[k];
    const std::string tag = "factor " + std::to_string(k) + ": ";
    try {
      validate(rep);
    } catch (const Error& e) {
      fail(tag + e.what());
      continue;
    }
    InvariantReport report = signature_of(rep);
    if (!report.integral) fail(tag + "Toledo/rho sum is not integral");
    if (!report.within_bound) fail(tag + "Milnor-Wood bound violated");
    if (k < cert.reports.size() && cert.reports[k].signature_formula != report.signature_formula)
      fail(tag + "recorded signature " + std::to_string(cert.reports[k].signature_formula) +
           " but recomputed " + std::to_string(report.signature_formula));
    if (cert.target && !boundary_mode_ok(rep, cert.target->mode))
      fail(tag + "boundary classes violate mode " + mode_name(cert.target->mode));
    if (with_oracle) {
      if (auto o = oracle_if_supported(rep, seed)) {
        report.signature_oracle = o->signature;
        if (o->signature != report.signature_formula)
          fail(tag + "oracle signature " + std::to_string(o->signature) +
               " differs from formula " + std::to_string(report.signature_formula));
        out.oracle.push_back(std::move(*o));
      } else {
        ++out.oracle_skipped;
      }
    }
    total += report.signature_formula;
    out.reports.push_back(std::move(report));
  }
  if (cert.target && out.ok && total != cert.target->m)
    fail("signature " + std::to_string(total) + " does not match target m = " +
         std::to_string(cert.target->m));
  return out;
}

}  // namespace flatsig
