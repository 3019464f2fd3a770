#include "flatsig/constructions.hpp"

#include <algorithm>
#include <complex>
#include <numbers>

#include "flatsig/errors.hpp"

namespace flatsig {

namespace {

bool valid_nontrivial(const Rational& t) { return t > 0 && t < 2 && t != 1; }

// Splits total into k angles in (0,2) avoiding 1.
std::optional<std::vector<Rational>> spread(const Rational& total, int k) {
  if (k == 0) {
    if (total == 0) return std::vector<Rational>{};
    return std::nullopt;
  }
  if (total <= 0 || total >= 2 * k) return std::nullopt;
  Rational share = total / k;
  std::vector<Rational> out(k, share);
  if (share != 1) return out;
  if (k == 1) return std::nullopt;
  int start = 0;
  if (k % 2 == 1) {
    out[0] = Rational(2, 3);
    out[1] = Rational(2, 3);
    out[2] = Rational(5, 3);
    start = 3;
  }
  for (int i = start; i + 1 < k; i += 2) {
    out[i] = Rational(3, 4);
    out[i + 1] = Rational(5, 4);
  }
  return out;
}

}  // namespace

std::optional<std::vector<Rational>> solve_so2_angles(
    const std::vector<std::optional<Rational>>& fixed, int m, bool allow_trivial) {
  int count = static_cast<int>(fixed.size());
  Rational fixed_sum = 0;
  int fixed_nontrivial = 0;
  std::vector<int> free;
  for (int i = 0; i < count; ++i) {
    if (!fixed[i]) {
      free.push_back(i);
      continue;
    }
    fixed_sum += *fixed[i];
    if (*fixed[i] != 0) ++fixed_nontrivial;
  }
  for (int trivial = 0; trivial <= (allow_trivial && !free.empty() ? 1 : 0); ++trivial) {
    int k = static_cast<int>(free.size()) - trivial;
    int nontrivial = fixed_nontrivial + k;
    // sum of 2(1 - t) over nontrivial entries equals m
    if ((2 * nontrivial - m) % 2 != 0) continue;
    Rational total = Rational(2 * nontrivial - m, 2);
    if (denominator(total) != 1 || numerator(total) % 2 != 0) continue;
    auto parts = spread(total - fixed_sum, k);
    if (!parts) continue;
    std::vector<Rational> out(count);
    for (int i = 0; i < count; ++i)
      if (fixed[i]) out[i] = *fixed[i];
    for (int i = 0; i < k; ++i) out[free[i]] = (*parts)[i];
    if (trivial) out[free.back()] = 0;
    return out;
  }
  return std::nullopt;
}

std::vector<Rational> so2_angles(int n, int m, So2Mode mode, std::optional<Rational> prescribed) {
  if (n < 2) throw Error(ErrorCode::UnsupportedSurface, "SO(2) recipes need n >= 2");
  if (m % 2 != 0) throw Error(ErrorCode::UnachievableValue, "SO(2) signatures are even");
  if (prescribed && !valid_nontrivial(*prescribed))
    throw Error(ErrorCode::ParameterOutOfRange, "prescribed angle must lie in (0,2)pi minus pi");
  if (mode == So2Mode::Elliptic) {
    if ((2 * n - m) % 4 != 0)
      throw Error(ErrorCode::UnachievableValue, "elliptic mode needs m = 2n mod 4");
    int a = (2 * n - m) / 4;
    if (a <= 0 || a >= n)
      throw Error(ErrorCode::UnachievableValue, "elliptic mode needs 0 < a < n");
    Rational theta = prescribed ? *prescribed : Rational(2 * a, n);
    if (!prescribed && theta == 1) theta = Rational(1, 2);
    Rational rest = (2 * a - theta) / (n - 1);
    if (valid_nontrivial(rest)) {
      std::vector<Rational> t(n, rest);
      t[0] = theta;
      return t;
    }
    std::vector<std::optional<Rational>> fixed(n);
    fixed[0] = theta;
    if (auto t = solve_so2_angles(fixed, m, false)) return *t;
    throw Error(ErrorCode::UnachievableValue, "no elliptic angles with this prescribed angle");
  }
  int h = std::abs(m) / 2;
  if (h > n - 2) throw Error(ErrorCode::UnachievableValue, "|m| exceeds 2n - 4");
  Rational theta = prescribed ? *prescribed : Rational(1, 2);
  Rational target = m >= 0 ? Rational(2) : Rational(2 * (1 + h));
  Rational share = (target - theta) / (h + 1);
  if (!valid_nontrivial(share)) {
    std::vector<std::optional<Rational>> fixed(n);
    fixed[0] = theta;
    if (auto t = solve_so2_angles(fixed, m, true)) return *t;
    throw Error(ErrorCode::UnachievableValue, "no paired angles with this prescribed angle");
  }
  std::vector<Rational> t;
  t.push_back(theta);
  for (int i = 0; i <= h; ++i) t.push_back(share);
  while (static_cast<int>(t.size()) + 1 < n) {
    t.push_back(Rational(1, 2));
    t.push_back(Rational(3, 2));
  }
  if (static_cast<int>(t.size()) < n) t.push_back(0);
  return t;
}

Representation so2_from_angles(int g, const std::vector<Rational>& t) {
  Rational sum = 0;
  for (const auto& x : t) {
    if (x < 0 || x >= 2) throw Error(ErrorCode::ParameterOutOfRange, "angles must lie in [0,2)pi");
    sum += x;
  }
  if (denominator(sum) != 1 || numerator(sum) % 2 != 0)
    throw Error(ErrorCode::ParameterOutOfRange, "boundary angles must sum to a multiple of 2pi");
  std::vector<SL2Element> images(2 * g, SL2Element::identity());
  for (const auto& x : t) images.push_back(SL2Element::rotation(x));
  nlohmann::json angles = nlohmann::json::array();
  for (const auto& x : t) angles.push_back(format_rational(x));
  return make_sl2_rep(g, static_cast<int>(t.size()), std::move(images), {},
                      {{"op", "so2"}, {"genus", g}, {"angles", angles}});
}

Representation so2_rep(int g, int n, int m, So2Mode mode, std::optional<Rational> prescribed) {
  return so2_from_angles(g, so2_angles(n, m, mode, prescribed));
}

Representation phi_pants(int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidInput, "sign must be +-1");
  auto d1 = SL2Element::rotation(sign < 0 ? Rational(1, 2) : Rational(3, 2));
  auto d2 = SL2Element::from_rationals(1, -sign, 0, 1);
  return make_sl2_rep(0, 3, {d1, d2, (d1 * d2).inverse()}, {},
                      {{"op", "block"}, {"kind", sign < 0 ? "phi-minus" : "phi-plus"}});
}

namespace {

SL2Element Q(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return SL2Element::from_rationals(a, b, c, d);
}

SL2Element diag2() { return Q(2, 0, 0, Rational(1, 2)); }

Representation pants_of(const SL2Element& a, const SL2Element& b, const nlohmann::json& prov) {
  return make_sl2_rep(0, 3, {a, b, (a * b).inverse()}, {}, prov);
}

Representation torus_of(const SL2Element& a, const SL2Element& b, const nlohmann::json& prov) {
  auto comm = a * b * a.inverse() * b.inverse();
  return make_sl2_rep(1, 1, {a, b, comm.inverse()}, {}, prov);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::ParameterOutOfRange, what);
}

std::optional<Integer> exact_isqrt(const Integer& v) {
  if (v < 0) return std::nullopt;
  Integer r = boost::multiprecision::sqrt(v);
  if (r * r != v) return std::nullopt;
  return r;
}

std::optional<Rational> exact_sqrt(const Rational& v) {
  auto p = exact_isqrt(numerator(v));
  auto q = exact_isqrt(denominator(v));
  if (!p || !q) return std::nullopt;
  return Rational(*p, *q);
}

bool is_pm_one(const Rational& v) { return v == 1 || v == -1; }

}  // namespace

nlohmann::json BlockSpec::to_json() const {
  nlohmann::json params_json = nlohmann::json::object();
  for (const auto& [k, v] : params) params_json[k] = format_rational(v);
  nlohmann::json j = {{"kind", kind}, {"params", params_json}};
  if (mirror) j["mirror"] = true;
  return j;
}

BlockSpec BlockSpec::from_json(const nlohmann::json& j) {
  BlockSpec s;
  s.kind = j.at("kind").get<std::string>();
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items())
      s.params[k] = v.is_string() ? parse_rational(v.get<std::string>())
                                  : parse_rational(std::to_string(v.get<long long>()));
  s.mirror = j.value("mirror", false);
  return s;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"pants-borel-0", "two hyperbolics fixing one common ideal point",
       {{"lambda", 2}, {"alpha", Rational(1, 4)}, {"c", 1}}},
      {"pants-par1", "Borel pants whose product is parabolic; signature sign(c)",
       {{"lambda", 2}, {"c", 1}}},
      {"pants-cusp", "one cusp, one positive and one negative hyperbolic",
       {{"n", 1}, {"a", 2}, {"c", -6}}},
      {"pants-fuchsian", "frozen rational Fuchsian pants, signature 2", {}},
      {"pants-2cusp", "two cusps and a negative-trace third boundary", {{"n", 1}, {"m", -5}}},
      {"pants-3cusp", "three cusps, m = -4/n", {{"n", 1}}},
      {"pants-centralinv", "two central inversions and their hyperbolic product",
       {{"t2", Rational(1, 2)}, {"t3", Rational(3, 2)}, {"p11", 1}, {"p12", 1},
        {"p21", Rational(-1, 2)}, {"p22", Rational(1, 2)}}},
      {"pants-junction", "hyperbolic entry and exit of trace +-5/2 around a free boundary",
       {{"e", 1}, {"x", 1}, {"x0", Rational(-3, 2)}, {"y", 1}, {"inverse", 0}}},
      {"torus-schottky", "positive-trace generators, hyperbolic boundary, signature 0", {}},
      {"torus-borel", "Borel torus with parabolic boundary; signature sign(c)",
       {{"lambda", 2}, {"c", 1}}},
      {"torus-fuchsian", "frozen rational Fuchsian torus, signature 2", {}},
      {"torus-cusp", "negative-trace parabolic boundary, signature 2", {}},
      {"torus-elliptic", "elliptic boundary of angle t*pi, signature 2 for t < 1",
       {{"t", Rational(1, 2)}}},
      {"torus-commutator", "commutator trace 2 + sign*(lambda - 1/lambda)^2",
       {{"lambda", 2}, {"sign", 1}}},
  };
  return entries;
}

BlockSpec with_defaults(const BlockSpec& spec) {
  for (const auto& e : catalog()) {
    if (e.kind != spec.kind) continue;
    BlockSpec out = spec;
    for (const auto& [k, v] : spec.params)
      if (!e.defaults.count(k))
        throw Error(ErrorCode::InvalidInput, "block " + spec.kind + " has no parameter " + k);
    for (const auto& [k, v] : e.defaults) out.params.try_emplace(k, v);
    return out;
  }
  throw Error(ErrorCode::InvalidInput, "unknown block kind '" + spec.kind + "'");
}

int block_label(const BlockSpec& raw) {
  BlockSpec s = with_defaults(raw);
  const auto& P = s.params;
  auto get = [&](const char* k) { return P.at(k); };
  int label = 0;
  const std::string& k = s.kind;
  if (k == "pants-par1" || k == "torus-borel") {
    label = sign(get("c"));
  } else if (k == "pants-cusp") {
    label = 1;
  } else if (k == "pants-fuchsian" || k == "torus-fuchsian" || k == "torus-cusp") {
    label = 2;
  } else if (k == "pants-centralinv") {
    if (get("t2") != get("t3")) label = 0;
    else label = get("t2") == Rational(1, 2) ? 2 : -2;
  } else if (k == "pants-junction") {
    if (get("inverse") != 0) {
      label = 0;
    } else {
      Rational tau = Rational(3, 2) * get("x0") + Rational(5, 4);
      int same = sign(get("e")) * sign(get("x"));
      int y = sign(get("y"));
      if (tau > 2) label = 0;
      else if (tau == 2) label = same > 0 ? y : 0;
      else if (tau > -2) label = same > 0 ? 2 * y : 0;
      else if (tau == -2) label = same > 0 ? 2 * y : y;
      else label = 2 * y;
    }
  } else if (k == "torus-elliptic") {
    label = get("t") < 1 ? 2 : -2;
  } else if (k == "torus-commutator") {
    label = get("sign") > 0 ? 0 : 2;
  }
  return s.mirror ? -label : label;
}

Representation torus_commutator_lambda(const Rational& lambda, int sign_mode) {
  if (sign_mode != 1 && sign_mode != -1)
    throw Error(ErrorCode::InvalidInput, "sign mode must be +-1");
  if (lambda <= 1) throw Error(ErrorCode::OutOfFamilyRange, "need lambda > 1");
  Rational gap = (lambda - 1 / lambda) * (lambda - 1 / lambda);
  if (sign_mode < 0 && gap <= 4)
    throw Error(ErrorCode::OutOfFamilyRange,
                "the negative family needs lambda > 1 + sqrt 2 to reach trace < -2");
  auto a = Q(lambda, 0, 0, 1 / lambda);
  auto b = sign_mode > 0 ? Q(0, -1, 1, 0) : Q(2, 1, 1, 1);
  nlohmann::json prov = {{"op", "block"},
                         {"kind", "torus-commutator"},
                         {"params", {{"lambda", format_rational(lambda)}, {"sign", sign_mode}}}};
  return torus_of(a, b, prov);
}

Representation torus_commutator_boundary(const Rational& target_trace, int sign_mode) {
  if (sign_mode > 0 && target_trace <= 2)
    throw Error(ErrorCode::OutOfFamilyRange, "the positive family only reaches traces > 2");
  if (sign_mode < 0 && target_trace >= -2)
    throw Error(ErrorCode::OutOfFamilyRange, "the negative family only reaches traces < -2");
  Rational gap = sign_mode > 0 ? Rational(target_trace - 2) : Rational(2 - target_trace);
  auto r = exact_sqrt(gap);
  std::optional<Rational> disc = r ? exact_sqrt(*r * *r + 4) : std::nullopt;
  if (!r || !disc)
    throw Error(ErrorCode::OutOfFamilyRange,
                "no rational lambda with (lambda - 1/lambda)^2 = " + format_rational(gap));
  return torus_commutator_lambda((*r + *disc) / 2, sign_mode);
}

Representation block(const BlockSpec& raw) {
  BlockSpec s = with_defaults(raw);
  const auto& P = s.params;
  auto get = [&](const char* k) { return P.at(k); };
  nlohmann::json prov = {{"op", "block"}, {"spec", s.to_json()}};
  const std::string& k = s.kind;
  Representation rep;
  if (k == "pants-borel-0") {
    Rational l = get("lambda"), al = get("alpha"), c = get("c");
    require(l > 1, "need lambda > 1");
    require(al != 0 && !is_pm_one(al), "need alpha != 0, +-1");
    require(l * al != 1, "lambda*alpha = 1 makes the product parabolic of trace 2");
    require(c != 0, "need c != 0");
    rep = pants_of(Q(l, 0, 0, 1 / l), Q(al, c, 0, 1 / al), prov);
  } else if (k == "pants-par1") {
    Rational l = get("lambda"), c = get("c");
    require(l > 1 && c != 0, "need lambda > 1 and c != 0");
    rep = pants_of(Q(l, 0, 0, 1 / l), Q(1 / l, c, 0, l), prov);
  } else if (k == "pants-cusp") {
    Rational n = get("n"), a = get("a"), c = get("c");
    require(n > 0 && a > 1, "need n > 0 and a > 1");
    require(a + n * c + 1 / a < -2, "need tr(AB) = a + nc + 1/a < -2");
    rep = pants_of(Q(1, n, 0, 1), Q(a, 0, c, 1 / a), prov);
  } else if (k == "pants-fuchsian") {
    rep = pants_of(diag2(), Q(-3, Rational(7, 2), -5, Rational(11, 2)), prov);
  } else if (k == "pants-2cusp" || k == "pants-3cusp") {
    Rational n = get("n");
    require(n > 0, "need n > 0");
    Rational m = k == "pants-3cusp" ? Rational(-4) / n : get("m");
    require(m < 0 && 2 + m * n <= -2, "need m < 0 and 2 + mn <= -2");
    rep = pants_of(Q(1, n, 0, 1), Q(1, 0, m, 1), prov);
  } else if (k == "pants-centralinv") {
    Rational t2 = get("t2"), t3 = get("t3");
    auto ok = [](const Rational& t) { return t == Rational(1, 2) || t == Rational(3, 2); };
    require(ok(t2) && ok(t3), "central inversions need t in {1/2, 3/2}");
    auto conj = Mat2::from_rationals(get("p11"), get("p12"), get("p21"), get("p22"));
    require(get("p11") * get("p22") - get("p12") * get("p21") == 1, "conjugator must have det 1");
    Rational frob = get("p11") * get("p11") + get("p12") * get("p12") + get("p21") * get("p21") +
                    get("p22") * get("p22");
    require(frob > 2, "conjugator must move the center (|P|^2 > 2)");
    auto g2 = SL2Element::rotation(t2);
    auto g3 = SL2Element::rotation(t3).conjugated(conj);
    rep = make_sl2_rep(0, 3, {(g2 * g3).inverse(), g2, g3}, {}, prov);
  } else if (k == "pants-junction") {
    Rational e = get("e"), x = get("x"), x0 = get("x0"), y = get("y");
    require(is_pm_one(e) && is_pm_one(x) && is_pm_one(y), "e, x, y must be +-1");
    auto a = Q(2 * e, 0, 0, e / 2);
    SL2Element b;
    if (get("inverse") != 0) {
      b = a.inverse();
      if (e != x) b = b.negated();
    } else {
      Rational w = Rational(5, 2) - x0;
      require(x0 * w != 1, "x0 * (5/2 - x0) = 1 makes B triangular");
      b = Q(x * x0, x * y, x * (x0 * w - 1) / y, x * w);
    }
    rep = hurwitz(pants_of(a, b, prov), 1);
  } else if (k == "torus-schottky") {
    rep = torus_of(diag2(), Q(2, Rational(1, 3), Rational(-2, 3), Rational(7, 18)), prov);
  } else if (k == "torus-borel") {
    Rational l = get("lambda"), c = get("c");
    require(l > 1 && c != 0, "need lambda > 1 and c != 0");
    rep = torus_of(Q(l, 0, 0, 1 / l), Q(1 / l, c, 0, l), prov);
  } else if (k == "torus-fuchsian") {
    rep = torus_of(diag2(), Q(1, 1, 2, 3), prov);
  } else if (k == "torus-cusp") {
    rep = torus_of(diag2(), Q(1, 1, Rational(16, 9), Rational(25, 9)), prov);
  } else if (k == "torus-elliptic") {
    Rational t = get("t");
    bool upper = t > 1;
    Rational base = upper ? 2 - t : t;
    Rational tr;
    if (base == Rational(1, 3)) tr = 1;
    else if (base == Rational(1, 2)) tr = 0;
    else if (base == Rational(2, 3)) tr = -1;
    else
      throw Error(ErrorCode::ParameterOutOfRange,
                  "torus-elliptic needs t in {1/3, 1/2, 2/3, 4/3, 3/2, 5/3}");
    Rational bc = Rational(4) * (2 - tr) / 9;
    rep = torus_of(diag2(), Q(1, 1, bc, 1 + bc), prov);
    if (upper) rep = involution(rep);
  } else if (k == "torus-commutator") {
    Rational sg = get("sign");
    require(is_pm_one(sg), "sign must be +-1");
    try {
      rep = torus_commutator_lambda(get("lambda"), sg > 0 ? 1 : -1);
    } catch (const Error& err) {
      throw Error(ErrorCode::ParameterOutOfRange, err.what());
    }
  }
  if (s.mirror) rep = involution(rep);
  rep.provenance = prov;
  return rep;
}

namespace {

// Angles t_1..t_n in [0,2) with sum in 2Z and sum of (sgn t - t) equal to v.
std::vector<Rational> column_angles(int n, int v) {
  std::vector<Rational> col(n, Rational(0));
  if (v == 0) {
    if (n >= 2) {
      col[0] = Rational(1, 2);
      col[1] = Rational(3, 2);
    }
    return col;
  }
  int k = std::abs(v) + 2;
  for (int i = 0; i < k; ++i) col[i] = v > 0 ? Rational(2, k) : Rational(2 - Rational(2, k));
  return col;
}

}  // namespace

std::vector<std::vector<Rational>> up_angles(int n, int p, int m) {
  if (n < 1 || p < 1) throw Error(ErrorCode::UnsupportedSurface, "need n >= 1 and p >= 1");
  int slots = n * p;
  if (m != 0 && std::abs(m) > slots - 2)
    throw Error(ErrorCode::UnachievableValue, "|m| exceeds max{0, np - 2}");
  std::vector<Rational> flat(slots, Rational(0));
  if (m == 0) {
    if (slots >= 2) {
      flat[0] = Rational(1, 2);
      flat[1] = Rational(3, 2);
    }
  } else {
    int k = std::abs(m) + 2;
    for (int i = 0; i < k; ++i) flat[i] = m > 0 ? Rational(2, k) : Rational(2 - Rational(2, k));
  }
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(p));
  for (int s = 0; s < slots; ++s) rows[s / p][s % p] = flat[s];
  return rows;
}

Representation up_rep(int g, int n, int p, int m, bool negative_block) {
  if (g < 1) throw Error(ErrorCode::UnsupportedSurface, "up_rep needs genus >= 1");
  auto rows = up_angles(n, p, negative_block ? -m : m);
  int pp = negative_block ? 0 : p, qq = negative_block ? p : 0;
  std::vector<double> big(p, 0.0);  // column sums Theta_j / pi
  for (const auto& row : rows)
    for (int j = 0; j < p; ++j) big[j] += to_double(row[j]);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(p, p);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(p, p);
  if (p == 1) {
    a(0, 0) = 1;
    b(0, 0) = 1;
  } else {
    for (int i = 0; i + 1 < p; ++i) a(i, i + 1) = 1;
    a(p - 1, 0) = 1;
    double acc = 0;
    b(0, 0) = 1;
    for (int i = 0; i + 1 < p; ++i) {
      acc += big[i];
      b(i + 1, i + 1) = std::polar(1.0, -std::numbers::pi * acc);
    }
  }
  std::vector<UnitaryElement> images;
  images.push_back(UnitaryElement::matrix(pp, qq, a));
  images.push_back(UnitaryElement::matrix(pp, qq, b));
  for (int i = 1; i < g; ++i) {
    images.push_back(UnitaryElement::identity(pp, qq));
    images.push_back(UnitaryElement::identity(pp, qq));
  }
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    images.push_back(UnitaryElement::torus(pp, qq, row));
    nlohmann::json r = nlohmann::json::array();
    for (const auto& t : row) r.push_back(format_rational(t));
    rows_json.push_back(r);
  }
  return make_unitary_rep(g, n, std::move(images),
                          {{"op", "up_rep"}, {"genus", g}, {"p", pp}, {"q", qq}, {"m", m}, {"angles", rows_json}});
}

Representation upq_genus0_rep(int n, int p, int q, int m) {
  if (n < 2) throw Error(ErrorCode::UnsupportedSurface, "genus 0 needs n >= 2");
  if (p < 0 || q < 0 || p + q < 1) throw Error(ErrorCode::InvalidInput, "need p + q >= 1");
  int cap = n - 2;
  if (std::abs(m) > (p + q) * cap)
    throw Error(ErrorCode::UnachievableValue, "|m| exceeds (p+q)(n-2)");
  std::vector<int> values(p + q);
  int rest = m;
  for (int j = 0; j < p + q; ++j) {
    int c = std::clamp(rest, -cap, cap);
    values[j] = j < p ? c : -c;
    rest -= c;
  }
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(p + q));
  for (int j = 0; j < p + q; ++j) {
    auto col = column_angles(n, values[j]);
    for (int i = 0; i < n; ++i) rows[i][j] = col[i];
  }
  std::vector<UnitaryElement> images;
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    images.push_back(UnitaryElement::torus(p, q, row));
    nlohmann::json r = nlohmann::json::array();
    for (const auto& t : row) r.push_back(format_rational(t));
    rows_json.push_back(r);
  }
  return make_unitary_rep(0, n, std::move(images),
                          {{"op", "upq_genus0"},
                           {"p", p},
                           {"q", q},
                           {"m", m},
                           {"factor_values", values},
                           {"angles", rows_json}});
}

}  // namespace flatsig
