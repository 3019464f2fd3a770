#include "flatsig/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatsig/errors.hpp"

namespace flatsig {

namespace {

using Quad = std::array<Rational, 4>;

Quad mul(const Quad& x, const Quad& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

std::array<double, 4> mul(const std::array<double, 4>& x, const std::array<double, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

std::array<double, 4> to_doubles(const Quad& q) {
  return {to_double(q[0]), to_double(q[1]), to_double(q[2]), to_double(q[3])};
}

// Entries of k(t*pi) when they are rational.
std::optional<Quad> rational_rotation(const Rational& t) {
  if (t == 0) return Quad{1, 0, 0, 1};
  if (t == Rational(1, 2)) return Quad{0, -1, 1, 0};
  if (t == 1) return Quad{-1, 0, 0, -1};
  if (t == Rational(3, 2)) return Quad{0, 1, -1, 0};
  return std::nullopt;
}

// t in (0,2) with cos(t*pi) = half_trace, for the rational half traces where
// t is rational.
std::optional<Rational> exact_angle(const Rational& half_trace, bool upper) {
  Rational t;
  if (half_trace == 0)
    t = Rational(1, 2);
  else if (half_trace == Rational(1, 2))
    t = Rational(1, 3);
  else if (half_trace == Rational(-1, 2))
    t = Rational(2, 3);
  else
    return std::nullopt;
  return upper ? t : Rational(2 - t);
}

}  // namespace

Mat2 Mat2::from_doubles(double a, double b, double c, double d) {
  Mat2 m;
  m.v = {a, b, c, d};
  return m;
}

Mat2 Mat2::from_rationals(const Rational& a, const Rational& b, const Rational& c,
                          const Rational& d) {
  Mat2 m;
  m.q = Quad{a, b, c, d};
  m.v = to_doubles(*m.q);
  return m;
}

Mat2 Mat2::identity() { return from_rationals(1, 0, 0, 1); }

Mat2 Mat2::inverse() const {
  Mat2 m;
  if (q) {
    const Quad& x = *q;
    Rational det = x[0] * x[3] - x[1] * x[2];
    if (det == 0) throw Error(ErrorCode::InvalidInput, "singular matrix");
    m.q = Quad{x[3] / det, -x[1] / det, -x[2] / det, x[0] / det};
    m.v = to_doubles(*m.q);
    return m;
  }
  double det = this->det();
  if (det == 0) throw Error(ErrorCode::InvalidInput, "singular matrix");
  m.v = {v[3] / det, -v[1] / det, -v[2] / det, v[0] / det};
  return m;
}

Mat2 Mat2::operator*(const Mat2& o) const {
  Mat2 m;
  if (q && o.q) {
    m.q = mul(*q, *o.q);
    m.v = to_doubles(*m.q);
  } else {
    m.v = mul(v, o.v);
  }
  return m;
}

SL2Element SL2Element::from_doubles(double a, double b, double c, double d) {
  double det = a * d - b * c;
  double scale = std::max(1.0, a * a + b * b + c * c + d * d);
  if (!std::isfinite(det) || std::abs(det - 1) > 1e-12 * scale)
    throw Error(ErrorCode::InvalidInput, "determinant is not 1");
  SL2Element g;
  g.m_ = {a, b, c, d};
  g.tag_ = std::monostate{};
  return g;
}

SL2Element SL2Element::from_rationals(const Rational& a, const Rational& b, const Rational& c,
                                      const Rational& d) {
  if (a * d - b * c != 1) throw Error(ErrorCode::InvalidInput, "determinant is not exactly 1");
  SL2Element g;
  g.tag_ = RationalEntries{Quad{a, b, c, d}};
  g.m_ = to_doubles(std::get<RationalEntries>(g.tag_).e);
  return g;
}

SL2Element SL2Element::rotation(const Rational& t) {
  Rational r = mod2(t);
  SL2Element g;
  g.tag_ = RotationByPi{r};
  if (auto q = rational_rotation(r)) {
    g.m_ = to_doubles(*q);
  } else {
    double th = to_double(r) * std::numbers::pi;
    g.m_ = {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
  }
  return g;
}

SL2Element SL2Element::from_mat(const Mat2& m) {
  if (m.q) return from_rationals((*m.q)[0], (*m.q)[1], (*m.q)[2], (*m.q)[3]);
  return from_doubles(m.v[0], m.v[1], m.v[2], m.v[3]);
}

std::optional<std::array<Rational, 4>> SL2Element::rational_entries() const {
  if (auto* r = std::get_if<RationalEntries>(&tag_)) return r->e;
  if (auto* k = std::get_if<RotationByPi>(&tag_)) return rational_rotation(k->t);
  return std::nullopt;
}

std::optional<Rational> SL2Element::rotation_t() const {
  if (auto* k = std::get_if<RotationByPi>(&tag_)) return k->t;
  return std::nullopt;
}

std::optional<Rational> SL2Element::exact_trace() const {
  if (auto q = rational_entries()) return (*q)[0] + (*q)[3];
  if (auto t = rotation_t()) {
    Rational s = mod2(*t);
    if (s == Rational(1, 3) || s == Rational(5, 3)) return Rational(1);
    if (s == Rational(2, 3) || s == Rational(4, 3)) return Rational(-1);
  }
  return std::nullopt;
}

SL2Element SL2Element::operator*(const SL2Element& o) const {
  auto t1 = rotation_t();
  auto t2 = o.rotation_t();
  if (t1 && t2) return rotation(*t1 + *t2);
  auto q1 = rational_entries();
  auto q2 = o.rational_entries();
  SL2Element g;
  if (q1 && q2) {
    g.tag_ = RationalEntries{mul(*q1, *q2)};
    g.m_ = to_doubles(std::get<RationalEntries>(g.tag_).e);
  } else {
    g.m_ = mul(m_, o.m_);
    g.tag_ = std::monostate{};
  }
  return g;
}

SL2Element SL2Element::inverse() const {
  if (auto t = rotation_t()) return rotation(-*t);
  SL2Element g;
  g.m_ = {m_[3], -m_[1], -m_[2], m_[0]};
  g.tag_ = std::monostate{};
  if (auto* r = std::get_if<RationalEntries>(&tag_))
    g.tag_ = RationalEntries{Quad{r->e[3], -r->e[1], -r->e[2], r->e[0]}};
  return g;
}

SL2Element SL2Element::negated() const {
  if (auto t = rotation_t()) return rotation(*t + 1);
  SL2Element g;
  g.m_ = {-m_[0], -m_[1], -m_[2], -m_[3]};
  g.tag_ = std::monostate{};
  if (auto* r = std::get_if<RationalEntries>(&tag_))
    g.tag_ = RationalEntries{Quad{-r->e[0], -r->e[1], -r->e[2], -r->e[3]}};
  return g;
}

Mat2 SL2Element::as_mat() const {
  if (auto q = rational_entries()) return Mat2::from_rationals((*q)[0], (*q)[1], (*q)[2], (*q)[3]);
  return Mat2::from_doubles(m_[0], m_[1], m_[2], m_[3]);
}

SL2Element SL2Element::conjugated(const Mat2& p) const {
  if (p.det() <= 0) throw Error(ErrorCode::InvalidInput, "conjugator must have det > 0");
  if (p.q && *p.q == Quad{1, 0, 0, 1}) return *this;
  Mat2 r = p * as_mat() * p.inverse();
  if (r.q) return from_rationals((*r.q)[0], (*r.q)[1], (*r.q)[2], (*r.q)[3]);
  SL2Element g;
  g.m_ = r.v;
  g.tag_ = std::monostate{};
  return g;
}

double SL2Element::distance(const SL2Element& o) const {
  double d = 0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m_[i] - o.m_[i]));
  return d;
}

SL2Element SL2Element::numeric() const {
  SL2Element g;
  g.m_ = m_;
  g.tag_ = std::monostate{};
  return g;
}

double cls::Elliptic::value() const {
  if (auto* r = std::get_if<Rational>(&t)) return to_double(*r);
  return std::get<double>(t);
}

std::optional<Rational> cls::Elliptic::exact() const {
  if (auto* r = std::get_if<Rational>(&t)) return *r;
  return std::nullopt;
}

bool cls::Elliptic::operator==(const Elliptic& o) const {
  auto a = exact();
  auto b = o.exact();
  if (a && b) return *a == *b;
  return std::abs(value() - o.value()) < 1e-9;
}

ConjClass classify(const SL2Element& g) {
  if (auto t = g.rotation_t()) {
    if (*t == 0) return cls::PlusIdentity{};
    if (*t == 1) return cls::MinusIdentity{};
    return cls::Elliptic{*t};
  }
  if (auto q = g.rational_entries()) {
    const Quad& e = *q;
    Rational tr = e[0] + e[3];
    if (tr > 2) return cls::Hyperbolic{1};
    if (tr < -2) return cls::Hyperbolic{-1};
    if (tr == 2) {
      if (e[1] == 0 && e[2] == 0) return cls::PlusIdentity{};
      return cls::ParPosTrace{sign(Rational(e[1] - e[2]))};
    }
    if (tr == -2) {
      if (e[1] == 0 && e[2] == 0) return cls::MinusIdentity{};
      return cls::ParNegTrace{sign(Rational(e[2] - e[1]))};
    }
    bool upper = e[2] > 0;
    if (auto t = exact_angle(tr / 2, upper)) return cls::Elliptic{*t};
    double th = std::acos(to_double(tr) / 2) / std::numbers::pi;
    return cls::Elliptic{upper ? th : 2 - th};
  }
  double tr = g.trace();
  double gap = std::abs(std::abs(tr) - 2);
  if (gap < kClassEps)
    throw Error(ErrorCode::AmbiguousTrace, "trace " + std::to_string(tr) + " is too close to +-2");
  if (tr > 2) return cls::Hyperbolic{1};
  if (tr < -2) return cls::Hyperbolic{-1};
  double th = std::acos(tr / 2) / std::numbers::pi;
  return cls::Elliptic{g.c() > 0 ? th : 2 - th};
}

ConjClass inverse_class(const ConjClass& c) {
  return std::visit(
      [](const auto& x) -> ConjClass {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, cls::Elliptic>) {
          if (auto r = x.exact()) return cls::Elliptic{Rational(2 - *r)};
          return cls::Elliptic{2 - x.value()};
        } else if constexpr (std::is_same_v<T, cls::ParPosTrace>) {
          return cls::ParPosTrace{-x.mu_sign};
        } else if constexpr (std::is_same_v<T, cls::ParNegTrace>) {
          return cls::ParNegTrace{-x.mu_sign};
        } else {
          return x;
        }
      },
      c);
}

bool is_elliptic(const ConjClass& c) { return std::holds_alternative<cls::Elliptic>(c); }
bool is_central(const ConjClass& c) {
  return std::holds_alternative<cls::PlusIdentity>(c) ||
         std::holds_alternative<cls::MinusIdentity>(c);
}
bool is_hyperbolic(const ConjClass& c) { return std::holds_alternative<cls::Hyperbolic>(c); }
bool is_parabolic(const ConjClass& c) {
  return std::holds_alternative<cls::ParPosTrace>(c) ||
         std::holds_alternative<cls::ParNegTrace>(c);
}

std::string describe(const ConjClass& c) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        auto pm = [](int s) { return std::string(s > 0 ? "+" : "-"); };
        if constexpr (std::is_same_v<T, cls::Elliptic>) {
          if (auto r = x.exact()) return "elliptic(t=" + format_rational(*r) + ")";
          return "elliptic(t=" + std::to_string(x.value()) + ")";
        } else if constexpr (std::is_same_v<T, cls::ParPosTrace>) {
          return "par+(mu" + pm(x.mu_sign) + ")";
        } else if constexpr (std::is_same_v<T, cls::ParNegTrace>) {
          return "par-(mu" + pm(x.mu_sign) + ")";
        } else if constexpr (std::is_same_v<T, cls::Hyperbolic>) {
          return "hyperbolic(" + pm(x.trace_sign) + ")";
        } else if constexpr (std::is_same_v<T, cls::PlusIdentity>) {
          return "+I";
        } else {
          return "-I";
        }
      },
      c);
}

EllipticAngle elliptic_angle(const SL2Element& g) {
  ConjClass c = classify(g);
  auto* e = std::get_if<cls::Elliptic>(&c);
  if (!e) throw Error(ErrorCode::NotElliptic, describe(c));
  return {e->value() * std::numbers::pi, e->exact()};
}

SL2Element mirrored(const SL2Element& g) {
  if (auto t = g.rotation_t()) return SL2Element::rotation(-*t);
  if (auto q = g.rational_entries())
    return SL2Element::from_rationals((*q)[0], -(*q)[1], -(*q)[2], (*q)[3]);
  return SL2Element::from_doubles(g.a(), -g.b(), -g.c(), g.d());
}

namespace {

// Columns (e, M e) for a cyclic vector e, so that M P = P * companion.
Quad cyclic_basis(const Quad& m) {
  Quad e;
  if (m[2] != 0)
    e = {1, m[0], 0, m[2]};
  else if (m[1] != 0)
    e = {0, m[1], 1, m[3]};
  else
    e = {1, m[0] + m[1], 1, m[2] + m[3]};
  return e;
}

std::array<double, 4> cyclic_basis(const std::array<double, 4>& m) {
  double sc = std::abs(m[0]) + std::abs(m[1]) + std::abs(m[2]) + std::abs(m[3]);
  if (std::abs(m[2]) > 1e-6 * sc) return {1, m[0], 0, m[2]};
  if (std::abs(m[1]) > 1e-6 * sc) return {0, m[1], 1, m[3]};
  return {1, m[0] + m[1], 1, m[2] + m[3]};
}

}  // namespace

std::optional<Mat2> rational_conjugator(const SL2Element& m1, const SL2Element& m2) {
  auto q1 = m1.rational_entries();
  auto q2 = m2.rational_entries();
  if (!q1 || !q2) return std::nullopt;
  Rational tr = (*q1)[0] + (*q1)[3];
  if (tr != (*q2)[0] + (*q2)[3]) return std::nullopt;
  auto central = [](const Quad& q) { return q[1] == 0 && q[2] == 0 && q[0] == q[3]; };
  if (central(*q1) || central(*q2)) {
    if (*q1 == *q2) return Mat2::identity();
    return std::nullopt;
  }
  Quad p1 = cyclic_basis(*q1);
  Quad p2 = cyclic_basis(*q2);
  Mat2 a = Mat2::from_rationals(p1[0], p1[1], p1[2], p1[3]);
  Mat2 b = Mat2::from_rationals(p2[0], p2[1], p2[2], p2[3]);
  Mat2 p = a * b.inverse();
  if (p.det() > 0) return p;
  if (tr * tr <= 4) return std::nullopt;
  // x I + y companion with x = -tr/2, y = 1 has det 1 - tr^2/4 < 0.
  Mat2 z = Mat2::from_rationals(-tr / 2, -1, 1, tr / 2);
  return a * z * b.inverse();
}

std::optional<Mat2> numeric_conjugator(const SL2Element& m1, const SL2Element& m2) {
  double tr = m1.trace();
  if (std::abs(tr - m2.trace()) > 1e-9) return std::nullopt;
  auto p1 = cyclic_basis(m1.entries());
  auto p2 = cyclic_basis(m2.entries());
  Mat2 a = Mat2::from_doubles(p1[0], p1[1], p1[2], p1[3]);
  Mat2 b = Mat2::from_doubles(p2[0], p2[1], p2[2], p2[3]);
  Mat2 p = a * b.inverse();
  if (p.det() <= 0) {
    if (tr * tr <= 4) return std::nullopt;
    p = a * Mat2::from_doubles(-tr / 2, -1, 1, tr / 2) * b.inverse();
  }
  double s = 1 / std::sqrt(p.det());
  return Mat2::from_doubles(p.v[0] * s, p.v[1] * s, p.v[2] * s, p.v[3] * s);
}

}  // namespace flatsig
