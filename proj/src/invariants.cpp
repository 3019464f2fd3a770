#include "flatsig/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "flatsig/errors.hpp"

namespace flatsig {

namespace {

// Orientation of the circle coordinate relative to the Toledo sign.
constexpr int kToledoSign = 1;

std::vector<int> range(int lo, int hi, int step = 1) {
  std::vector<int> v;
  for (int x = lo; x <= hi; x += step) v.push_back(x);
  return v;
}

Rho rho_of_unitary_boundary(const UnitaryElement& u) {
  if (u.is_torus()) return Rho::of(rho_torus(u.p(), u.q(), u.angles()));
  if (u.q() != 0)
    throw Error(ErrorCode::RealificationUnsupported, "rho needs a diagonal torus boundary");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u.complex_matrix());
  double total = 0;
  for (int k = 0; k < u.p(); ++k) {
    double t = std::arg(es.eigenvalues()(k)) / std::numbers::pi;
    if (t < 0) t += 2;
    if (std::abs(t) < 1e-9 || std::abs(t - 2) < 1e-9) continue;
    if (std::abs(t) < 1e-6 || std::abs(t - 2) < 1e-6)
      throw Error(ErrorCode::AmbiguousTrace, "unitary eigenvalue too close to 1");
    total += 1 - t;
  }
  return {std::nullopt, total};
}

}  // namespace

Rho Rho::operator+(const Rho& o) const {
  Rho r;
  r.value = value + o.value;
  if (exact && o.exact) r.exact = *exact + *o.exact;
  return r;
}

Rho rho_class(const ConjClass& c) {
  return std::visit(
      [](const auto& x) -> Rho {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, cls::Elliptic>) {
          if (auto r = x.exact()) return Rho::of(2 * (1 - *r));
          return {std::nullopt, 2 * (1 - x.value())};
        } else if constexpr (std::is_same_v<T, cls::ParPosTrace>) {
          return Rho::of(Rational(-x.mu_sign));
        } else {
          return Rho::of(Rational(0));
        }
      },
      c);
}

Rational rho_torus(int p, int q, const std::vector<Rational>& t) {
  if (static_cast<int>(t.size()) != p + q)
    throw Error(ErrorCode::InvalidInput, "torus angle count does not match shape");
  Rational s = 0;
  for (int k = 0; k < p + q; ++k) {
    Rational x = mod2(t[k]);
    Rational term = (x > 0 ? Rational(1) : Rational(0)) - x;
    s += k < p ? term : Rational(-term);
  }
  return s;
}

double toledo_with_offsets(const Representation& rep, const std::vector<long>& offsets) {
  if (rep.kind() == RepKind::Unitary) return 0;
  if (rep.kind() == RepKind::SL2Blocks) {
    double t = 0;
    for (int k = 0; k < rep.block_count(); ++k) t += toledo_with_offsets(block_of(rep, k), offsets);
    return t;
  }
  int g = rep.surface.genus;
  int n = rep.surface.boundary;
  auto lift = [&](int idx) {
    long w = idx < static_cast<int>(offsets.size()) ? offsets[idx] : 0;
    return LiftedElement::canonical(rep.sl2[idx]).shifted(w);
  };
  LiftedElement acc;
  for (int i = 0; i < g; ++i) {
    LiftedElement a = lift(2 * i);
    LiftedElement b = lift(2 * i + 1);
    acc = acc * a * b * a.inverse() * b.inverse();
  }
  double sum = 0;
  for (int j = 0; j + 1 < n; ++j) {
    LiftedElement c = lift(2 * g + j);
    sum += c.translation(rep.boundary_classes[j]);
    acc = acc * c;
  }
  ConjClass last = inverse_class(rep.boundary_classes[n - 1]);
  double forced = -acc.translation(last);
  return kToledoSign * (sum + forced);
}

double toledo(const Representation& rep) { return toledo_with_offsets(rep, {}); }

long relative_euler(const Representation& rep) {
  if (rep.kind() != RepKind::SL2) throw Error(ErrorCode::InvalidInput, "relative Euler class needs an SL2 rep");
  int g = rep.surface.genus;
  LiftedElement acc;
  for (int i = 0; i < g; ++i) {
    LiftedElement a = LiftedElement::canonical(rep.a(i));
    LiftedElement b = LiftedElement::canonical(rep.b(i));
    acc = acc * a * b * a.inverse() * b.inverse();
  }
  for (int j = 0; j < rep.surface.boundary; ++j) {
    const ConjClass& c = rep.boundary_classes[j];
    if (is_elliptic(c))
      throw Error(ErrorCode::EllipticBoundary, "boundary " + std::to_string(j + 1) + " is elliptic");
    LiftedElement l = LiftedElement::canonical(rep.c(j));
    acc = acc * l.shifted(-std::lround(l.translation(c)));
  }
  auto m = acc.central_power();
  if (!m) throw Error(ErrorCode::NonCentralProduct, "relator image is not central");
  return -kToledoSign * *m;
}

InvariantReport signature_of(const Representation& rep) {
  InvariantReport r;
  int chi = rep.surface.chi();
  int n = rep.surface.boundary;
  auto [p, q] = rep.shape();
  if (rep.kind() == RepKind::Unitary) {
    r.convention = "-2T+rho";
    r.toledo = 0;
    r.rho_total = Rho::of(Rational(0));
    int g = rep.surface.genus;
    for (int j = 0; j < n; ++j) {
      Rho x = rho_of_unitary_boundary(rep.unitary[2 * g + j]);
      r.rho_per_boundary.push_back(x);
      r.rho_total = r.rho_total + x;
    }
    double s = -2 * r.toledo + r.rho_total.value;
    r.signature_formula = static_cast<int>(std::lround(s));
    r.residual = std::abs(s - r.signature_formula);
    r.bound = milnor_wood_bound(GroupType::Upq, p, q, chi, rep.surface.genus, n);
  } else {
    r.convention = "2T+rho";
    r.toledo = toledo(rep);
    r.rho_total = Rho::of(Rational(0));
    for (const auto& c : rep.boundary_classes) {
      Rho x = rho_class(c);
      r.rho_per_boundary.push_back(x);
      r.rho_total = r.rho_total + x;
    }
    double s = 2 * r.toledo + r.rho_total.value;
    r.signature_formula = static_cast<int>(std::lround(s));
    r.residual = std::abs(s - r.signature_formula);
    r.bound = milnor_wood_bound(GroupType::Sp, rep.block_count(), 0, chi);
  }
  r.integral = r.residual < 1e-6;
  if (!r.integral)
    throw Error(ErrorCode::IntegralityFailure,
                "signature formula is " + std::to_string(r.signature_formula + r.residual) +
                    ", not an integer");
  r.within_bound = std::abs(r.signature_formula) <= r.bound;
  return r;
}

int milnor_wood_bound(GroupType group, int p, int q, int chi, int genus, int boundary) {
  int a = std::abs(chi);
  if (group == GroupType::Sp) return 2 * p * a;
  if (q == 0 && genus >= 1 && boundary >= 1) return std::max(0, boundary * p - 2);
  return (p + q) * a;
}

std::vector<int> value_set(const ValueSetSpec& s) {
  int g = s.genus;
  int n = s.boundary;
  if (g < 0 || n < 1) throw Error(ErrorCode::UnsupportedSurface, "need g >= 0 and n >= 1");
  int chi = 2 - 2 * g - n;
  switch (s.family) {
    case Family::MainSp:
      if (chi >= 0 || s.p < 1) throw Error(ErrorCode::UnsupportedSurface, "need chi < 0 and p >= 1");
      return range(2 * s.p * chi, -2 * s.p * chi);
    case Family::HyperparabolicSL2:
      if (chi >= 0) throw Error(ErrorCode::UnsupportedSurface, "need chi < 0");
      return range(2 * chi, -2 * chi);
    case Family::EllipticSL2:
      if (chi >= 0) throw Error(ErrorCode::UnsupportedSurface, "need chi < 0");
      // Closed-surface SL(2,R) reps have even Euler class, so every genus
      // lands in 2*chi mod 4.
      return range(2 * chi, -2 * chi, 4);
    case Family::Up: {
      if (s.p < 1) throw Error(ErrorCode::UnsupportedSurface, "need p >= 1");
      if (g == 0) {
        if (n < 2) throw Error(ErrorCode::UnsupportedSurface, "genus 0 needs n >= 2");
        return range(-s.p * (n - 2), s.p * (n - 2));
      }
      int top = n * s.p - 2;
      if (top < 0) return {0};
      return range(-top, top);
    }
    case Family::UpqGenus0:
      if (g != 0 || n < 2) throw Error(ErrorCode::UnsupportedSurface, "need genus 0 and n >= 2");
      return range(-(s.p + s.q) * (n - 2), (s.p + s.q) * (n - 2));
    case Family::UppTimes: {
      if (s.q < s.p || s.p < 1) throw Error(ErrorCode::UnsupportedSurface, "need 1 <= p <= q");
      if (g == 0) {
        if (n < 2) throw Error(ErrorCode::UnsupportedSurface, "genus 0 needs n >= 2");
        return range(-(s.p + s.q) * (n - 2), (s.p + s.q) * (n - 2));
      }
      if (n * (s.q - s.p) <= 1) {
        int b = 2 * s.p * (2 * g - 2 + n);
        return range(-b, b);
      }
      int b = s.p * (n + 4 * g - 4) + s.q * n - 2;
      return range(-b, b);
    }
  }
  return {};
}

std::string family_name(Family f) {
  switch (f) {
    case Family::MainSp: return "main-sp";
    case Family::HyperparabolicSL2: return "hyperparabolic";
    case Family::EllipticSL2: return "elliptic";
    case Family::Up: return "up";
    case Family::UpqGenus0: return "upq-genus0";
    case Family::UppTimes: return "upp";
  }
  return "";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::MainSp, Family::HyperparabolicSL2, Family::EllipticSL2, Family::Up,
                   Family::UpqGenus0, Family::UppTimes})
    if (family_name(f) == s) return f;
  if (s == "paraelliptic") return Family::MainSp;
  throw Error(ErrorCode::InvalidInput, "unknown family '" + s + "'");
}

}  // namespace flatsig
