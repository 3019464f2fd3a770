#include "flatsig/lift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatsig/errors.hpp"

namespace flatsig {

namespace {

// Continuation of the line map from 0 to x in [0,1), starting at theta0.
double continue_to(const SL2Element& g, double theta0, double frac, int steps) {
  int k_max = std::max(1, static_cast<int>(std::ceil(frac * steps)));
  double prev = theta0;
  for (int k = 1; k <= k_max; ++k) {
    double raw = line_image(g, frac * k / k_max);
    prev = raw + std::round(prev - raw);
  }
  return prev;
}

double eval_with(const SL2Element& g, double theta0, double x, int steps) {
  double fl = std::floor(x);
  double frac = x - fl;
  if (frac == 0) return theta0 + fl;
  return continue_to(g, theta0, frac, steps) + fl;
}

// Closed form of the lift on (0,1): Theta(x) - theta0 lies in (0,1) and
// crosses 1/2 exactly at the preimage of theta0 + 1/2, which settles values
// that round across an integer.
double eval_checked(const SL2Element& g, double theta0, double x) {
  double fl = std::floor(x);
  double frac = x - fl;
  if (frac == 0) return theta0 + fl;
  double d = line_image(g, frac) - theta0;
  d -= std::floor(d);
  double split = line_image(g.inverse(), theta0 + 0.5);
  if (frac < split) {
    if (d > 0.5) d = d > 0.75 ? 0 : 0.5;
  } else if (d < 0.5) {
    d = d < 0.25 ? 1 : 0.5;
  }
  return theta0 + d + fl;
}

bool near_central(const SL2Element& g) {
  return std::abs(g.b()) < 1e-8 && std::abs(g.c()) < 1e-8 && std::abs(g.a() - g.d()) < 1e-8;
}

}  // namespace

int continuation_steps(const SL2Element& g) {
  double f2 = g.a() * g.a() + g.b() * g.b() + g.c() * g.c() + g.d() * g.d();
  double s2 = (f2 + std::sqrt(std::max(0.0, f2 * f2 - 4))) / 2;
  return static_cast<int>(std::ceil(8 * s2)) + 8;
}

double line_image(const SL2Element& g, double x) {
  long double phi = static_cast<long double>(x) * std::numbers::pi_v<long double>;
  long double c = std::cos(phi);
  long double s = std::sin(phi);
  long double y = static_cast<long double>(g.c()) * c + static_cast<long double>(g.d()) * s;
  long double w = static_cast<long double>(g.a()) * c + static_cast<long double>(g.b()) * s;
  long double r = std::atan2(y, w) / std::numbers::pi_v<long double>;
  r -= std::floor(r);
  if (r >= 1) r -= 1;
  return static_cast<double>(r);
}

double base_lift_eval(const SL2Element& g, double x) {
  return eval_checked(g, line_image(g, 0), x);
}

double base_lift_eval_steps(const SL2Element& g, double x, int steps) {
  return eval_with(g, line_image(g, 0), x, steps);
}

LiftedElement::LiftedElement(SL2Element base, long offset)
    : base_(std::move(base)), offset_(offset) {
  theta0_ = line_image(base_, 0);
}

LiftedElement LiftedElement::fixed_point(const SL2Element& g) {
  ConjClass c = classify(g);
  if (is_elliptic(c)) throw Error(ErrorCode::EllipticBoundary, "no fixed-point lift for " + describe(c));
  LiftedElement l = canonical(g);
  long k = std::lround(l.translation(c));
  return l.shifted(-k);
}

double LiftedElement::eval(double x) const { return eval_checked(base_, theta0_, x) + offset_; }

CocycleValue euler_cocycle(const LiftedElement& l1, const LiftedElement& l2,
                           const LiftedElement& product_canonical) {
  double inner = eval_checked(l2.base(), l2.theta0(), 0);
  double outer = eval_checked(l1.base(), l1.theta0(), inner);
  double raw = outer - product_canonical.theta0();
  double r = std::round(raw);
  return {static_cast<long>(r), std::abs(raw - r)};
}

LiftedElement LiftedElement::operator*(const LiftedElement& o) const {
  LiftedElement pc = canonical(base_ * o.base_);
  CocycleValue tau = euler_cocycle(*this, o, pc);
  if (tau.residual > 1e-3 || tau.value < 0 || tau.value > 1)
    throw Error(ErrorCode::NonIntegerCocycle,
                "cocycle residual " + std::to_string(tau.residual));
  return pc.shifted(offset_ + o.offset_ + tau.value);
}

LiftedElement LiftedElement::inverse() const {
  LiftedElement inv = canonical(base_.inverse());
  double raw = eval_checked(base_, theta0_, eval_checked(inv.base_, inv.theta0_, 0));
  double r = std::round(raw);
  if (std::abs(raw - r) > 1e-3)
    throw Error(ErrorCode::NonIntegerCocycle, "inverse residual " + std::to_string(raw - r));
  return inv.shifted(-offset_ - static_cast<long>(r));
}

double LiftedElement::translation() const { return translation(classify(base_)); }

double LiftedElement::translation(const ConjClass& c) const {
  if (is_central(c)) return theta0_ + offset_;
  if (!is_elliptic(c)) {
    // Any fixed direction x has Theta(x) = x + translation.
    double a = base_.a(), b = base_.b(), cc = base_.c(), d = base_.d();
    double tr = a + d;
    double lam = (tr + (tr >= 0 ? 1 : -1) * std::sqrt(std::max(0.0, tr * tr - 4))) / 2;
    double vx = b, vy = lam - a;
    if (std::abs(vx) + std::abs(vy) < 1e-300 || std::hypot(lam - d, cc) > std::hypot(vx, vy)) {
      vx = lam - d;
      vy = cc;
    }
    double x = std::atan2(vy, vx) / std::numbers::pi;
    x -= std::floor(x);
    if (x >= 1) x -= 1;
    return std::round(eval(x) - x);
  }
  const int steps = 4096;
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < steps; ++k) {
    double x = static_cast<double>(k) / steps;
    double disp = eval(x) - x;
    lo = std::min(lo, disp);
    hi = std::max(hi, disp);
  }
  double mid = (lo + hi) / 2;
  double base = std::get<cls::Elliptic>(c).value();
  return base + std::round(mid - base);
}

std::optional<long> LiftedElement::central_power() const {
  if (!near_central(base_)) return std::nullopt;
  return std::lround(theta0_ + offset_);
}

double translation_by_iteration(const LiftedElement& l, int iterations) {
  double x = 0;
  for (int i = 0; i < iterations; ++i) x = l.eval(x);
  return x / iterations;
}

LiftedElement lifted_product(const std::vector<LiftedElement>& word) {
  LiftedElement acc;
  for (const auto& l : word) acc = acc * l;
  return acc;
}

}  // namespace flatsig
