#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "flatsig/errors.hpp"
#include "flatsig/sl2.hpp"
#include "flatsig/surface.hpp"
#include "flatsig/unitary.hpp"

namespace flatsig::gen {

using Rng = std::mt19937;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline SL2Element random_sl2(Rng& rng, double spread = 1.5) {
  std::normal_distribution<double> normal(0, spread);
  for (;;) {
    double a = normal(rng), b = normal(rng), c = normal(rng);
    if (std::abs(a) < 0.2) continue;
    return SL2Element::from_doubles(a, b, c, (1 + b * c) / a);
  }
}

inline Rational random_rational(Rng& rng, int span, int den) {
  return Rational(uniform_int(rng, -span * den, span * den), den);
}

inline SL2Element random_rational_sl2(Rng& rng, int den = 4) {
  for (;;) {
    Rational a = random_rational(rng, 2, den), b = random_rational(rng, 2, den),
             c = random_rational(rng, 2, den);
    if (a == 0) continue;
    return SL2Element::from_rationals(a, b, c, (1 + b * c) / a);
  }
}

inline Mat2 random_conjugator(Rng& rng) {
  auto g = random_sl2(rng, 1.0);
  return g.as_mat();
}

inline SL2Element rotation_double(double t) {
  double c = std::cos(M_PI * t), s = std::sin(M_PI * t);
  return SL2Element::from_doubles(c, -s, s, c);
}

/// Random elliptic element away from the identity and from -I.
inline SL2Element random_elliptic(Rng& rng) {
  double t = uniform(rng, 0.05, 0.95) + (uniform_int(rng, 0, 1) ? 1.0 : 0.0);
  return rotation_double(t).conjugated(random_conjugator(rng));
}

inline SL2Element commutator(const SL2Element& a, const SL2Element& b) {
  return a * b * a.inverse() * b.inverse();
}

/// Closes up the relator: the last boundary image is determined by the rest.
inline Representation close_up(int g, int n, std::vector<SL2Element> images) {
  SL2Element w = SL2Element::identity();
  for (int i = 0; i < g; ++i) w = w * commutator(images[2 * i], images[2 * i + 1]);
  for (int j = 0; j + 1 < n; ++j) w = w * images[2 * g + j];
  images.push_back(w.inverse());
  return make_sl2_rep(g, n, std::move(images));
}

inline bool unclassifiable(const Error& e) {
  return e.code() == ErrorCode::AmbiguousTrace || e.code() == ErrorCode::InvalidInput;
}

/// Generic random rep; boundary classes are hyperbolic or elliptic.
inline Representation random_rep(Rng& rng, int g, int n, bool exact = false) {
  for (;;) {
    std::vector<SL2Element> images;
    for (int k = 0; k < 2 * g + n - 1; ++k)
      images.push_back(exact ? random_rational_sl2(rng) : random_sl2(rng));
    try {
      return close_up(g, n, std::move(images));
    } catch (const Error& e) {
      if (!unclassifiable(e)) throw;
    }
  }
}

/// Random rep whose boundary images are all elliptic.
inline Representation random_elliptic_boundary_rep(Rng& rng, int g, int n) {
  for (;;) {
    std::vector<SL2Element> images;
    for (int k = 0; k < 2 * g; ++k) images.push_back(random_sl2(rng, 0.8));
    for (int j = 0; j + 1 < n; ++j) images.push_back(random_elliptic(rng));
    try {
      auto rep = close_up(g, n, std::move(images));
      if (std::abs(rep.c(n - 1).trace()) < 2 - 1e-6) return rep;
    } catch (const Error& e) {
      if (!unclassifiable(e)) throw;
    }
  }
}

/// Random U(p) rep on a genus-g surface: A_1 = D * shift, B_1 diagonal, further
/// handles trivial, boundaries diagonal with angles in (1/den) Z.
inline Representation random_up_rep(Rng& rng, int g, int n, int p, int den = 6) {
  auto angle = [&] { return Rational(uniform_int(rng, 0, 2 * den - 1), den); };
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    double phase = M_PI * uniform(rng, 0, 2);
    a(i, (i + 1) % p) = std::polar(1.0, phase);
  }
  std::vector<Rational> beta(p);
  for (auto& b : beta) b = angle();
  std::vector<UnitaryElement> images{UnitaryElement::matrix(p, 0, a),
                                     UnitaryElement::torus(p, 0, beta)};
  for (int i = 1; i < g; ++i) {
    images.push_back(UnitaryElement::identity(p, 0));
    images.push_back(UnitaryElement::identity(p, 0));
  }
  Eigen::MatrixXcd w = a * images[1].complex_matrix() * a.inverse() *
                       images[1].complex_matrix().inverse();
  for (int j = 0; j + 1 < n; ++j) {
    std::vector<Rational> t(p);
    for (auto& x : t) x = angle();
    images.push_back(UnitaryElement::torus(p, 0, t));
    w = w * images.back().complex_matrix();
  }
  std::vector<Rational> last(p);
  for (int k = 0; k < p; ++k) {
    double arg = -std::arg(w(k, k)) / M_PI;
    last[k] = mod2(Rational(static_cast<long>(std::lround(arg * den)), den));
  }
  images.push_back(UnitaryElement::torus(p, 0, last));
  return make_unitary_rep(g, n, std::move(images));
}

}  // namespace flatsig::gen
