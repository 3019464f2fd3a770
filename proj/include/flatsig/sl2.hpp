#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "flatsig/rational.hpp"

namespace flatsig {

/// Tolerance band around |trace| = 2 inside which numeric-only elements
/// cannot be classified.
inline constexpr double kClassEps = 1e-9;

/// A real 2x2 matrix with optional exact rational entries. Used for
/// conjugators, which only need det > 0.
struct Mat2 {
  std::array<double, 4> v{1, 0, 0, 1};  // a, b, c, d (row major)
  std::optional<std::array<Rational, 4>> q;

  static Mat2 from_doubles(double a, double b, double c, double d);
  static Mat2 from_rationals(const Rational& a, const Rational& b, const Rational& c,
                             const Rational& d);
  static Mat2 identity();

  double det() const { return v[0] * v[3] - v[1] * v[2]; }
  Mat2 inverse() const;
  Mat2 operator*(const Mat2& o) const;
  bool exact() const { return q.has_value(); }
};

struct RationalEntries {
  std::array<Rational, 4> e;
  bool operator==(const RationalEntries&) const = default;
};

/// The rotation matrix k(t*pi), t reduced to [0, 2).
struct RotationByPi {
  Rational t;
  bool operator==(const RotationByPi&) const = default;
};

using ExactTag = std::variant<std::monostate, RationalEntries, RotationByPi>;

/// An element of SL(2,R): double entries plus an optional exact annotation
/// that takes precedence in every classification decision.
class SL2Element {
 public:
  SL2Element() : m_{1, 0, 0, 1}, tag_(RationalEntries{{1, 0, 0, 1}}) {}

  static SL2Element from_doubles(double a, double b, double c, double d);
  static SL2Element from_rationals(const Rational& a, const Rational& b, const Rational& c,
                                   const Rational& d);
  /// k(t*pi) = (cos, -sin; sin, cos).
  static SL2Element rotation(const Rational& t);
  static SL2Element identity() { return SL2Element{}; }
  static SL2Element from_mat(const Mat2& m);

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  const std::array<double, 4>& entries() const { return m_; }
  const ExactTag& tag() const { return tag_; }

  std::optional<std::array<Rational, 4>> rational_entries() const;
  std::optional<Rational> rotation_t() const;
  bool exact() const { return !std::holds_alternative<std::monostate>(tag_); }

  double trace() const { return m_[0] + m_[3]; }
  std::optional<Rational> exact_trace() const;

  SL2Element operator*(const SL2Element& o) const;
  SL2Element inverse() const;
  SL2Element negated() const;
  /// p * g * p^-1 for any p with det(p) > 0.
  SL2Element conjugated(const Mat2& p) const;
  Mat2 as_mat() const;

  /// Max entrywise distance.
  double distance(const SL2Element& o) const;

  /// Drops the exact annotation.
  SL2Element numeric() const;

 private:
  std::array<double, 4> m_;
  ExactTag tag_;
};

namespace cls {
struct Elliptic {
  // Angle theta = t*pi; exact when derivable from an exact tag.
  std::variant<Rational, double> t;
  double value() const;
  std::optional<Rational> exact() const;
  bool operator==(const Elliptic& o) const;
};
struct ParPosTrace {
  int mu_sign;
  bool operator==(const ParPosTrace&) const = default;
};
struct ParNegTrace {
  int mu_sign;
  bool operator==(const ParNegTrace&) const = default;
};
struct Hyperbolic {
  int trace_sign;
  bool operator==(const Hyperbolic&) const = default;
};
struct PlusIdentity {
  bool operator==(const PlusIdentity&) const = default;
};
struct MinusIdentity {
  bool operator==(const MinusIdentity&) const = default;
};
}  // namespace cls

using ConjClass = std::variant<cls::Elliptic, cls::ParPosTrace, cls::ParNegTrace,
                               cls::Hyperbolic, cls::PlusIdentity, cls::MinusIdentity>;

ConjClass classify(const SL2Element& g);

/// Class of g^-1 given the class of g.
ConjClass inverse_class(const ConjClass& c);

bool is_elliptic(const ConjClass& c);
bool is_central(const ConjClass& c);
bool is_hyperbolic(const ConjClass& c);
bool is_parabolic(const ConjClass& c);
std::string describe(const ConjClass& c);

struct EllipticAngle {
  double theta;               // in (0, 2*pi)
  std::optional<Rational> t;  // theta / pi when exact
};

EllipticAngle elliptic_angle(const SL2Element& g);

/// The involution-conjugate diag(1,-1) g diag(1,-1).
SL2Element mirrored(const SL2Element& g);

/// Rational P with det P > 0 and m1 = P m2 P^-1, when one exists.
/// Both inputs must carry rational entries and be non-central.
std::optional<Mat2> rational_conjugator(const SL2Element& m1, const SL2Element& m2);

/// Numeric P in SL(2,R) with m1 = P m2 P^-1 for elliptic elements of the same
/// class.
std::optional<Mat2> numeric_conjugator(const SL2Element& m1, const SL2Element& m2);

}  // namespace flatsig
