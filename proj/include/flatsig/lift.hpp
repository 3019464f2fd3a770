#pragma once

#include <optional>
#include <vector>

#include "flatsig/sl2.hpp"

namespace flatsig {

/// Steps per unit of the normalized coordinate used by branch continuation.
int continuation_steps(const SL2Element& g);

/// Direction of g applied to the line at angle pi*x, as a value in [0, 1).
double line_image(const SL2Element& g, double x);

/// Canonical lift of g to the real line, normalized so that value(0) is in [0,1).
double base_lift_eval(const SL2Element& g, double x);

/// Same evaluation with an explicit step count per unit (no refinement check).
double base_lift_eval_steps(const SL2Element& g, double x, int steps);

/// An element of the universal cover: the map x -> Theta_g(x) + offset.
class LiftedElement {
 public:
  LiftedElement() = default;
  LiftedElement(SL2Element base, long offset);

  static LiftedElement canonical(const SL2Element& g) { return LiftedElement(g, 0); }
  /// The central element x -> x + 1.
  static LiftedElement center() { return LiftedElement(SL2Element::identity(), 1); }
  /// Lift with translation number 0; g must be non-elliptic.
  static LiftedElement fixed_point(const SL2Element& g);

  const SL2Element& base() const { return base_; }
  long offset() const { return offset_; }
  double theta0() const { return theta0_; }

  double eval(double x) const;
  LiftedElement operator*(const LiftedElement& o) const;
  LiftedElement inverse() const;
  LiftedElement shifted(long k) const { return LiftedElement(base_, offset_ + k, theta0_); }

  /// Translation number; uses the class of the base unless given.
  double translation() const;
  double translation(const ConjClass& c) const;

  /// The integer m with this = z^m, when the base is central.
  std::optional<long> central_power() const;

 private:
  LiftedElement(SL2Element base, long offset, double theta0)
      : base_(std::move(base)), offset_(offset), theta0_(theta0) {}

  SL2Element base_;
  long offset_ = 0;
  double theta0_ = 0;
};

/// Integer Euler cocycle Theta_{g1}(Theta_{g2}(0)) - Theta_{g1 g2}(0), with the
/// residual from rounding.
struct CocycleValue {
  long value;
  double residual;
};
CocycleValue euler_cocycle(const LiftedElement& l1, const LiftedElement& l2,
                           const LiftedElement& product_canonical);

/// Translation number by iterating the map 2^12 times.
double translation_by_iteration(const LiftedElement& l, int iterations = 4096);

/// Product of lifts left to right.
LiftedElement lifted_product(const std::vector<LiftedElement>& word);

}  // namespace flatsig
