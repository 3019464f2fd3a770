#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "flatsig/invariants.hpp"
#include "flatsig/surface.hpp"

namespace flatsig {

enum class BoundaryMode { Paraelliptic, Hyperparabolic, Elliptic, So2, Up, UpqGenus0, Upp };

std::string mode_name(BoundaryMode m);
BoundaryMode parse_mode(const std::string& s);
/// The value-set family whose values the mode realizes.
ValueSetSpec mode_value_spec(BoundaryMode mode, int g, int n, int p, int q);

struct PlanTarget {
  int genus = 0;
  int boundary = 3;
  int m = 0;
  BoundaryMode mode = BoundaryMode::Paraelliptic;
  int p = 1;
  int q = 0;

  nlohmann::json to_json() const;
  static PlanTarget from_json(const nlohmann::json& j);
};

/// Steps run on a stack of representations. Each step is a JSON object with
/// an "op" key: block, so2, phi, up, upq, glue (second-from-top along its last
/// boundary with top along its first), swap, to_front, to_end, hurwitz,
/// rotate, involution, direct_sum. Whatever remains on the stack forms the
/// factors of the result.
struct AssemblyPlan {
  PlanTarget target;
  nlohmann::json steps = nlohmann::json::array();

  nlohmann::json to_json() const;
  static AssemblyPlan from_json(const nlohmann::json& j);
};

/// A representation into a product group, one factor per entry; the
/// signature is additive over factors.
struct Realization {
  std::vector<Representation> factors;

  int signature() const;
};

/// Whether every boundary image has the class the mode allows.
bool boundary_mode_ok(const Representation& rep, BoundaryMode mode);

AssemblyPlan plan(const PlanTarget& target);

/// C_j -> -C_j on an even number of boundaries (a sign-character twist).
Representation negate_boundaries(const Representation& rep, const std::vector<int>& indices);

/// Conjugates an SL(2,R) rep by an upper-triangular matrix (rational when
/// the rep is exact) that reduces the total size of the generator images.
Representation balanced(const Representation& rep);

/// Runs plan steps without certification; the final stack, bottom first.
std::vector<Representation> run_steps(const nlohmann::json& steps);

/// Runs the steps and certifies signature_of = m on the result.
Realization execute_factors(const AssemblyPlan& plan);

/// Single-factor execution; throws InvalidInput for product targets.
Representation execute(const AssemblyPlan& plan);

}  // namespace flatsig
