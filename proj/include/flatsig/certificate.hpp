#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "flatsig/invariants.hpp"
#include "flatsig/oracle.hpp"
#include "flatsig/planner.hpp"
#include "flatsig/surface.hpp"

namespace flatsig {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const SL2Element& g);
SL2Element sl2_from_json(const nlohmann::json& j);

nlohmann::json to_json(const UnitaryElement& g);
UnitaryElement unitary_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConjClass& c);
ConjClass class_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Representation& rep);
Representation representation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Rho& r);
nlohmann::json to_json(const InvariantReport& r);
nlohmann::json to_json(const OracleResult& r);

/// Self-contained record of a realization: target, plan steps, the factor
/// representations and their invariants.
struct Certificate {
  std::optional<PlanTarget> target;
  nlohmann::json steps = nlohmann::json::array();
  std::vector<Representation> factors;
  std::vector<InvariantReport> reports;
  std::vector<OracleResult> oracle;

  nlohmann::json to_json() const;
  static Certificate from_json(const nlohmann::json& j);
};

/// Plans, executes and certifies a target; oracle results are added on request.
Certificate certify(const PlanTarget& target, bool with_oracle, unsigned seed = 0);

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<InvariantReport> reports;
  std::vector<OracleResult> oracle;
  /// Factors beyond the oracle's coefficient-dimension cap.
  int oracle_skipped = 0;
};

/// Recomputes relators, classes and invariants from the stored matrices and
/// compares them with the recorded values and the target.
VerifyOutcome verify(const Certificate& cert, bool with_oracle, unsigned seed = 0);

}  // namespace flatsig
