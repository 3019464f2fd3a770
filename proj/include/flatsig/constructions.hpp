#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatsig/rational.hpp"
#include "flatsig/surface.hpp"

namespace flatsig {

/// Mode (1): paired angles, at most one trivial boundary, all even values in
/// [4-2n, 2n-4]. Mode (2): every boundary elliptic, values 2n - 4a.
enum class So2Mode { Paired, Elliptic };

/// Boundary angles t_k (angle t_k * pi, 0 meaning trivial) for an SO(2)
/// representation on n boundaries with signature m.
std::vector<Rational> so2_angles(int n, int m, So2Mode mode,
                                 std::optional<Rational> prescribed = std::nullopt);

/// Angles with some entries fixed. Free entries avoid t = 1; at most one free
/// entry is set to 0 when allow_trivial holds.
std::optional<std::vector<Rational>> solve_so2_angles(
    const std::vector<std::optional<Rational>>& fixed, int m, bool allow_trivial);

/// SO(2) representation with identity handle images and rotation boundaries.
Representation so2_from_angles(int g, const std::vector<Rational>& t);

Representation so2_rep(int g, int n, int m, So2Mode mode,
                       std::optional<Rational> prescribed = std::nullopt);

/// The odd-signature pants: phi_- (sign -1) and phi_+ (sign +1).
Representation phi_pants(int sign);

struct BlockSpec {
  std::string kind;
  std::map<std::string, Rational> params;
  bool mirror = false;

  nlohmann::json to_json() const;
  static BlockSpec from_json(const nlohmann::json& j);
};

struct CatalogEntry {
  std::string kind;
  std::string summary;
  std::map<std::string, Rational> defaults;
};

const std::vector<CatalogEntry>& catalog();

/// Parameters merged with the catalog defaults; throws InvalidInput for an
/// unknown kind or parameter.
BlockSpec with_defaults(const BlockSpec& spec);

/// The signature the catalog promises for this instance.
int block_label(const BlockSpec& spec);

/// Instantiates a catalog block on (0,3) or (1,1).
Representation block(const BlockSpec& spec);

/// One-holed torus with A = diag(lambda, 1/lambda) and the fixed B of the
/// chosen family; tr [A,B] = 2 + sign_mode * (lambda - 1/lambda)^2.
Representation torus_commutator_lambda(const Rational& lambda, int sign_mode);

/// Same family, solving for a rational lambda > 1 hitting target_trace.
Representation torus_commutator_boundary(const Rational& target_trace, int sign_mode);

/// U(p)-valued representation on a surface of genus >= 1: boundary images are
/// diagonal tori, A_1 a cyclic shift and B_1 its twisted partner. With
/// negative_block the images live in U(0,p), the negative-definite factor.
Representation up_rep(int g, int n, int p, int m, bool negative_block = false);

/// Per-boundary angle matrix (n rows, p columns) used by up_rep.
std::vector<std::vector<Rational>> up_angles(int n, int p, int m);

/// Genus-0 representation into the diagonal torus of U(p,q).
Representation upq_genus0_rep(int n, int p, int q, int m);

}  // namespace flatsig
