#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatsig/lift.hpp"
#include "flatsig/surface.hpp"

namespace flatsig {

/// A rho value: exact when the class carries an exact angle.
struct Rho {
  std::optional<Rational> exact;
  double value = 0;

  static Rho of(const Rational& r) { return {r, to_double(r)}; }
  Rho operator+(const Rho& o) const;
};

Rho rho_class(const ConjClass& c);

/// Rho of a diagonal torus element of U(p,q) with angles t_k * pi.
Rational rho_torus(int p, int q, const std::vector<Rational>& t);

/// Toledo invariant of an SL(2,R) rep; blockwise sum for SL2 blocks, 0 for
/// unitary reps.
double toledo(const Representation& rep);

/// Toledo invariant with the free lifts shifted by the given central powers
/// (one per generator except the last boundary).
double toledo_with_offsets(const Representation& rep, const std::vector<long>& offsets);

/// Relative Euler class; boundary images must be non-elliptic.
long relative_euler(const Representation& rep);

struct InvariantReport {
  double toledo = 0;
  std::vector<Rho> rho_per_boundary;
  Rho rho_total;
  int signature_formula = 0;
  std::optional<int> signature_oracle;
  int bound = 0;
  double residual = 0;
  bool integral = true;
  bool within_bound = true;
  std::string convention;  // "2T+rho" or "-2T+rho"
};

InvariantReport signature_of(const Representation& rep);

enum class Family { MainSp, HyperparabolicSL2, EllipticSL2, Up, UpqGenus0, UppTimes };

struct ValueSetSpec {
  Family family = Family::MainSp;
  int p = 1;
  int q = 0;
  int genus = 0;
  int boundary = 3;
};

std::vector<int> value_set(const ValueSetSpec& spec);

enum class GroupType { Sp, Upq };

/// 2p|chi| for Sp(2p,R); (p+q)|chi| for U(p,q), refined to max{0, np-2} for
/// U(p) on surfaces of genus >= 1 when g and n are supplied.
int milnor_wood_bound(GroupType group, int p, int q, int chi, int genus = -1, int boundary = -1);

std::string family_name(Family f);
Family parse_family(const std::string& s);

}  // namespace flatsig
