#include <doctest.h>

#include "flatsig/constructions.hpp"
#include "flatsig/errors.hpp"
#include "flatsig/invariants.hpp"
#include "flatsig/oracle.hpp"

using namespace flatsig;

namespace {

BlockSpec spec(const std::string& kind, std::map<std::string, Rational> params = {},
               bool mirror = false) {
  return with_defaults(BlockSpec{kind, std::move(params), mirror});
}

void check_block(const BlockSpec& s) {
  CAPTURE(s.to_json().dump());
  auto rep = block(s);
  CHECK(relator_exact_identity(rep));
  int label = block_label(s);
  CHECK(signature_of(rep).signature_formula == label);
  CHECK(signature_direct(rep).signature == label);
}

}  // namespace

TEST_CASE("catalog soundness: defaults and mirrors") {
  for (const auto& e : catalog()) {
    check_block(spec(e.kind));
    check_block(spec(e.kind, {}, true));
  }
}

TEST_CASE("catalog soundness: parameter sweeps") {
  for (int c : {-2, -1, 1, 3}) {
    check_block(spec("pants-par1", {{"c", Rational(c)}}));
    check_block(spec("torus-borel", {{"c", Rational(c)}, {"lambda", Rational(3)}}));
  }
  for (auto m : {Rational(-9, 2), Rational(-5), Rational(-8)}) check_block(spec("pants-2cusp", {{"m", m}}));
  for (int n : {1, 2, 4}) check_block(spec("pants-3cusp", {{"n", Rational(n)}}));
  for (auto t : {Rational(1, 3), Rational(2, 3), Rational(4, 3), Rational(5, 3)})
    check_block(spec("torus-elliptic", {{"t", t}}));
  for (auto x0 : {Rational(-13, 6), Rational(-3, 2), Rational(5, 6), Rational(-3)})
    for (int e : {-1, 1}) check_block(spec("pants-junction", {{"x0", x0}, {"e", Rational(e)}}));
  for (auto t2 : {Rational(1, 2), Rational(3, 2)})
    for (auto t3 : {Rational(1, 2), Rational(3, 2)})
      check_block(spec("pants-centralinv", {{"t2", t2}, {"t3", t3}}));
}

TEST_CASE("catalog rejects bad input") {
  CHECK_THROWS_AS(with_defaults(BlockSpec{"pants-nowhere", {}, false}), Error);
  CHECK_THROWS_AS(with_defaults(BlockSpec{"pants-par1", {{"zeta", Rational(1)}}, false}), Error);
  CHECK_THROWS_AS(block(spec("pants-2cusp", {{"m", Rational(-1)}})), Error);
  CHECK_THROWS_AS(block(spec("pants-junction", {{"x0", Rational(1, 2)}})), Error);
}

TEST_CASE("commutator tori") {
  auto plus = torus_commutator_lambda(Rational(2), 1);
  CHECK(*plus.c(0).inverse().exact_trace() == Rational(17, 4));
  auto minus = torus_commutator_lambda(Rational(3), -1);
  CHECK(*minus.c(0).exact_trace() == Rational(-46, 9));
  // Trace below -2 makes the relative Euler class +-1, so the signature is +-2.
  CHECK(std::abs(signature_of(minus).signature_formula) == 2);
  CHECK(signature_direct(minus).signature == signature_of(minus).signature_formula);
  auto wide = block(spec("torus-commutator", {{"lambda", Rational(5, 2)}, {"sign", Rational(-1)}}));
  CHECK(signature_of(wide).signature_formula == block_label(spec("torus-commutator", {{"lambda", Rational(5, 2)}, {"sign", Rational(-1)}})));
  CHECK(std::abs(signature_of(wide).signature_formula) == 2);
  CHECK(signature_of(plus).signature_formula == 0);
  CHECK_THROWS_AS(torus_commutator_boundary(Rational(-5, 2), -1), Error);
  auto solved = torus_commutator_boundary(Rational(17, 4), 1);
  CHECK(*solved.c(0).exact_trace() == Rational(17, 4));
}

TEST_CASE("central-inversion pants glue only to multiples of 4 on four holes") {
  std::vector<Representation> variants;
  for (auto t2 : {Rational(1, 2), Rational(3, 2)})
    for (auto t3 : {Rational(1, 2), Rational(3, 2)})
      for (bool mirror : {false, true})
        variants.push_back(block(spec("pants-centralinv", {{"t2", t2}, {"t3", t3}}, mirror)));
  int glued_pairs = 0, nonzero = 0;
  for (const auto& left : variants)
    for (const auto& right : variants) {
      REQUIRE(is_hyperbolic(left.boundary_classes[0]));
      auto p = rational_conjugator(left.c(0).inverse(), right.c(0));
      if (!p) continue;
      ++glued_pairs;
      auto glued = glue(rotate_boundaries(left), 2, right, 0, *p);
      int s = signature_of(glued).signature_formula;
      CHECK(s == signature_of(left).signature_formula + signature_of(right).signature_formula);
      CHECK(s % 4 == 0);
      if (s != 0) ++nonzero;
    }
  CHECK(glued_pairs > 0);
  CHECK(nonzero > 0);
}

TEST_CASE("SO(2) angle solver") {
  for (int n = 2; n <= 6; ++n) {
    for (int m = 4 - 2 * n; m <= 2 * n - 4; m += 2) {
      auto rep = so2_rep(0, n, m, So2Mode::Paired);
      CHECK(signature_of(rep).signature_formula == m);
    }
    for (int a = 1; a < n; ++a) {
      auto rep = so2_rep(0, n, 2 * n - 4 * a, So2Mode::Elliptic);
      CHECK(signature_of(rep).signature_formula == 2 * n - 4 * a);
      for (const auto& c : rep.boundary_classes) CHECK(is_elliptic(c));
    }
  }
  CHECK_THROWS_AS(so2_rep(0, 3, 1, So2Mode::Paired), Error);
}

TEST_CASE("U(p) reps realize their value set") {
  for (int p = 1; p <= 3; ++p)
    for (int n = 1; n <= 3; ++n)
      for (int m : value_set({Family::Up, p, 0, 1, n})) {
        auto rep = up_rep(1, n, p, m);
        CHECK(relator_defect(rep) < 1e-10);
        CHECK(signature_of(rep).signature_formula == m);
        if (p <= 2) CHECK(signature_direct(rep).signature == m);
      }
  CHECK_THROWS_AS(up_rep(1, 1, 2, 1), Error);
}

TEST_CASE("genus-0 diagonal U(p,q) reps") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}, {0, 2}})
    for (int n = 2; n <= 4; ++n)
      for (int m : value_set({Family::UpqGenus0, p, q, 0, n})) {
        auto rep = upq_genus0_rep(n, p, q, m);
        CHECK(signature_of(rep).signature_formula == m);
      }
}
