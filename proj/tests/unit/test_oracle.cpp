#include <doctest.h>

#include "../support/generators.hpp"
#include "flatsig/constructions.hpp"
#include "flatsig/errors.hpp"
#include "flatsig/invariants.hpp"
#include "flatsig/oracle.hpp"

using namespace flatsig;

namespace {

Representation trivial_rep(int g, int n) {
  return make_sl2_rep(g, n, std::vector<SL2Element>(2 * g + n, SL2Element::identity()));
}

}  // namespace

TEST_CASE("untwisted complex") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}, {2, 1}}) {
    auto rep = trivial_rep(g, n);
    auto tc = build_model(rep);
    CHECK(tc.sides == 4 * g + 3 * n);
    CHECK(tc.euler_characteristic() == 2 - 2 * g - n);
    CHECK(tc.dd_defect() == 0);
    auto r = signature_direct(rep);
    CHECK(r.dim_c0 - r.dim_c1 + r.dim_c2 == 2 * (2 - 2 * g - n));
    CHECK(r.dim_h1 == 2 * (2 * g + n - 1));
    CHECK(r.signature == 0);
  }
}

TEST_CASE("odd pants through the oracle") {
  CHECK(signature_direct(phi_pants(-1)).signature == -1);
  CHECK(signature_direct(phi_pants(1)).signature == 1);
  CHECK(*exact_dd_vanishes(phi_pants(-1)));
  gen::Rng rng(1);
  CHECK_FALSE(exact_dd_vanishes(gen::random_rep(rng, 0, 3)));
}

TEST_CASE("exact d1 d0 on rational reps") {
  gen::Rng rng(51);
  for (int it = 0; it < 20; ++it) {
    auto rep = gen::random_rep(rng, gen::uniform_int(rng, 0, 2), 3, true);
    auto dd = exact_dd_vanishes(rep);
    REQUIRE(dd);
    CHECK(*dd);
  }
}

TEST_CASE("oracle agrees with the formula on random reps") {
  gen::Rng rng(52);
  for (int it = 0; it < 40; ++it) {
    int g = gen::uniform_int(rng, 0, 1);
    auto rep = gen::random_rep(rng, g, g == 0 ? 3 : gen::uniform_int(rng, 1, 2));
    CHECK(signature_direct(rep).signature == signature_of(rep).signature_formula);
  }
}

TEST_CASE("oracle is independent of the cocycle basis") {
  gen::Rng rng(53);
  for (int it = 0; it < 10; ++it) {
    auto rep = gen::random_elliptic_boundary_rep(rng, 1, 1);
    int s0 = signature_direct(rep, 0).signature;
    CHECK(signature_direct(rep, 7).signature == s0);
    CHECK(signature_direct(rep, 99).signature == s0);
  }
}

TEST_CASE("realified unitary coefficients") {
  gen::Rng rng(54);
  for (int it = 0; it < 20; ++it) {
    int p = gen::uniform_int(rng, 1, 2), n = gen::uniform_int(rng, 1, 3);
    auto rep = gen::random_up_rep(rng, 1, n, p);
    CHECK(signature_direct(rep).signature == signature_of(rep).signature_formula);
  }
  CHECK_THROWS_AS(signature_direct(upq_genus0_rep(3, 3, 2, 0)), Error);
}
