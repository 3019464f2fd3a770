#include <doctest.h>

#include "../support/generators.hpp"
#include "flatsig/constructions.hpp"
#include "flatsig/errors.hpp"
#include "flatsig/invariants.hpp"
#include "flatsig/lift.hpp"
#include "flatsig/oracle.hpp"
#include "flatsig/planner.hpp"

using namespace flatsig;

TEST_CASE("random elliptic elements") {
  gen::Rng rng(61);
  for (int it = 0; it < 10000; ++it) {
    auto e = gen::random_elliptic(rng);
    REQUIRE(e.trace() * e.trace() < 4);
    CHECK(e.b() * e.c() < 0);
    CHECK(e.c() != 0);
    if (it % 10 == 0) {
      auto moved = e.conjugated(gen::random_conjugator(rng));
      CHECK(std::abs(elliptic_angle(moved).theta - elliptic_angle(e).theta) < 1e-8);
    }
  }
}

TEST_CASE("classification is conjugation invariant") {
  gen::Rng rng(62);
  for (int it = 0; it < 500; ++it) {
    auto g = gen::random_rational_sl2(rng);
    auto p = gen::random_rational_sl2(rng).as_mat();
    auto moved = g.conjugated(p);
    CHECK(moved.exact());
    CHECK(classify(moved) == classify(g));
  }
  for (auto [t, s] : std::vector<std::pair<Rational, Rational>>{{Rational(3, 2), Rational(3, 4)},
                                                                {Rational(1, 5), Rational(9, 5)}}) {
    auto r = SL2Element::rotation(t) * SL2Element::rotation(s);
    REQUIRE(r.rotation_t());
    CHECK(*r.rotation_t() == mod2(t + s));
  }
}

TEST_CASE("cocycle takes values 0 and 1") {
  gen::Rng rng(63);
  for (int it = 0; it < 10000; ++it) {
    auto g1 = gen::random_sl2(rng), g2 = gen::random_sl2(rng);
    auto c = euler_cocycle(LiftedElement::canonical(g1), LiftedElement::canonical(g2),
                           LiftedElement::canonical(g1 * g2));
    CHECK((c.value == 0 || c.value == 1));
    CHECK(c.residual < 1e-6);
  }
}

TEST_CASE("lifted products associate") {
  gen::Rng rng(64);
  for (int it = 0; it < 1000; ++it) {
    auto l1 = LiftedElement::canonical(gen::random_sl2(rng)).shifted(gen::uniform_int(rng, -1, 1));
    auto l2 = LiftedElement::canonical(gen::random_sl2(rng));
    auto l3 = LiftedElement::canonical(gen::random_sl2(rng)).shifted(gen::uniform_int(rng, -1, 1));
    auto left = (l1 * l2) * l3, right = l1 * (l2 * l3);
    CHECK(left.offset() == right.offset());
    CHECK(left.base().distance(right.base()) < 1e-9);
  }
}

TEST_CASE("relative Euler class equals Toledo on non-elliptic boundaries") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {2, 1}}) {
    int chi = 2 - 2 * g - n;
    for (int m = 2 * chi; m <= -2 * chi; ++m) {
      auto rep = execute(plan({g, n, m, BoundaryMode::Hyperparabolic}));
      long e = relative_euler(rep);
      CHECK(toledo(rep) == doctest::Approx(static_cast<double>(e)));
      CHECK(std::abs(e) <= std::abs(chi));
    }
  }
  gen::Rng rng(65);
  for (int it = 0; it < 200; ++it) {
    auto rep = gen::random_rep(rng, gen::uniform_int(rng, 0, 1), 3);
    CHECK(std::abs(toledo(rep)) <= std::abs(rep.surface.chi()) + 1e-8);
  }
}

TEST_CASE("direct sums add signatures") {
  gen::Rng rng(66);
  for (int it = 0; it < 30; ++it) {
    int g = gen::uniform_int(rng, 0, 1), n = g == 0 ? 3 : 2;
    std::vector<Representation> parts;
    int sum = 0;
    for (int k = 0; k < gen::uniform_int(rng, 2, 3); ++k) {
      parts.push_back(gen::random_rep(rng, g, n));
      sum += signature_of(parts.back()).signature_formula;
    }
    CHECK(signature_of(direct_sum_rep(parts)).signature_formula == sum);
  }
}

TEST_CASE("value sets are symmetric and bounded") {
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= 4; ++n) {
      int chi = 2 - 2 * g - n;
      if (chi >= 0) continue;
      for (int p = 1; p <= 3; ++p) {
        std::vector<std::pair<ValueSetSpec, int>> specs{
            {{Family::MainSp, p, 0, g, n}, milnor_wood_bound(GroupType::Sp, p, 0, chi)},
            {{Family::Up, p, 0, g, n}, milnor_wood_bound(GroupType::Upq, p, 0, chi, g, n)},
            {{Family::UppTimes, p, p + 1, g, n}, milnor_wood_bound(GroupType::Upq, p, p + 1, chi)}};
        if (p == 1) {
          specs.push_back({{Family::HyperparabolicSL2, 1, 0, g, n}, 2 * -chi});
          specs.push_back({{Family::EllipticSL2, 1, 0, g, n}, 2 * -chi});
        }
        if (g == 0) specs.push_back({{Family::UpqGenus0, p, 1, g, n}, milnor_wood_bound(GroupType::Upq, p, 1, chi)});
        for (const auto& [s, bound] : specs) {
          auto v = value_set(s);
          CAPTURE(family_name(s.family));
          for (int m : v) {
            CHECK(std::abs(m) <= bound);
            CHECK(std::binary_search(v.begin(), v.end(), -m));
          }
        }
      }
    }
}

TEST_CASE("signatures are gauge invariant") {
  gen::Rng rng(67);
  for (int it = 0; it < 20; ++it) {
    auto rep = gen::random_rep(rng, gen::uniform_int(rng, 0, 1), 3, true);
    auto moved = conjugate_rep(rep, gen::random_rational_sl2(rng).as_mat());
    CHECK(signature_of(moved).signature_formula == signature_of(rep).signature_formula);
    CHECK(signature_direct(moved).signature == signature_direct(rep).signature);
  }
}

TEST_CASE("gluing exact reps") {
  gen::Rng rng(68);
  int glued_count = 0;
  for (int it = 0; it < 40 && glued_count < 15; ++it) {
    auto left = gen::random_rep(rng, gen::uniform_int(rng, 0, 1), 3, true);
    auto h = left.c(2).inverse();
    std::vector<SL2Element> images{h, gen::random_rational_sl2(rng)};
    Representation right;
    try {
      right = gen::close_up(0, 3, images);
    } catch (const Error& e) {
      if (!gen::unclassifiable(e)) throw;
      continue;
    }
    auto glued = glue(left, 2, right, 0, Mat2::identity());
    CHECK(relator_exact_identity(glued));
    CHECK(glued.surface.chi() == left.surface.chi() + right.surface.chi());
    CHECK(signature_of(glued).signature_formula ==
          signature_of(left).signature_formula + signature_of(right).signature_formula);
    ++glued_count;
  }
  CHECK(glued_count >= 15);
}

TEST_CASE("paraelliptic outputs have traces in [-2,2]") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {2, 1}}) {
    int chi = 2 - 2 * g - n;
    for (int m = 2 * chi; m <= -2 * chi; ++m) {
      auto rep = execute(plan({g, n, m, BoundaryMode::Paraelliptic}));
      for (int j = 0; j < n; ++j) {
        auto tr = rep.c(j).exact_trace();
        if (tr) CHECK(abs(*tr) <= 2);
        else CHECK(std::abs(rep.c(j).trace()) <= 2 + 1e-9);
      }
    }
  }
}

TEST_CASE("oracle agrees on perturbed planner outputs") {
  gen::Rng rng(69);
  int checked = 0;
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
    int chi = 2 - 2 * g - n;
    for (int m = 2 * chi; m <= -2 * chi; ++m) {
      auto rep = execute(plan({g, n, m, BoundaryMode::Paraelliptic}));
      for (int k = 0; k < 15; ++k) {
        std::vector<SL2Element> images(rep.sl2.begin(), rep.sl2.end() - 1);
        for (auto& x : images) {
          double eps = 1e-3;
          auto p = Mat2::from_doubles(1, eps * gen::uniform(rng, -1, 1), eps * gen::uniform(rng, -1, 1), 1);
          x = x.numeric().conjugated(p);
        }
        Representation moved;
        try {
          moved = gen::close_up(g, n, images);
        } catch (const Error& e) {
          if (!gen::unclassifiable(e)) throw;
          continue;
        }
        auto r = signature_of(moved);
        auto o = signature_direct(moved);
        CHECK(o.signature == r.signature_formula);
        CHECK(std::abs(o.signature) <= 2 * std::abs(chi));
        CHECK((o.form - o.form.transpose()).norm() <= 1e-9 * std::max(1.0, o.form.norm()));
        ++checked;
      }
    }
  }
  CHECK(checked >= 200);
}
