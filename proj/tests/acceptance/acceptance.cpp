#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "../support/generators.hpp"
#include "flatsig/constructions.hpp"
#include "flatsig/invariants.hpp"
#include "flatsig/lift.hpp"
#include "flatsig/oracle.hpp"
#include "flatsig/planner.hpp"

using namespace flatsig;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::vector<std::string> problems;
  std::vector<std::string> known;  // failed clauses that are provably unattainable
  std::string summary;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 8) problems.push_back(what);
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string cell(int g, int n, int m) {
  std::ostringstream s;
  s << "(" << g << "," << n << ") m=" << m;
  return s.str();
}

std::string set_text(const std::set<int>& s) {
  std::ostringstream o;
  o << "{";
  bool first = true;
  for (int v : s) {
    o << (first ? "" : ",") << v;
    first = false;
  }
  o << "}";
  return o.str();
}

int formula(const Representation& rep) { return signature_of(rep).signature_formula; }

// Reps built while checking AC-3/4, reused by the bound and exactness checks.
std::vector<Representation> g_constructed;

const std::vector<std::pair<int, int>> kDesk{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {2, 1}};

Outcome ac1() {
  Outcome o;
  auto t0 = Clock::now();
  for (int s : {-1, 1}) {
    auto rep = phi_pants(s);
    o.require(formula(rep) == s, "formula sign(phi) != " + std::to_string(s));
    o.require(signature_direct(rep).signature == s, "oracle sign(phi) != " + std::to_string(s));
  }
  struct Row {
    ConjClass c;
    Rational rho;
  };
  std::vector<Row> table{{cls::Elliptic{Rational(1, 2)}, Rational(1)},
                         {cls::ParPosTrace{1}, Rational(-1)},
                         {cls::ParPosTrace{-1}, Rational(1)},
                         {cls::ParNegTrace{1}, Rational(0)},
                         {cls::Hyperbolic{1}, Rational(0)},
                         {cls::PlusIdentity{}, Rational(0)}};
  for (const auto& row : table) {
    auto r = rho_class(row.c);
    o.require(r.exact && *r.exact == row.rho, "rho row " + describe(row.c));
  }
  o.require(*rho_class(cls::MinusIdentity{}).exact == 0, "rho(-I)");
  o.require(*rho_class(cls::Elliptic{Rational(5, 3)}).exact == Rational(-4, 3), "rho(t=5/3)");
  double secs = seconds_since(t0);
  o.require(secs < 1, "runtime " + std::to_string(secs) + " s");
  o.summary = "sign(phi-) = -1, sign(phi+) = +1 by formula and oracle; 6 rho rows";
  return o;
}

Outcome ac2() {
  Outcome o;
  auto t0 = Clock::now();
  int instances = 0;
  for (int n = 2; n <= 6; ++n) {
    for (auto mode : {So2Mode::Elliptic, So2Mode::Paired}) {
      std::set<int> got, want;
      if (mode == So2Mode::Elliptic)
        for (int a = 1; a < n; ++a) want.insert(2 * n - 4 * a);
      else
        for (int m = 4 - 2 * n; m <= 2 * n - 4; m += 2) want.insert(m);
      for (int m = -2 * n; m <= 2 * n; ++m) {
        Representation rep;
        try {
          rep = so2_rep(0, n, m, mode);
        } catch (const Error&) {
          continue;
        }
        int f = formula(rep);
        o.require(f == m, "so2_rep signature " + std::to_string(f) + " for m " + std::to_string(m));
        o.require(signature_direct(rep).signature == f, "oracle on so2 " + cell(0, n, m));
        got.insert(f);
        ++instances;
      }
      o.require(got == want, "n=" + std::to_string(n) + " got " + set_text(got) + " want " +
                                 set_text(want));
    }
  }
  double secs = seconds_since(t0);
  o.require(secs < 30, "runtime " + std::to_string(secs) + " s");
  o.summary = std::to_string(instances) + " SO(2) instances, n = 2..6, both modes";
  return o;
}

Outcome desk_grid(BoundaryMode mode, const std::function<bool(const ConjClass&)>& allowed,
                  double limit) {
  Outcome o;
  auto t0 = Clock::now();
  int cells = 0, oracle_checked = 0;
  for (auto [g, n] : kDesk) {
    int chi = 2 - 2 * g - n;
    for (int m = 2 * chi; m <= -2 * chi; ++m) {
      ++cells;
      try {
        auto rep = execute(plan({g, n, m, mode}));
        o.require(formula(rep) == m, "signature off at " + cell(g, n, m));
        for (const auto& c : rep.boundary_classes)
          o.require(allowed(c), "boundary class " + describe(c) + " at " + cell(g, n, m));
        auto oracle = signature_direct(rep);
        ++oracle_checked;
        o.require(oracle.signature == m, "oracle " + std::to_string(oracle.signature) + " at " + cell(g, n, m));
        g_constructed.push_back(std::move(rep));
      } catch (const Error& e) {
        o.require(false, cell(g, n, m) + ": " + e.what());
      }
    }
  }
  double secs = seconds_since(t0);
  o.require(secs < limit, "runtime " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << cells << " cells realized, " << oracle_checked << " oracle-checked, " << secs << " s";
  o.summary = s.str();
  return o;
}

Outcome ac3() {
  return desk_grid(BoundaryMode::Paraelliptic, [](const ConjClass& c) { return !is_hyperbolic(c); }, 600);
}

Outcome ac4() {
  return desk_grid(
      BoundaryMode::Hyperparabolic,
      [](const ConjClass& c) { return is_hyperbolic(c) || is_parabolic(c); }, 600);
}

Outcome ac5(const std::string& cli) {
  Outcome o;
  for (int n : {3, 4}) {
    int chi = 2 - n;
    std::set<int> realized, want;
    for (int a = 0; a <= -chi; ++a) want.insert(2 * chi + 4 * a);
    for (int m = 2 * chi; m <= -2 * chi; m += 2) {
      try {
        auto rep = execute(plan({0, n, m, BoundaryMode::Elliptic}));
        for (const auto& c : rep.boundary_classes) o.require(is_elliptic(c), "non-elliptic boundary");
        o.require(signature_direct(rep).signature == m, "oracle at " + cell(0, n, m));
        realized.insert(formula(rep));
      } catch (const Error& e) {
        o.require(e.code() == ErrorCode::UnachievableValue || want.count(m) == 0,
                  cell(0, n, m) + ": " + e.what());
        o.require(want.count(m) == 0, "refused achievable " + cell(0, n, m));
      }
    }
    o.require(realized == want, "genus 0 n=" + std::to_string(n) + " realized " + set_text(realized));
  }
  if (!cli.empty()) {
    std::string cmd = "\"" + cli + "\" construct --family elliptic --surface 0,3 --m 0 >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    o.require(WIFEXITED(status) && WEXITSTATUS(status) == 2, "CLI refusal did not exit 2");
  }

  gen::Rng rng(2024);
  std::set<int> seen;
  for (int it = 0; it < 1000; ++it) {
    auto rep = gen::random_elliptic_boundary_rep(rng, 1, 1);
    int s = signature_direct(rep).signature;
    seen.insert(s);
    o.require(s == 2 || s == -2, "genus 1 n=1 oracle signature " + std::to_string(s));
  }

  std::set<int> realized, missing;
  for (int m = -6; m <= 6; m += 2) {
    try {
      auto rep = execute(plan({1, 2, m, BoundaryMode::Elliptic}));
      if (formula(rep) == m && signature_direct(rep).signature == m) realized.insert(m);
      else missing.insert(m);
    } catch (const Error&) {
      missing.insert(m);
    }
  }
  bool expected_shape = realized == std::set<int>{-4, 0, 4};
  o.require(expected_shape, "genus 1 n=2 realized " + set_text(realized));
  if (!missing.empty())
    o.known.push_back("genus 1, n = 2: even m " + set_text(missing) +
                      " not realizable (|m| <= 4 by Milnor-Wood; values are 2chi mod 4)");
  o.summary = "genus 0 sets exact with refusals; 1000 genus-1 reps in " + set_text(seen) +
              "; genus 1 n=2 realized " + set_text(realized);
  return o;
}

Outcome ac6() {
  Outcome o;
  gen::Rng rng(606);
  int odd = 0, oracle_checked = 0, parneg = 0;
  for (int it = 0; it < 1000; ++it) {
    int g = gen::uniform_int(rng, 0, 2);
    int n = gen::uniform_int(rng, g == 0 ? 3 : 1, 3);
    Representation rep;
    if (it % 4 == 0) {
      for (;;) {
        std::vector<SL2Element> images;
        for (int k = 0; k < 2 * g; ++k) images.push_back(gen::random_rational_sl2(rng));
        auto p = gen::random_rational_sl2(rng);
        images.push_back((p * SL2Element::from_rationals(-1, gen::random_rational(rng, 2, 2) + Rational(1, 7), 0, -1) * p.inverse()));
        for (int j = 1; j + 1 < n; ++j) images.push_back(gen::random_rational_sl2(rng));
        if (n == 1) images.pop_back();
        try {
          rep = gen::close_up(g, n, images);
          break;
        } catch (const Error& e) {
          if (!gen::unclassifiable(e)) throw;
        }
      }
    } else {
      rep = gen::random_rep(rng, g, n);
    }
    bool excluded = false;
    for (const auto& c : rep.boundary_classes) {
      if (std::holds_alternative<cls::ParPosTrace>(c)) excluded = true;
      if (std::holds_alternative<cls::ParNegTrace>(c)) ++parneg;
    }
    if (excluded) continue;
    auto r = signature_of(rep);
    o.require(r.integral, "non-integral signature");
    if (r.signature_formula % 2 != 0) ++odd;
    if (it % 20 == 0) {
      ++oracle_checked;
      o.require(signature_direct(rep).signature == r.signature_formula, "oracle disagrees");
    }
    g_constructed.push_back(std::move(rep));
  }
  o.require(odd == 0, std::to_string(odd) + " odd signatures");
  o.summary = "1000 reps (" + std::to_string(parneg) + " negative-trace parabolic boundaries), " +
              std::to_string(odd) + " odd, " + std::to_string(oracle_checked) + " oracle-checked";
  return o;
}

Outcome ac7() {
  Outcome o;
  for (const auto& rep : g_constructed) {
    int chi = rep.surface.chi();
    o.require(std::abs(formula(rep)) <= 2 * std::abs(chi), "Milnor-Wood violated");
  }
  gen::Rng rng(707);
  for (int it = 0; it < 200; ++it) {
    int g = gen::uniform_int(rng, 0, 2);
    auto rep = gen::random_rep(rng, g, gen::uniform_int(rng, g == 0 ? 3 : 1, 4));
    o.require(std::abs(formula(rep)) <= 2 * std::abs(rep.surface.chi()), "Milnor-Wood violated");
  }
  for (int it = 0; it < 500; ++it) {
    int p = gen::uniform_int(rng, 1, 3), n = gen::uniform_int(rng, 1, 3), g = gen::uniform_int(rng, 1, 2);
    auto rep = gen::random_up_rep(rng, g, n, p);
    int bound = std::max(0, n * p - 2);
    o.require(std::abs(formula(rep)) <= bound, "U(p) refinement violated");
  }
  o.summary = std::to_string(g_constructed.size() + 200) + " SL2 reps within 2|chi|; 500 U(p) reps within max{0,np-2}";
  return o;
}

Outcome ac8() {
  Outcome o;
  int count = 0, oracle_checked = 0;
  for (int p = 1; p <= 3; ++p)
    for (int n = 1; n <= 3; ++n) {
      std::set<int> want;
      for (int m = 2 - n * p; m <= n * p - 2; ++m) want.insert(m);
      want.insert(0);
      std::set<int> got;
      for (int m : want) {
        try {
          auto rep = up_rep(1, n, p, m);
          int f = formula(rep);
          got.insert(f);
          ++count;
          if (p <= 2) {
            ++oracle_checked;
            o.require(signature_direct(rep).signature == f, "realified oracle at p=" + std::to_string(p) + " " + cell(1, n, m));
          }
        } catch (const Error& e) {
          o.require(false, "up_rep p=" + std::to_string(p) + " " + cell(1, n, m) + ": " + e.what());
        }
      }
      o.require(got == want, "p=" + std::to_string(p) + " n=" + std::to_string(n) + " got " + set_text(got));
    }
  o.summary = std::to_string(count) + " U(p) reps, " + std::to_string(oracle_checked) + " oracle-checked";
  return o;
}

Outcome ac9() {
  Outcome o;
  gen::Rng rng(909);
  int pairs = 0, oracle_pairs = 0, involutions = 0;
  while (pairs < 100) {
    int g1 = gen::uniform_int(rng, 0, 1);
    auto left = gen::random_rep(rng, g1, g1 == 0 ? 3 : 1);
    auto h = left.c(left.surface.boundary - 1).inverse();
    auto q = gen::random_sl2(rng, 1.0);
    int g2 = gen::uniform_int(rng, 0, 1);
    std::vector<SL2Element> images;
    for (int k = 0; k < 2 * g2; ++k) images.push_back(gen::random_sl2(rng));
    images.push_back(h.conjugated(q.inverse().as_mat()));
    images.push_back(gen::random_sl2(rng));
    Representation right;
    try {
      right = gen::close_up(g2, 3, images);
    } catch (const Error& e) {
      if (!gen::unclassifiable(e)) throw;
      continue;
    }
    auto glued = glue(left, left.surface.boundary - 1, right, 0, q.as_mat());
    int sum = formula(left) + formula(right);
    o.require(formula(glued) == sum, "additivity failed");
    if (pairs % 10 == 0) {
      ++oracle_pairs;
      o.require(signature_direct(glued).signature == sum, "oracle additivity failed");
    }
    ++pairs;
    o.require(formula(involution(glued)) == -sum, "involution did not negate");
    ++involutions;
  }
  for (const auto& rep : g_constructed) {
    if (involutions >= 600) break;
    o.require(formula(involution(rep)) == -formula(rep), "involution did not negate");
    ++involutions;
  }
  o.summary = std::to_string(pairs) + " glued pairs additive (" + std::to_string(oracle_pairs) +
              " via oracle); " + std::to_string(involutions) + " involutions negate";
  return o;
}

Outcome ac10() {
  Outcome o;
  gen::Rng rng(1010);
  double worst = 0;
  for (int it = 0; it < 10000; ++it) {
    auto g1 = gen::random_sl2(rng), g2 = gen::random_sl2(rng);
    auto c = euler_cocycle(LiftedElement::canonical(g1), LiftedElement::canonical(g2),
                           LiftedElement::canonical(g1 * g2));
    worst = std::max(worst, c.residual);
  }
  o.require(worst < 1e-6, "cocycle residual " + std::to_string(worst));

  int refined = 0;
  for (int it = 0; it < 500; ++it) {
    auto g1 = gen::random_sl2(rng), g2 = gen::random_sl2(rng);
    auto g12 = g1 * g2;
    auto value = [&](int factor) {
      double inner = base_lift_eval_steps(g2, 0, factor * continuation_steps(g2));
      long k = static_cast<long>(std::floor(inner));
      double outer = base_lift_eval_steps(g1, inner - k, factor * continuation_steps(g1)) + k;
      return std::lround(outer - base_lift_eval_steps(g12, 0, factor * continuation_steps(g12)));
    };
    o.require(value(1) == value(2), "cocycle changed under refinement");
    auto l = LiftedElement::canonical(g1);
    auto c = classify(g1);
    if (!is_elliptic(c)) {
      double x = 0.3;
      double a = base_lift_eval_steps(g1, x, continuation_steps(g1));
      double b = base_lift_eval_steps(g1, x, 2 * continuation_steps(g1));
      o.require(std::abs(a - b) < 1e-9, "lift moved under refinement");
      o.require(std::lround(l.translation()) == std::lround(l.translation(c)), "translation");
    }
    ++refined;
  }

  int exact = 0;
  for (const auto& rep : g_constructed) {
    auto dd = exact_dd_vanishes(rep);
    if (!dd) continue;
    ++exact;
    o.require(*dd, "d1 d0 != 0 on a rational certificate");
  }
  o.require(exact > 0, "no rational certificates to check");
  std::ostringstream s;
  s << "max residual " << worst << " over 10^4 products; " << refined
    << " cocycles stable under 2x refinement; exact d1 d0 = 0 on " << exact << " rational reps";
  o.summary = s.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  struct Named {
    const char* id;
    std::function<Outcome()> run;
  };
  std::vector<Named> all{{"AC-1", ac1},
                         {"AC-2", ac2},
                         {"AC-3", ac3},
                         {"AC-4", ac4},
                         {"AC-5", [&] { return ac5(cli); }},
                         {"AC-6", ac6},
                         {"AC-7", ac7},
                         {"AC-8", ac8},
                         {"AC-9", ac9},
                         {"AC-10", ac10}};
  bool unexpected = false;
  std::vector<std::string> known;
  for (const auto& c : all) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("threw ") + e.what());
    }
    bool pass = o.ok && o.known.empty();
    std::cout << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << o.summary << " ["
              << seconds_since(t0) << " s]\n";
    for (const auto& p : o.problems) std::cout << "    problem: " << p << "\n";
    for (const auto& k : o.known) {
      std::cout << "    known unattainable: " << k << "\n";
      known.push_back(std::string(c.id) + ": " + k);
    }
    if (!o.ok) unexpected = true;
  }
  if (!known.empty()) {
    std::cout << "known-unattainable clauses (" << known.size() << "):\n";
    for (const auto& k : known) std::cout << "  " << k << "\n";
  }
  std::cout << (unexpected ? "RESULT: unexpected failures\n" : "RESULT: all failures are known-unattainable clauses\n");
  return unexpected ? 1 : 0;
}
