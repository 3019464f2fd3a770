#include "flatsig/planner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "flatsig/constructions.hpp"
#include "flatsig/errors.hpp"

namespace flatsig {

using nlohmann::json;

std::string mode_name(BoundaryMode m) {
  switch (m) {
    case BoundaryMode::Paraelliptic: return "paraelliptic";
    case BoundaryMode::Hyperparabolic: return "hyperparabolic";
    case BoundaryMode::Elliptic: return "elliptic";
    case BoundaryMode::So2: return "so2";
    case BoundaryMode::Up: return "up";
    case BoundaryMode::UpqGenus0: return "upq-genus0";
    case BoundaryMode::Upp: return "upp";
  }
  return "";
}

BoundaryMode parse_mode(const std::string& s) {
  for (auto m : {BoundaryMode::Paraelliptic, BoundaryMode::Hyperparabolic, BoundaryMode::Elliptic,
                 BoundaryMode::So2, BoundaryMode::Up, BoundaryMode::UpqGenus0, BoundaryMode::Upp})
    if (mode_name(m) == s) return m;
  throw Error(ErrorCode::InvalidInput, "unknown boundary mode '" + s + "'");
}

ValueSetSpec mode_value_spec(BoundaryMode mode, int g, int n, int p, int q) {
  ValueSetSpec s;
  s.genus = g;
  s.boundary = n;
  s.p = p;
  s.q = q;
  switch (mode) {
    case BoundaryMode::Paraelliptic: s.family = Family::MainSp; s.p = 1; s.q = 0; break;
    case BoundaryMode::Hyperparabolic: s.family = Family::HyperparabolicSL2; break;
    case BoundaryMode::Elliptic: s.family = Family::EllipticSL2; break;
    case BoundaryMode::Up: s.family = Family::Up; break;
    case BoundaryMode::UpqGenus0: s.family = Family::UpqGenus0; break;
    case BoundaryMode::Upp: s.family = Family::UppTimes; break;
    case BoundaryMode::So2:
      throw Error(ErrorCode::InvalidInput, "so2 mode has no value-set family");
  }
  return s;
}

json PlanTarget::to_json() const {
  json j = {{"genus", genus}, {"boundary", boundary}, {"m", m}, {"mode", mode_name(mode)}};
  if (mode == BoundaryMode::Up || mode == BoundaryMode::UpqGenus0 || mode == BoundaryMode::Upp) {
    j["p"] = p;
    j["q"] = q;
  }
  return j;
}

PlanTarget PlanTarget::from_json(const json& j) {
  PlanTarget t;
  t.genus = j.at("genus").get<int>();
  t.boundary = j.at("boundary").get<int>();
  t.m = j.at("m").get<int>();
  t.mode = parse_mode(j.at("mode").get<std::string>());
  t.p = j.value("p", 1);
  t.q = j.value("q", 0);
  return t;
}

json AssemblyPlan::to_json() const { return {{"target", target.to_json()}, {"steps", steps}}; }

AssemblyPlan AssemblyPlan::from_json(const json& j) {
  return {PlanTarget::from_json(j.at("target")), j.at("steps")};
}

int Realization::signature() const {
  int total = 0;
  for (const auto& f : factors) total += signature_of(f).signature_formula;
  return total;
}

namespace {

bool class_allowed(const ConjClass& c, BoundaryMode mode) {
  switch (mode) {
    case BoundaryMode::Paraelliptic: return !is_hyperbolic(c);
    case BoundaryMode::Hyperparabolic: return is_hyperbolic(c) || is_parabolic(c);
    case BoundaryMode::Elliptic: return is_elliptic(c);
    case BoundaryMode::So2:
      return is_elliptic(c) || std::holds_alternative<cls::PlusIdentity>(c);
    default: return true;
  }
}

std::optional<Rational> exact_angle(const ConjClass& c) {
  if (auto e = std::get_if<cls::Elliptic>(&c)) return e->exact();
  if (std::holds_alternative<cls::PlusIdentity>(c)) return Rational(0);
  return std::nullopt;
}

json rational_list(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(format_rational(r));
  return a;
}

std::vector<Rational> parse_rational_list(const json& a) {
  std::vector<Rational> v;
  for (const auto& x : a) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}

json op(const std::string& name) { return {{"op", name}}; }

json block_op(const BlockSpec& spec) { return {{"op", "block"}, {"spec", spec.to_json()}}; }

Representation glue_top(const Representation& rep1, const Representation& rep2) {
  if (rep1.kind() != RepKind::SL2 || rep2.kind() != RepKind::SL2)
    throw Error(ErrorCode::InvalidInput, "glue needs SL(2,R) representations");
  const auto& last = rep1.c(rep1.surface.boundary - 1);
  const auto& first = rep2.c(0);
  auto target = last.inverse();
  std::optional<Mat2> conj;
  if (target.rational_entries() && first.rational_entries())
    conj = rational_conjugator(target, first);
  if (!conj) conj = numeric_conjugator(target, first);
  if (conj && !is_elliptic(classify(first))) {
    // Twisting by powers of the glued element keeps the entries small.
    auto size = [](const Mat2& m) {
      return (m.v[0] * m.v[0] + m.v[1] * m.v[1] + m.v[2] * m.v[2] + m.v[3] * m.v[3]) / m.det();
    };
    Mat2 step = first.as_mat();
    for (Mat2 dir : {step, first.inverse().as_mat()}) {
      Mat2 cand = *conj;
      for (int k = 0; k < 8; ++k) {
        Mat2 next = cand * dir;
        if (size(next) >= size(*conj)) break;
        conj = next;
        cand = next;
      }
    }
  }
  if (!conj)
    throw Error(ErrorCode::HolonomyMismatch, "no conjugator between " +
                                                 describe(classify(target)) + " and " +
                                                 describe(classify(first)));
  return glue(rep1, rep1.surface.boundary - 1, rep2, 0, *conj);
}

}  // namespace

// Twists by a sign character: C_j -> -C_j for an even number of boundaries.
Representation negate_boundaries(const Representation& rep, const std::vector<int>& indices) {
  if (rep.kind() != RepKind::SL2) throw Error(ErrorCode::InvalidInput, "negate needs SL(2,R)");
  if (indices.size() % 2 != 0)
    throw Error(ErrorCode::InvalidInput, "negate needs an even number of boundaries");
  auto images = rep.sl2;
  for (int j : indices) {
    if (j < 0 || j >= rep.surface.boundary)
      throw Error(ErrorCode::InvalidInput, "negate index out of range");
    auto& img = images[2 * rep.surface.genus + j];
    img = img.negated();
  }
  return make_sl2_rep(rep.surface.genus, rep.surface.boundary, std::move(images), {},
                      {{"op", "negate"}, {"indices", indices}, {"of", rep.provenance}});
}

namespace {

double total_size(const std::vector<SL2Element>& images, double a, double b) {
  // P g P^-1 for P = [[a, b], [0, 1/a]].
  double sum = 0;
  for (const auto& g : images) {
    double pa = a * g.a() + b * g.c(), pb = a * g.b() + b * g.d();
    double pc = g.c() / a, pd = g.d() / a;
    double na = pa / a, nb = pb * a - pa * b, nc = pc / a, nd = pd * a - pc * b;
    sum += na * na + nb * nb + nc * nc + nd * nd;
  }
  return sum;
}

Rational dyadic(double x) { return Rational(static_cast<long long>(std::llround(x * 64)), 64); }

}  // namespace

Representation balanced(const Representation& rep) {
  if (rep.kind() != RepKind::SL2) throw Error(ErrorCode::InvalidInput, "balance needs SL(2,R)");
  double la = 0, b = 0;
  auto f = [&](double l, double bb) { return total_size(rep.sl2, std::exp(l), bb); };
  double best = f(la, b);
  double step = 1;
  while (step > 1e-4) {
    bool moved = false;
    for (auto [dl, db] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
      double v = f(la + dl, b + db);
      if (v < best) {
        best = v;
        la += dl;
        b += db;
        moved = true;
        break;
      }
    }
    if (!moved) step /= 2;
  }
  bool exact = std::all_of(rep.sl2.begin(), rep.sl2.end(),
                           [](const SL2Element& g) { return g.rational_entries().has_value(); });
  Mat2 conj;
  if (exact) {
    Rational a = std::max(dyadic(std::exp(la)), Rational(1, 64));
    conj = Mat2::from_rationals(a, dyadic(b), 0, 1 / a);
  } else {
    conj = Mat2::from_doubles(std::exp(la), b, 0, std::exp(-la));
  }
  auto out = conjugate_rep(rep, conj);
  out.provenance = {{"op", "balance"}, {"of", rep.provenance}};
  return out;
}

std::vector<Representation> run_steps(const json& steps) {
  std::vector<Representation> stack;
  auto pop = [&]() {
    if (stack.empty()) throw Error(ErrorCode::InvalidInput, "plan step on an empty stack");
    auto r = std::move(stack.back());
    stack.pop_back();
    return r;
  };
  for (const auto& step : steps) {
    const std::string name = step.at("op").get<std::string>();
    if (name == "block") {
      stack.push_back(block(BlockSpec::from_json(step.at("spec"))));
    } else if (name == "so2") {
      stack.push_back(so2_from_angles(step.at("genus").get<int>(),
                                      parse_rational_list(step.at("angles"))));
    } else if (name == "phi") {
      stack.push_back(phi_pants(step.at("sign").get<int>()));
    } else if (name == "up") {
      stack.push_back(up_rep(step.at("genus").get<int>(), step.at("boundary").get<int>(),
                             step.at("p").get<int>(), step.at("m").get<int>(),
                             step.value("negative", false)));
    } else if (name == "upq") {
      stack.push_back(upq_genus0_rep(step.at("boundary").get<int>(), step.at("p").get<int>(),
                                     step.at("q").get<int>(), step.at("m").get<int>()));
    } else if (name == "glue") {
      auto rep2 = pop();
      auto rep1 = pop();
      stack.push_back(glue_top(rep1, rep2));
    } else if (name == "swap") {
      auto a = pop();
      auto b = pop();
      stack.push_back(std::move(a));
      stack.push_back(std::move(b));
    } else if (name == "to_front") {
      stack.push_back(boundary_to_front(pop(), step.at("j").get<int>()));
    } else if (name == "to_end") {
      stack.push_back(boundary_to_end(pop(), step.at("j").get<int>()));
    } else if (name == "hurwitz") {
      stack.push_back(hurwitz(pop(), step.at("j").get<int>()));
    } else if (name == "rotate") {
      stack.push_back(rotate_boundaries(pop()));
    } else if (name == "negate") {
      stack.push_back(negate_boundaries(pop(), step.at("indices").get<std::vector<int>>()));
    } else if (name == "balance") {
      stack.push_back(balanced(pop()));
    } else if (name == "involution") {
      stack.push_back(involution(pop()));
    } else if (name == "direct_sum") {
      int count = step.at("count").get<int>();
      if (count < 1 || count > static_cast<int>(stack.size()))
        throw Error(ErrorCode::InvalidInput, "direct_sum count out of range");
      std::vector<Representation> parts(stack.end() - count, stack.end());
      stack.erase(stack.end() - count, stack.end());
      stack.push_back(direct_sum_rep(parts));
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown plan op '" + name + "'");
    }
  }
  return stack;
}

namespace {

// Block pieces for chain assembly, built and certified once.
struct Piece {
  json steps;
  int genus = 0;
  int sig = 0;
  std::vector<ConjClass> classes;
  std::vector<std::optional<Rational>> traces;
};

Piece make_piece(json steps) {
  auto reps = run_steps(steps);
  const auto& rep = reps.back();
  Piece pc;
  pc.steps = std::move(steps);
  pc.genus = rep.surface.genus;
  pc.sig = signature_of(rep).signature_formula;
  pc.classes = rep.boundary_classes;
  for (int j = 0; j < rep.surface.boundary; ++j) pc.traces.push_back(rep.c(j).exact_trace());
  return pc;
}

bool glue_end(const Piece& p, int j) {
  return is_hyperbolic(p.classes[j]) && p.traces[j].has_value();
}

std::string trace_key(const Piece& p, int j) { return format_rational(*p.traces[j]); }

const std::vector<Piece>& pants_pool() {
  static const std::vector<Piece> pool = [] {
    std::vector<BlockSpec> specs;
    for (const auto& e : catalog()) {
      if (e.kind.rfind("pants-", 0) != 0 || e.kind == "pants-junction") continue;
      specs.push_back({e.kind, {}, false});
      specs.push_back({e.kind, {}, true});
    }
    specs.push_back({"pants-2cusp", {{"m", Rational(-9, 2)}}, false});
    specs.push_back({"pants-2cusp", {{"m", Rational(-9, 2)}}, true});
    for (Rational t2 : {Rational(1, 2), Rational(3, 2)})
      for (Rational t3 : {Rational(1, 2), Rational(3, 2)})
        for (bool mirror : {false, true})
          specs.push_back({"pants-centralinv", {{"t2", t2}, {"t3", t3}}, mirror});
    for (int e : {-1, 1})
      for (int x : {-1, 1}) {
        specs.push_back({"pants-junction", {{"e", e}, {"x", x}, {"inverse", 1}}, false});
        for (Rational x0 : {Rational(-13, 6), Rational(-3, 2), Rational(5, 6), Rational(-5, 2),
                            Rational(1), Rational(-3)})
          for (int y : {-1, 1})
            specs.push_back({"pants-junction", {{"e", e}, {"x", x}, {"x0", x0}, {"y", y}}, false});
      }
    std::vector<Piece> out;
    std::set<std::string> seen;
    std::vector<json> bases;
    for (const auto& spec : specs)
      for (auto idx : std::vector<std::vector<int>>{{}, {0, 1}, {0, 2}, {1, 2}}) {
        json steps = json::array({block_op(spec)});
        if (!idx.empty()) steps.push_back({{"op", "negate"}, {"indices", idx}});
        bases.push_back(steps);
      }
    for (auto steps : bases) {
      for (int r = 0; r < 3; ++r) {
        auto pc = make_piece(steps);
        std::string key = std::to_string(pc.sig);
        for (int j = 0; j < 3; ++j) key += "|" + describe(pc.classes[j]) + ":" +
                                           (pc.traces[j] ? format_rational(*pc.traces[j]) : "");
        if (seen.insert(key).second) out.push_back(pc);
        steps.push_back(op("rotate"));
      }
    }
    return out;
  }();
  return pool;
}

const std::vector<Piece>& torus_pool() {
  static const std::vector<Piece> pool = [] {
    std::vector<Piece> out;
    for (const auto& e : catalog()) {
      if (e.kind.rfind("torus-", 0) != 0 || e.kind == "torus-elliptic") continue;
      out.push_back(make_piece(json::array({block_op({e.kind, {}, false})})));
      out.push_back(make_piece(json::array({block_op({e.kind, {}, true})})));
    }
    for (Rational t : {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(4, 3),
                       Rational(3, 2), Rational(5, 3)})
      out.push_back(make_piece(json::array({block_op({"torus-elliptic", {{"t", t}}, false})})));
    out.push_back(make_piece(json::array({{{"op", "so2"}, {"genus", 1}, {"angles", {"0"}}}})));
    return out;
  }();
  return pool;
}

// Two-holed tori: an all-hyperbolic pants with a torus glued on its last
// boundary, leaving (entry, exit).
const std::vector<Piece>& handle_pool() {
  static const std::vector<Piece> pool = [] {
    std::vector<Piece> out;
    std::set<std::tuple<std::string, std::string, int>> seen;
    for (const auto& pants : pants_pool()) {
      if (!(glue_end(pants, 0) && glue_end(pants, 1) && glue_end(pants, 2))) continue;
      for (const auto& torus : torus_pool()) {
        if (!glue_end(torus, 0) || *torus.traces[0] != *pants.traces[2]) continue;
        int sig = pants.sig + torus.sig;
        auto key = std::make_tuple(trace_key(pants, 0), trace_key(pants, 1), sig);
        if (!seen.insert(key).second) continue;
        json steps = pants.steps;
        for (const auto& s : torus.steps) steps.push_back(s);
        steps.push_back(op("glue"));
        out.push_back(make_piece(steps));
      }
    }
    return out;
  }();
  return pool;
}

enum class Role { Single, Start, Mid, End, TorusAlone, TorusEnd1, Handle };

std::vector<const Piece*> candidates(Role role, BoundaryMode mode) {
  auto ok = [&](const Piece& p, int j) { return class_allowed(p.classes[j], mode); };
  std::vector<const Piece*> out;
  std::set<std::tuple<std::string, std::string, int>> seen;
  auto add = [&](const Piece& p, std::string in, std::string outk) {
    if (seen.insert({in, outk, p.sig}).second) out.push_back(&p);
  };
  switch (role) {
    case Role::Single:
      for (const auto& p : pants_pool())
        if (ok(p, 0) && ok(p, 1) && ok(p, 2)) add(p, "", "");
      break;
    case Role::Start:
      for (const auto& p : pants_pool())
        if (ok(p, 0) && ok(p, 1) && glue_end(p, 2)) add(p, "", trace_key(p, 2));
      break;
    case Role::Mid:
      for (const auto& p : pants_pool())
        if (glue_end(p, 0) && ok(p, 1) && glue_end(p, 2))
          add(p, trace_key(p, 0), trace_key(p, 2));
      break;
    case Role::End:
      for (const auto& p : pants_pool())
        if (glue_end(p, 0) && ok(p, 1) && ok(p, 2)) add(p, trace_key(p, 0), "");
      break;
    case Role::TorusAlone:
      for (const auto& p : torus_pool())
        if (ok(p, 0)) add(p, "", "");
      break;
    case Role::TorusEnd1:
      for (const auto& p : torus_pool())
        if (glue_end(p, 0)) add(p, trace_key(p, 0), trace_key(p, 0));
      break;
    case Role::Handle:
      for (const auto& p : handle_pool()) add(p, trace_key(p, 0), trace_key(p, 1));
      break;
  }
  return out;
}

std::vector<std::vector<Role>> chain_shapes(int g, int n) {
  std::vector<std::vector<Role>> shapes;
  auto repeat = [](std::vector<Role>& v, Role r, int k) {
    for (int i = 0; i < k; ++i) v.push_back(r);
  };
  if (g == 0) {
    if (n == 3) shapes.push_back({Role::Single});
    if (n >= 4) {
      std::vector<Role> s{Role::Start};
      repeat(s, Role::Mid, n - 4);
      s.push_back(Role::End);
      shapes.push_back(s);
    }
  } else if (g == 1) {
    if (n == 1) shapes.push_back({Role::TorusAlone});
    if (n >= 2) {
      std::vector<Role> s{Role::TorusEnd1};
      repeat(s, Role::Mid, n - 2);
      s.push_back(Role::End);
      shapes.push_back(s);
    }
  } else {
    std::vector<Role> s{Role::TorusEnd1};
    repeat(s, Role::Handle, g - 2);
    repeat(s, Role::Mid, n);
    s.push_back(Role::TorusEnd1);
    shapes.push_back(s);
    if (n >= 2) {
      std::vector<Role> t{Role::TorusEnd1};
      repeat(t, Role::Handle, g - 1);
      repeat(t, Role::Mid, n - 2);
      t.push_back(Role::End);
      shapes.push_back(t);
    }
  }
  return shapes;
}

std::optional<json> chain_plan(int g, int n, int m, BoundaryMode mode) {
  for (const auto& shape : chain_shapes(g, n)) {
    std::vector<std::vector<const Piece*>> slots;
    for (Role r : shape) slots.push_back(candidates(r, mode));
    std::set<std::tuple<size_t, std::string, int>> dead;
    std::vector<const Piece*> path;
    auto in_key = [](const Piece& p) { return p.traces[0] ? format_rational(*p.traces[0]) : ""; };
    auto out_key = [](const Piece& p) {
      const auto& t = p.traces.back();
      return t ? format_rational(*t) : "";
    };
    std::function<bool(size_t, const std::string&, int)> dfs =
        [&](size_t i, const std::string& prev, int rest) -> bool {
      if (i == slots.size()) return rest == 0;
      if (dead.count({i, prev, rest})) return false;
      for (const Piece* p : slots[i]) {
        if (i > 0 && in_key(*p) != prev) continue;
        path.push_back(p);
        if (dfs(i + 1, out_key(*p), rest - p->sig)) return true;
        path.pop_back();
      }
      dead.insert({i, prev, rest});
      return false;
    };
    if (!dfs(0, "", m)) continue;
    json steps = json::array();
    for (size_t i = 0; i < path.size(); ++i) {
      for (const auto& s : path[i]->steps) steps.push_back(s);
      if (i > 0) steps.push_back(op("glue"));
    }
    if (path.size() > 1) steps.push_back(op("balance"));
    return steps;
  }
  return std::nullopt;
}

int torus_elliptic_sign(const Rational& host) {
  return block_label({"torus-elliptic", {{"t", 2 - host}}, false});
}

void attach_hosts(json& steps, const std::vector<std::pair<int, Rational>>& hosts) {
  auto sorted = hosts;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (const auto& [j, angle] : sorted) {
    steps.push_back({{"op", "to_front"}, {"j", j}});
    steps.push_back(block_op({"torus-elliptic", {{"t", 2 - angle}}, false}));
    steps.push_back(op("swap"));
    steps.push_back(op("glue"));
  }
}

// SO(2) core, an odd step through phi when m is odd, then one torus-elliptic
// glued onto each of g host boundaries.
std::optional<json> so2_core_plan(int g, int n, int m) {
  const Rational up(3, 2), down(1, 2);
  if (g == 0 && n == 3 && (m == 1 || m == -1)) return json::array({{{"op", "phi"}, {"sign", m}}});
  if (m % 2 == 0) {
    int total = n + g;
    for (int k = g; k >= 0; --k) {
      std::vector<std::optional<Rational>> fixed(total);
      std::vector<std::pair<int, Rational>> hosts;
      int m0 = m;
      for (int i = 0; i < g; ++i) {
        Rational c = i < k ? up : down;
        fixed[n + i] = c;
        hosts.push_back({n + i, c});
        m0 -= torus_elliptic_sign(c);
      }
      auto angles = solve_so2_angles(fixed, m0, true);
      if (!angles) continue;
      json steps = json::array({{{"op", "so2"}, {"genus", 0}, {"angles", rational_list(*angles)}}});
      attach_hosts(steps, hosts);
      if (!hosts.empty()) steps.push_back(op("balance"));
      return steps;
    }
    return std::nullopt;
  }
  int core = n + g - 1;
  if (core < 2) return std::nullopt;
  for (int s : {1, -1}) {
    for (int r = 0; r < 3; ++r) {
      auto phi = phi_pants(s);
      for (int i = 0; i < r; ++i) phi = rotate_boundaries(phi);
      auto slot = exact_angle(phi.boundary_classes[0]);
      if (!slot || *slot == 0) continue;
      int phi_sig = signature_of(phi).signature_formula;
      // Final layout: core C_1..C_{core-1}, phi C_2, phi C_3.
      std::vector<std::pair<int, Rational>> phi_hosts;
      for (int j = 1; j <= 2; ++j)
        if (auto a = exact_angle(phi.boundary_classes[j]); a && *a != 0)
          phi_hosts.push_back({core - 2 + j, *a});
      for (unsigned mask = 0; mask < (1u << phi_hosts.size()); ++mask) {
        std::vector<std::pair<int, Rational>> chosen;
        for (size_t b = 0; b < phi_hosts.size(); ++b)
          if (mask & (1u << b)) chosen.push_back(phi_hosts[b]);
        int in_core = g - static_cast<int>(chosen.size());
        if (in_core < 0 || in_core > core - 1) continue;
        for (int k = in_core; k >= 0; --k) {
          std::vector<std::optional<Rational>> fixed(core);
          fixed[core - 1] = 2 - *slot;
          auto hosts = chosen;
          int m0 = m - phi_sig;
          for (const auto& h : chosen) m0 -= torus_elliptic_sign(h.second);
          for (int i = 0; i < in_core; ++i) {
            int j = core - 1 - in_core + i;
            Rational c = i < k ? up : down;
            fixed[j] = c;
            hosts.push_back({j, c});
            m0 -= torus_elliptic_sign(c);
          }
          auto angles = solve_so2_angles(fixed, m0, true);
          if (!angles) continue;
          json steps = json::array({{{"op", "so2"}, {"genus", 0}, {"angles", rational_list(*angles)}},
                                    {{"op", "phi"}, {"sign", s}}});
          for (int i = 0; i < r; ++i) steps.push_back(op("rotate"));
          steps.push_back(op("glue"));
          attach_hosts(steps, hosts);
          steps.push_back(op("balance"));
          return steps;
        }
      }
    }
  }
  return std::nullopt;
}

void require_value(const PlanTarget& t) {
  auto values = value_set(mode_value_spec(t.mode, t.genus, t.boundary, t.p, t.q));
  if (std::find(values.begin(), values.end(), t.m) == values.end())
    throw Error(ErrorCode::UnachievableValue,
                "m = " + std::to_string(t.m) + " is outside the " + mode_name(t.mode) +
                    " value set on (" + std::to_string(t.genus) + "," +
                    std::to_string(t.boundary) + ")");
}

[[noreturn]] void incomplete(const PlanTarget& t) {
  throw Error(ErrorCode::PlanIncomplete, "no constructive route for m = " + std::to_string(t.m) +
                                             " (" + mode_name(t.mode) + ", genus " +
                                             std::to_string(t.genus) + ", n = " +
                                             std::to_string(t.boundary) + ")");
}

json sl2_steps(const PlanTarget& t) {
  const int g = t.genus, n = t.boundary;
  switch (t.mode) {
    case BoundaryMode::Paraelliptic: {
      if (auto s = so2_core_plan(g, n, t.m)) return *s;
      if (auto s = chain_plan(g, n, t.m, t.mode)) return *s;
      break;
    }
    case BoundaryMode::Hyperparabolic: {
      if (auto s = chain_plan(g, n, t.m, t.mode)) return *s;
      break;
    }
    case BoundaryMode::Elliptic: {
      if (g == 0)
        return json::array({{{"op", "so2"}, {"genus", 0},
                             {"angles", rational_list(so2_angles(n, t.m, So2Mode::Elliptic))}}});
      if (auto s = chain_plan(g, n, t.m, t.mode)) return *s;
      break;
    }
    default: break;
  }
  incomplete(t);
}

}  // namespace

bool boundary_mode_ok(const Representation& rep, BoundaryMode mode) {
  if (rep.kind() == RepKind::Unitary) return true;
  return std::all_of(rep.boundary_classes.begin(), rep.boundary_classes.end(),
                     [&](const ConjClass& c) { return class_allowed(c, mode); });
}

AssemblyPlan plan(const PlanTarget& target) {
  const int g = target.genus, n = target.boundary;
  if (g < 0 || n < 1) throw Error(ErrorCode::UnsupportedSurface, "need g >= 0 and n >= 1");
  AssemblyPlan out{target, json::array()};
  switch (target.mode) {
    case BoundaryMode::So2:
      out.steps.push_back(
          {{"op", "so2"}, {"genus", g}, {"angles", rational_list(so2_angles(n, target.m, So2Mode::Paired))}});
      return out;
    case BoundaryMode::Up:
      require_value(target);
      if (g == 0)
        out.steps.push_back({{"op", "upq"}, {"boundary", n}, {"p", target.p}, {"q", 0}, {"m", target.m}});
      else
        out.steps.push_back(
            {{"op", "up"}, {"genus", g}, {"boundary", n}, {"p", target.p}, {"m", target.m}});
      return out;
    case BoundaryMode::UpqGenus0:
      if (g != 0) throw Error(ErrorCode::UnsupportedSurface, "upq-genus0 needs genus 0");
      require_value(target);
      out.steps.push_back(
          {{"op", "upq"}, {"boundary", n}, {"p", target.p}, {"q", target.q}, {"m", target.m}});
      return out;
    case BoundaryMode::Upp: {
      require_value(target);
      if (g == 0) {
        out.steps.push_back(
            {{"op", "upq"}, {"boundary", n}, {"p", target.p}, {"q", target.q}, {"m", target.m}});
        return out;
      }
      int chi = 2 - 2 * g - n;
      int per = -2 * chi;
      int m1 = std::clamp(target.m, -target.p * per, target.p * per);
      int rest = m1;
      for (int k = 0; k < target.p; ++k) {
        int share = std::clamp(rest, -per, per);
        rest -= share;
        PlanTarget sub{g, n, share, BoundaryMode::Paraelliptic};
        for (const auto& s : sl2_steps(sub)) out.steps.push_back(s);
      }
      out.steps.push_back({{"op", "direct_sum"}, {"count", target.p}});
      if (target.q > target.p)
        out.steps.push_back({{"op", "up"},
                             {"genus", g},
                             {"boundary", n},
                             {"p", target.q - target.p},
                             {"m", target.m - m1},
                             {"negative", true}});
      return out;
    }
    default: break;
  }
  if (presentation(g, n).chi() >= 0) throw Error(ErrorCode::UnsupportedSurface, "planner needs chi < 0");
  require_value(target);
  out.steps = sl2_steps(target);
  return out;
}

Realization execute_factors(const AssemblyPlan& p) {
  Realization r{run_steps(p.steps)};
  if (r.factors.empty()) throw Error(ErrorCode::InvalidInput, "plan produced nothing");
  for (const auto& f : r.factors) {
    if (f.surface.genus != p.target.genus || f.surface.boundary != p.target.boundary)
      throw Error(ErrorCode::PlanIncomplete, "plan produced the wrong surface");
    if (!boundary_mode_ok(f, p.target.mode))
      throw Error(ErrorCode::PlanIncomplete, "boundary classes violate " + mode_name(p.target.mode));
  }
  int got = r.signature();
  if (got != p.target.m)
    throw Error(ErrorCode::PlanIncomplete, "plan certifies " + std::to_string(got) +
                                               " instead of " + std::to_string(p.target.m));
  return r;
}

Representation execute(const AssemblyPlan& p) {
  auto r = execute_factors(p);
  if (r.factors.size() != 1)
    throw Error(ErrorCode::InvalidInput, "product target; use execute_factors");
  return std::move(r.factors.front());
}

}  // namespace flatsig
