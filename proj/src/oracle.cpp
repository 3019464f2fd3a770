#include "flatsig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "flatsig/errors.hpp"

namespace flatsig {

namespace {

// Orientation of the fundamental cycle relative to the symplectic form.
constexpr int kOracleSign = -1;

enum class LetterKind { A, B, D, C };

struct Letter {
  LetterKind kind;
  int index;
  bool inverse;
};

std::vector<Letter> polygon_word(int g, int n) {
  std::vector<Letter> w;
  for (int i = 0; i < g; ++i) {
    w.push_back({LetterKind::A, i, false});
    w.push_back({LetterKind::B, i, false});
    w.push_back({LetterKind::A, i, true});
    w.push_back({LetterKind::B, i, true});
  }
  for (int j = 0; j < n; ++j) {
    w.push_back({LetterKind::D, j, false});
    w.push_back({LetterKind::C, j, false});
    w.push_back({LetterKind::D, j, true});
  }
  return w;
}

struct Coefficients {
  std::vector<Eigen::MatrixXd> gens;
  Eigen::MatrixXd omega;
  bool complex = false;
};

Coefficients coefficients(const Representation& rep) {
  Coefficients co;
  Eigen::Matrix2d j;
  j << 0, 1, -1, 0;
  if (rep.kind() == RepKind::SL2) {
    for (const auto& x : rep.sl2) {
      Eigen::MatrixXd m(2, 2);
      m << x.a(), x.b(), x.c(), x.d();
      co.gens.push_back(m);
    }
    co.omega = j;
    return co;
  }
  auto [p, q] = rep.shape();
  bool blocks = rep.kind() == RepKind::SL2Blocks;
  int k = blocks ? p : p + q;
  if (!blocks && p + q > 4)
    throw Error(ErrorCode::RealificationUnsupported, "coefficient dimension above 8");
  if (blocks && p > 4) throw Error(ErrorCode::RealificationUnsupported, "more than 4 blocks");
  co.omega = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  for (int s = 0; s < k; ++s) co.omega.block(2 * s, 2 * s, 2, 2) = (s < p || blocks ? 1.0 : -1.0) * j;
  for (const auto& u : rep.unitary) co.gens.push_back(u.real_matrix());
  co.complex = !blocks;
  return co;
}

int rank_of(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1e-9 * s(0)) ++r;
  return r;
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m) {
  int cols = static_cast<int>(m.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  double top = s.size() ? s(0) : 0;
  for (int i = 0; i < s.size(); ++i)
    if (top > 0 && s(i) > 1e-9 * top) ++r;
  return svd.matrixV().rightCols(cols - r);
}

struct RationalDense {
  int rows = 0, cols = 0;
  std::vector<Rational> v;

  static RationalDense Zero(int r, int c) { return {r, c, std::vector<Rational>(r * c)}; }
  static RationalDense Identity(int r, int c) {
    auto m = Zero(r, c);
    for (int i = 0; i < std::min(r, c); ++i) m(i, i) = 1;
    return m;
  }
  Rational& operator()(int r, int c) { return v[r * cols + c]; }
  const Rational& operator()(int r, int c) const { return v[r * cols + c]; }
  RationalDense operator*(const RationalDense& o) const {
    auto out = Zero(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (int j = 0; j < o.cols; ++j) out(i, j) += (*this)(i, k) * o(k, j);
      }
    return out;
  }
  RationalDense operator-(const RationalDense& o) const {
    auto out = *this;
    for (std::size_t i = 0; i < v.size(); ++i) out.v[i] -= o.v[i];
    return out;
  }
};

void add_block(Eigen::MatrixXd& m, int r, int c, const Eigen::MatrixXd& src, int sign) {
  m.block(r, c, src.rows(), src.cols()) += sign * src;
}

void add_block(RationalDense& m, int r, int c, const RationalDense& src, int sign) {
  for (int i = 0; i < src.rows; ++i)
    for (int j = 0; j < src.cols; ++j) m(r + i, c + j) += sign * src(i, j);
}

template <class M>
struct Cochains {
  M d0, d1;
  std::vector<M> deck;
  std::vector<int> side, front;
};

// Differentials of the coned polygon; gens and invs are the generator images
// and their inverses in A_1, B_1, ..., C_n order.
template <class M>
Cochains<M> assemble(int g, int n, int D, const std::vector<M>& gens, const std::vector<M>& invs) {
  const std::vector<Letter> word = polygon_word(g, n);
  const int L = static_cast<int>(word.size());
  const int vertices = 2 + n, edges = 2 * g + 2 * n + L, faces = L;
  const M I = M::Identity(D, D);
  const int v0 = 0;
  const int origin = 1 + n;
  auto w_vertex = [](int j) { return 1 + j; };
  auto side_edge = [&](const Letter& l) {
    switch (l.kind) {
      case LetterKind::A: return 2 * l.index;
      case LetterKind::B: return 2 * l.index + 1;
      case LetterKind::D: return 2 * g + l.index;
      case LetterKind::C: return 2 * g + n + l.index;
    }
    return 0;
  };
  auto cone_edge = [&](int k) { return 2 * g + 2 * n + (k % L); };
  auto letter_matrix = [&](const Letter& l) -> M {
    int idx = 0;
    switch (l.kind) {
      case LetterKind::A: idx = 2 * l.index; break;
      case LetterKind::B: idx = 2 * l.index + 1; break;
      case LetterKind::C: idx = 2 * g + l.index; break;
      case LetterKind::D: return I;
    }
    return l.inverse ? invs[idx] : gens[idx];
  };

  Cochains<M> out;
  // Deck transformations and vertex types of the polygon corners.
  out.deck.resize(L + 1);
  std::vector<int> corner(L + 1);
  out.deck[0] = I;
  corner[0] = v0;
  for (int k = 0; k < L; ++k) {
    const Letter& l = word[k];
    out.deck[k + 1] = out.deck[k] * letter_matrix(l);
    if (l.kind == LetterKind::D)
      corner[k + 1] = l.inverse ? v0 : w_vertex(l.index);
    else if (l.kind == LetterKind::C)
      corner[k + 1] = w_vertex(l.index);
    else
      corner[k + 1] = v0;
  }

  out.d0 = M::Zero(edges * D, vertices * D);
  for (int i = 0; i < g; ++i) {
    add_block(out.d0, 2 * i * D, v0 * D, gens[2 * i] - I, 1);
    add_block(out.d0, (2 * i + 1) * D, v0 * D, gens[2 * i + 1] - I, 1);
  }
  for (int j = 0; j < n; ++j) {
    int d = 2 * g + j;
    int c = 2 * g + n + j;
    add_block(out.d0, d * D, w_vertex(j) * D, I, 1);
    add_block(out.d0, d * D, v0 * D, I, -1);
    add_block(out.d0, c * D, w_vertex(j) * D, gens[2 * g + j] - I, 1);
  }
  for (int k = 0; k < L; ++k) {
    int e = cone_edge(k);
    add_block(out.d0, e * D, corner[k] * D, out.deck[k], 1);
    add_block(out.d0, e * D, origin * D, I, -1);
  }

  out.d1 = M::Zero(faces * D, edges * D);
  for (int k = 0; k < L; ++k) {
    const Letter& l = word[k];
    int side = side_edge(l);
    const M& side_deck = l.inverse ? out.deck[k + 1] : out.deck[k];
    int front = l.inverse ? cone_edge(k + 1) : cone_edge(k);
    int middle = l.inverse ? cone_edge(k) : cone_edge(k + 1);
    add_block(out.d1, k * D, side * D, side_deck, 1);
    add_block(out.d1, k * D, middle * D, I, -1);
    add_block(out.d1, k * D, front * D, I, 1);
    out.side.push_back(side);
    out.front.push_back(front);
  }
  return out;
}

}  // namespace

double TwistedComplex::dd_defect() const {
  if (d1.size() == 0 || d0.size() == 0) return 0;
  return (d1 * d0).cwiseAbs().maxCoeff();
}

TwistedComplex build_model(const Representation& rep) {
  const int g = rep.surface.genus;
  const int n = rep.surface.boundary;
  Coefficients co = coefficients(rep);
  const int D = static_cast<int>(co.omega.rows());
  const std::vector<Letter> word = polygon_word(g, n);
  const int L = static_cast<int>(word.size());
  if (L > 40) throw Error(ErrorCode::RealificationUnsupported, "polygon has more than 40 sides");

  TwistedComplex tc;
  tc.genus = g;
  tc.boundary = n;
  tc.sides = L;
  tc.dim = D;
  tc.vertices = 2 + n;
  tc.edges = 2 * g + 2 * n + L;
  tc.faces = L;
  tc.complex_coefficients = co.complex;
  tc.omega = co.omega;

  std::vector<Eigen::MatrixXd> invs;
  for (const auto& m : co.gens) invs.push_back(m.inverse());
  auto cc = assemble<Eigen::MatrixXd>(g, n, D, co.gens, invs);
  tc.d0 = std::move(cc.d0);
  tc.d1 = std::move(cc.d1);
  tc.cup = Eigen::MatrixXd::Zero(tc.edges * D, tc.edges * D);
  for (int k = 0; k < L; ++k) {
    const Letter& l = word[k];
    const Eigen::MatrixXd& side_deck = l.inverse ? cc.deck[k + 1] : cc.deck[k];
    double eps = l.inverse ? -1.0 : 1.0;
    tc.cup.block(cc.front[k] * D, cc.side[k] * D, D, D) += eps * kOracleSign * co.omega * side_deck;
  }

  for (int e = 0; e < tc.edges; ++e)
    if (e < 2 * g + n || e >= 2 * g + 2 * n) tc.relative_edges.push_back(e);
  return tc;
}

std::optional<bool> exact_dd_vanishes(const Representation& rep) {
  if (rep.kind() != RepKind::SL2) return std::nullopt;
  std::vector<RationalDense> gens, invs;
  for (const auto& x : rep.sl2) {
    auto q = x.rational_entries();
    if (!q) return std::nullopt;
    RationalDense m{2, 2, {(*q)[0], (*q)[1], (*q)[2], (*q)[3]}};
    RationalDense mi{2, 2, {(*q)[3], -(*q)[1], -(*q)[2], (*q)[0]}};
    gens.push_back(m);
    invs.push_back(mi);
  }
  auto cc = assemble<RationalDense>(rep.surface.genus, rep.surface.boundary, 2, gens, invs);
  auto dd = cc.d1 * cc.d0;
  return std::all_of(dd.v.begin(), dd.v.end(), [](const Rational& x) { return x == 0; });
}

OracleResult signature_direct(const Representation& rep, unsigned seed) {
  TwistedComplex tc = build_model(rep);
  const int D = tc.dim;
  OracleResult r;
  r.dim_c0 = tc.vertices * D;
  r.dim_c1 = tc.edges * D;
  r.dim_c2 = tc.faces * D;
  r.dd_defect = tc.dd_defect();
  double dd_scale = 1;
  if (tc.d0.size() > 0 && tc.d1.size() > 0)
    dd_scale = std::max(1.0, tc.d0.cwiseAbs().maxCoeff() * tc.d1.cwiseAbs().maxCoeff());
  if (r.dd_defect > 1e-8 * dd_scale)
    throw Error(ErrorCode::IllConditioned, "d1 d0 defect " + std::to_string(r.dd_defect));
  r.dim_h1 = (r.dim_c1 - rank_of(tc.d1)) - rank_of(tc.d0);

  const int rel = static_cast<int>(tc.relative_edges.size());
  Eigen::MatrixXd select = Eigen::MatrixXd::Zero(tc.edges * D, rel * D);
  for (int k = 0; k < rel; ++k)
    select.block(tc.relative_edges[k] * D, k * D, D, D) = Eigen::MatrixXd::Identity(D, D);
  Eigen::MatrixXd z = select * kernel_basis(tc.d1 * select);
  if (seed != 0 && z.cols() > 0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    Eigen::MatrixXd mix(z.cols(), z.cols());
    for (int i = 0; i < mix.rows(); ++i)
      for (int j = 0; j < mix.cols(); ++j) mix(i, j) = u(gen) + (i == j ? 3.0 : 0.0);
    z = z * mix;
  }
  Eigen::MatrixXd q = z.transpose() * tc.cup * z;
  r.form = (q + q.transpose()) / 2;
  if (r.form.size() == 0) return r;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.form);
  const auto& ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  // A form that is zero up to roundoff has no meaningful relative cutoff.
  double scale = tc.cup.cwiseAbs().maxCoeff();
  if (top <= 1e-9 * scale) top = 0;
  int pos = 0;
  int neg = 0;
  r.spectral_gap = 0;
  for (int i = 0; i < ev.size(); ++i) {
    double x = ev(i);
    r.eigenvalues.push_back(x);
    if (top == 0) continue;
    double a = std::abs(x);
    if (a > 1e-7 * top) {
      (x > 0 ? pos : neg) += 1;
      r.spectral_gap = r.spectral_gap == 0 ? a : std::min(r.spectral_gap, a);
    } else if (a > 1e-10 * top) {
      throw Error(ErrorCode::IllConditioned,
                  "eigenvalue " + std::to_string(x) + " is neither zero nor separated");
    }
  }
  r.dim_parabolic = pos + neg;
  int s = pos - neg;
  if (tc.complex_coefficients) {
    if (s % 2 != 0)
      throw Error(ErrorCode::RealificationUnsupported, "realified signature is odd");
    s /= 2;
    r.dim_parabolic /= 2;
  }
  r.signature = s;
  return r;
}

}  // namespace flatsig
