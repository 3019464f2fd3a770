#include "flatsig/unitary.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "flatsig/errors.hpp"

namespace flatsig {

UnitaryElement::UnitaryElement(int p, int q, Realization r) : p_(p), q_(q), r_(std::move(r)) {
  if (p < 0 || q < 0 || p + q == 0) throw Error(ErrorCode::InvalidInput, "bad unitary shape");
  if (auto* t = std::get_if<DiagonalTorus>(&r_)) {
    if (static_cast<int>(t->t.size()) != p + q)
      throw Error(ErrorCode::InvalidInput, "torus angle count does not match shape");
    for (auto& x : t->t) x = mod2(x);
  } else if (auto* b = std::get_if<BlockMatrix>(&r_)) {
    if (b->m.rows() != p + q || b->m.cols() != p + q)
      throw Error(ErrorCode::InvalidInput, "matrix size does not match shape");
  } else {
    auto& s = std::get<SL2Blocks>(r_);
    if (static_cast<int>(s.blocks.size()) != p || p != q)
      throw Error(ErrorCode::InvalidInput, "SL2 blocks need shape (p,p)");
  }
}

UnitaryElement UnitaryElement::identity(int p, int q) {
  return torus(p, q, std::vector<Rational>(p + q, Rational(0)));
}

UnitaryElement UnitaryElement::torus(int p, int q, std::vector<Rational> t) {
  return UnitaryElement(p, q, DiagonalTorus{std::move(t)});
}

UnitaryElement UnitaryElement::matrix(int p, int q, Eigen::MatrixXcd m) {
  return UnitaryElement(p, q, BlockMatrix{std::move(m)});
}

const std::vector<Rational>& UnitaryElement::angles() const {
  return std::get<DiagonalTorus>(r_).t;
}

const std::vector<SL2Element>& UnitaryElement::blocks() const {
  return std::get<SL2Blocks>(r_).blocks;
}

Eigen::MatrixXcd UnitaryElement::complex_matrix() const {
  int n = p_ + q_;
  if (auto* t = std::get_if<DiagonalTorus>(&r_)) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = std::polar(1.0, to_double(t->t[k]) * std::numbers::pi);
    return m;
  }
  if (auto* b = std::get_if<BlockMatrix>(&r_)) return b->m;
  throw Error(ErrorCode::RealificationUnsupported, "SL2 blocks have no complex matrix here");
}

Eigen::MatrixXd UnitaryElement::real_matrix() const {
  if (auto* s = std::get_if<SL2Blocks>(&r_)) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * p_, 2 * p_);
    for (int k = 0; k < p_; ++k) {
      const auto& e = s->blocks[k].entries();
      m(2 * k, 2 * k) = e[0];
      m(2 * k, 2 * k + 1) = e[1];
      m(2 * k + 1, 2 * k) = e[2];
      m(2 * k + 1, 2 * k + 1) = e[3];
    }
    return m;
  }
  Eigen::MatrixXcd c = complex_matrix();
  int n = p_ + q_;
  Eigen::MatrixXd m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double re = c(i, j).real();
      double im = c(i, j).imag();
      m(2 * i, 2 * j) = re;
      m(2 * i, 2 * j + 1) = -im;
      m(2 * i + 1, 2 * j) = im;
      m(2 * i + 1, 2 * j + 1) = re;
    }
  return m;
}

UnitaryElement UnitaryElement::operator*(const UnitaryElement& o) const {
  if (p_ != o.p_ || q_ != o.q_) throw Error(ErrorCode::InvalidInput, "shape mismatch");
  if (is_torus() && o.is_torus()) {
    std::vector<Rational> t(angles());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] += o.angles()[k];
    return torus(p_, q_, std::move(t));
  }
  if (is_sl2_blocks() && o.is_sl2_blocks()) {
    std::vector<SL2Element> b;
    for (int k = 0; k < p_; ++k) b.push_back(blocks()[k] * o.blocks()[k]);
    return UnitaryElement(p_, q_, SL2Blocks{std::move(b)});
  }
  return matrix(p_, q_, complex_matrix() * o.complex_matrix());
}

UnitaryElement UnitaryElement::inverse() const {
  if (is_torus()) {
    std::vector<Rational> t;
    for (const auto& x : angles()) t.push_back(-x);
    return torus(p_, q_, std::move(t));
  }
  if (is_sl2_blocks()) {
    std::vector<SL2Element> b;
    for (const auto& x : blocks()) b.push_back(x.inverse());
    return UnitaryElement(p_, q_, SL2Blocks{std::move(b)});
  }
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Identity(p_ + q_, p_ + q_);
  for (int k = p_; k < p_ + q_; ++k) j(k, k) = -1;
  return matrix(p_, q_, j * complex_matrix().adjoint() * j);
}

UnitaryElement UnitaryElement::mirrored() const {
  if (is_sl2_blocks()) {
    std::vector<SL2Element> b;
    for (const auto& x : blocks()) b.push_back(flatsig::mirrored(x));
    return UnitaryElement(p_, q_, SL2Blocks{std::move(b)});
  }
  if (is_torus()) {
    std::vector<Rational> t;
    for (const auto& x : angles()) t.push_back(-x);
    return torus(p_, q_, std::move(t));
  }
  return matrix(p_, q_, complex_matrix().conjugate());
}

UnitaryElement direct_sum(const std::vector<SL2Element>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidInput, "empty direct sum");
  int p = static_cast<int>(parts.size());
  return UnitaryElement(p, p, SL2Blocks{parts});
}

double form_defect(const UnitaryElement& g) {
  if (g.is_sl2_blocks()) {
    double d = 0;
    for (const auto& b : g.blocks()) d = std::max(d, std::abs(b.a() * b.d() - b.b() * b.c() - 1));
    return d;
  }
  int n = g.p() + g.q();
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Identity(n, n);
  for (int k = g.p(); k < n; ++k) j(k, k) = -1;
  Eigen::MatrixXcd m = g.complex_matrix();
  return (m.adjoint() * j * m - j).cwiseAbs().maxCoeff();
}

}  // namespace flatsig
