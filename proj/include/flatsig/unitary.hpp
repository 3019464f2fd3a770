#pragma once

#include <Eigen/Dense>

#include <variant>
#include <vector>

#include "flatsig/rational.hpp"
#include "flatsig/sl2.hpp"

namespace flatsig {

/// diag(e^{i t_1 pi}, ..., e^{i t_{p+q} pi}) with exact t_k in [0, 2).
struct DiagonalTorus {
  std::vector<Rational> t;
};

/// A complex matrix preserving diag(I_p, -I_q).
struct BlockMatrix {
  Eigen::MatrixXcd m;
};

/// SL(2,R)^p embedded block-diagonally.
struct SL2Blocks {
  std::vector<SL2Element> blocks;
};

class UnitaryElement {
 public:
  using Realization = std::variant<DiagonalTorus, BlockMatrix, SL2Blocks>;

  UnitaryElement(int p, int q, Realization r);

  static UnitaryElement identity(int p, int q);
  static UnitaryElement torus(int p, int q, std::vector<Rational> t);
  static UnitaryElement matrix(int p, int q, Eigen::MatrixXcd m);

  int p() const { return p_; }
  int q() const { return q_; }
  const Realization& realization() const { return r_; }
  bool is_torus() const { return std::holds_alternative<DiagonalTorus>(r_); }
  bool is_sl2_blocks() const { return std::holds_alternative<SL2Blocks>(r_); }
  const std::vector<Rational>& angles() const;
  const std::vector<SL2Element>& blocks() const;

  /// Complex (p+q)x(p+q) matrix; not available for SL2Blocks.
  Eigen::MatrixXcd complex_matrix() const;
  /// Real matrix acting on R^{2(p+q)} (or R^{2p} for SL2Blocks).
  Eigen::MatrixXd real_matrix() const;

  UnitaryElement operator*(const UnitaryElement& o) const;
  UnitaryElement inverse() const;
  UnitaryElement mirrored() const;

 private:
  int p_;
  int q_;
  Realization r_;
};

/// Block element of shape (p,p) wrapping the given SL(2,R) parts.
UnitaryElement direct_sum(const std::vector<SL2Element>& parts);

/// Max deviation of g^* J g - J from zero, J = diag(I_p, -I_q).
double form_defect(const UnitaryElement& g);

}  // namespace flatsig
