#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "flatsig/surface.hpp"

namespace flatsig {

/// Coned identification polygon for prod [a_i,b_i] prod d_j c_j d_j^-1 with
/// twisted coefficients. Cochains are stacked cell by cell, dim blocks each.
struct TwistedComplex {
  int genus = 0;
  int boundary = 0;
  int sides = 0;     // 4g + 3n
  int dim = 0;       // real coefficient dimension
  int vertices = 0;  // v0, w_1..w_n, o
  int edges = 0;     // a, b, d, c, then cone edges
  int faces = 0;
  bool complex_coefficients = false;
  Eigen::MatrixXd d0;     // edges*dim x vertices*dim
  Eigen::MatrixXd d1;     // faces*dim x edges*dim
  Eigen::MatrixXd omega;  // dim x dim
  Eigen::MatrixXd cup;    // bilinear form on C^1 evaluated on the fundamental cycle
  std::vector<int> relative_edges;  // edge indices not on the boundary

  int euler_characteristic() const { return vertices - edges + faces; }
  /// Max |d1 d0|.
  double dd_defect() const;
};

struct OracleResult {
  int dim_c0 = 0;
  int dim_c1 = 0;
  int dim_c2 = 0;
  int dim_h1 = 0;
  int dim_parabolic = 0;
  Eigen::MatrixXd form;
  std::vector<double> eigenvalues;
  int signature = 0;
  double spectral_gap = 0;
  double dd_defect = 0;
};

TwistedComplex build_model(const Representation& rep);

/// Signature of the cup-product form on the image of relative in absolute H^1.
/// Pass a nonzero seed to randomize the cocycle basis by an invertible change.
/// d1 * d0 == 0 checked in exact arithmetic; empty unless every image of an
/// SL(2,R) rep has rational entries.
std::optional<bool> exact_dd_vanishes(const Representation& rep);

OracleResult signature_direct(const Representation& rep, unsigned seed = 0);

}  // namespace flatsig
