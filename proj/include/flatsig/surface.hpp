#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "flatsig/sl2.hpp"
#include "flatsig/unitary.hpp"

namespace flatsig {

/// Standard presentation: prod [A_i, B_i] * C_1 ... C_n = 1.
struct SurfacePresentation {
  int genus = 0;
  int boundary = 0;

  int chi() const { return 2 - 2 * genus - boundary; }
  int relator_length() const { return 4 * genus + boundary; }
  int free_rank() const { return 2 * genus + boundary - 1; }
  int generator_count() const { return 2 * genus + boundary; }
  std::vector<std::string> generator_names() const;
  bool operator==(const SurfacePresentation&) const = default;
};

SurfacePresentation presentation(int g, int n);

enum class RepKind { SL2, SL2Blocks, Unitary };

/// Generator images in the order A_1, B_1, ..., A_g, B_g, C_1, ..., C_n.
/// SL(2,R) representations fill `sl2`; block and unitary ones fill `unitary`.
/// For SL2Blocks, boundary_classes holds block k's classes at k*n + j.
struct Representation {
  SurfacePresentation surface;
  std::vector<SL2Element> sl2;
  std::vector<UnitaryElement> unitary;
  std::vector<ConjClass> boundary_classes;
  nlohmann::json provenance = nlohmann::json::object();

  RepKind kind() const;
  int block_count() const;
  /// (p, q) of the coefficient group; (1,1) stands for SL(2,R).
  std::pair<int, int> shape() const;

  const SL2Element& a(int i) const { return sl2[2 * i]; }
  const SL2Element& b(int i) const { return sl2[2 * i + 1]; }
  const SL2Element& c(int j) const { return sl2[2 * surface.genus + j]; }
};

/// Builds an SL(2,R) representation; classes default to classify() of the images.
Representation make_sl2_rep(int g, int n, std::vector<SL2Element> images,
                            std::vector<ConjClass> classes = {},
                            nlohmann::json provenance = nlohmann::json::object());

Representation make_unitary_rep(int g, int n, std::vector<UnitaryElement> images,
                                nlohmann::json provenance = nlohmann::json::object());

/// Direct sum of SL(2,R) representations of one surface.
Representation direct_sum_rep(const std::vector<Representation>& parts);

/// Block k of an SL2Blocks representation.
Representation block_of(const Representation& rep, int k);

SL2Element relator_sl2(const Representation& rep);
/// Max entrywise deviation of the relator from the identity.
double relator_defect(const Representation& rep);
/// True when every image is exact and the relator is exactly the identity.
bool relator_exact_identity(const Representation& rep);

/// Throws InvalidInput unless the relator holds to 1e-8 and the recorded
/// classes agree with the images wherever the images can be classified.
void validate(const Representation& rep);

/// Glues the last boundary of rep1 to the first boundary of rep2 after
/// conjugating rep2 by conj.
Representation glue(const Representation& rep1, int i, const Representation& rep2, int j,
                    const Mat2& conj);

/// Hurwitz move exchanging boundaries j and j+1:
/// (C_j, C_{j+1}) -> (C_{j+1}, C_{j+1}^-1 C_j C_{j+1}).
Representation hurwitz(const Representation& rep, int j);

/// Moves boundary j to the last position by Hurwitz moves.
Representation boundary_to_end(const Representation& rep, int j);
/// Moves boundary j to the first position by inverse Hurwitz moves.
Representation boundary_to_front(const Representation& rep, int j);

/// Genus-0 cyclic rotation (C_1, ..., C_n) -> (C_2, ..., C_n, C_1).
Representation rotate_boundaries(const Representation& rep);

/// Entrywise conjugation by diag(1,-1).
Representation involution(const Representation& rep);

/// Global conjugation by p (det p > 0).
Representation conjugate_rep(const Representation& rep, const Mat2& p);

/// Class of diag(1,-1) g diag(1,-1) given the class of g.
ConjClass mirrored_class(const ConjClass& c);

}  // namespace flatsig
