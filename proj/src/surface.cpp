#include "flatsig/surface.hpp"

#include <cmath>

#include "flatsig/errors.hpp"

namespace flatsig {

std::vector<std::string> SurfacePresentation::generator_names() const {
  std::vector<std::string> names;
  for (int i = 1; i <= genus; ++i) {
    names.push_back("A" + std::to_string(i));
    names.push_back("B" + std::to_string(i));
  }
  for (int j = 1; j <= boundary; ++j) names.push_back("C" + std::to_string(j));
  return names;
}

SurfacePresentation presentation(int g, int n) {
  if (g < 0 || n < 0) throw Error(ErrorCode::InvalidSurface, "negative genus or boundary count");
  if (n == 0) throw Error(ErrorCode::InvalidSurface, "closed surfaces are not supported");
  return {g, n};
}

RepKind Representation::kind() const {
  if (!sl2.empty()) return RepKind::SL2;
  if (!unitary.empty() && unitary.front().is_sl2_blocks()) return RepKind::SL2Blocks;
  return RepKind::Unitary;
}

int Representation::block_count() const {
  if (kind() == RepKind::SL2) return 1;
  return unitary.front().p();
}

std::pair<int, int> Representation::shape() const {
  if (kind() == RepKind::SL2) return {1, 1};
  return {unitary.front().p(), unitary.front().q()};
}

Representation make_sl2_rep(int g, int n, std::vector<SL2Element> images,
                            std::vector<ConjClass> classes, nlohmann::json provenance) {
  Representation rep;
  rep.surface = presentation(g, n);
  if (static_cast<int>(images.size()) != rep.surface.generator_count())
    throw Error(ErrorCode::InvalidInput, "wrong number of generator images");
  rep.sl2 = std::move(images);
  if (classes.empty()) {
    for (int j = 0; j < n; ++j) classes.push_back(classify(rep.c(j)));
  }
  if (static_cast<int>(classes.size()) != n)
    throw Error(ErrorCode::InvalidInput, "wrong number of boundary classes");
  rep.boundary_classes = std::move(classes);
  rep.provenance = std::move(provenance);
  return rep;
}

Representation make_unitary_rep(int g, int n, std::vector<UnitaryElement> images,
                                nlohmann::json provenance) {
  Representation rep;
  rep.surface = presentation(g, n);
  if (static_cast<int>(images.size()) != rep.surface.generator_count())
    throw Error(ErrorCode::InvalidInput, "wrong number of generator images");
  for (const auto& u : images)
    if (u.p() != images.front().p() || u.q() != images.front().q() ||
        u.is_sl2_blocks() != images.front().is_sl2_blocks())
      throw Error(ErrorCode::InvalidInput, "mixed coefficient shapes");
  rep.unitary = std::move(images);
  rep.provenance = std::move(provenance);
  return rep;
}

Representation direct_sum_rep(const std::vector<Representation>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidInput, "empty direct sum");
  const auto& s = parts.front().surface;
  std::vector<UnitaryElement> images;
  std::vector<ConjClass> classes;
  nlohmann::json prov = {{"op", "direct_sum"}, {"parts", nlohmann::json::array()}};
  for (const auto& p : parts) {
    if (p.kind() != RepKind::SL2 || !(p.surface == s))
      throw Error(ErrorCode::InvalidInput, "direct sum needs SL2 reps of one surface");
    classes.insert(classes.end(), p.boundary_classes.begin(), p.boundary_classes.end());
    prov["parts"].push_back(p.provenance);
  }
  for (int k = 0; k < s.generator_count(); ++k) {
    std::vector<SL2Element> blocks;
    for (const auto& p : parts) blocks.push_back(p.sl2[k]);
    images.push_back(direct_sum(blocks));
  }
  Representation rep = make_unitary_rep(s.genus, s.boundary, std::move(images), prov);
  rep.boundary_classes = std::move(classes);
  return rep;
}

Representation block_of(const Representation& rep, int k) {
  if (rep.kind() != RepKind::SL2Blocks) throw Error(ErrorCode::InvalidInput, "not a block rep");
  int n = rep.surface.boundary;
  std::vector<SL2Element> images;
  for (const auto& u : rep.unitary) images.push_back(u.blocks()[k]);
  std::vector<ConjClass> classes(rep.boundary_classes.begin() + k * n,
                                 rep.boundary_classes.begin() + (k + 1) * n);
  return make_sl2_rep(rep.surface.genus, n, std::move(images), std::move(classes));
}

namespace {

template <class T>
T relator_of(const std::vector<T>& im, int g, T acc) {
  for (int i = 0; i < g; ++i) {
    const T& a = im[2 * i];
    const T& b = im[2 * i + 1];
    acc = acc * a * b * a.inverse() * b.inverse();
  }
  for (std::size_t k = 2 * g; k < im.size(); ++k) acc = acc * im[k];
  return acc;
}

template <class T>
void hurwitz_images(std::vector<T>& im, int g, int j) {
  T cj = im[2 * g + j];
  T cn = im[2 * g + j + 1];
  im[2 * g + j] = cn;
  im[2 * g + j + 1] = cn.inverse() * cj * cn;
}

void swap_classes(Representation& r, int j) {
  int n = r.surface.boundary;
  int blocks = static_cast<int>(r.boundary_classes.size()) / std::max(n, 1);
  for (int k = 0; k < blocks; ++k)
    std::swap(r.boundary_classes[k * n + j], r.boundary_classes[k * n + j + 1]);
}

bool same_class(const ConjClass& x, const ConjClass& y) {
  if (x.index() != y.index()) return false;
  if (auto* e = std::get_if<cls::Elliptic>(&x))
    return std::abs(e->value() - std::get<cls::Elliptic>(y).value()) < 1e-6;
  return x == y;
}

}  // namespace

SL2Element relator_sl2(const Representation& rep) {
  if (rep.kind() != RepKind::SL2) throw Error(ErrorCode::InvalidInput, "not an SL2 rep");
  return relator_of(rep.sl2, rep.surface.genus, SL2Element::identity());
}

double relator_defect(const Representation& rep) {
  if (rep.kind() == RepKind::SL2) return relator_sl2(rep).distance(SL2Element::identity());
  auto [p, q] = rep.shape();
  UnitaryElement r = relator_of(rep.unitary, rep.surface.genus,
                                rep.unitary.front() * rep.unitary.front().inverse());
  if (r.is_sl2_blocks()) {
    double d = 0;
    for (const auto& b : r.blocks()) d = std::max(d, b.distance(SL2Element::identity()));
    return d;
  }
  if (r.is_torus()) {
    for (const auto& t : r.angles())
      if (t != 0) return std::abs(std::sin(to_double(t) * 3.14159265358979323846 / 2)) * 2;
    return 0;
  }
  Eigen::MatrixXcd m = r.complex_matrix();
  return (m - Eigen::MatrixXcd::Identity(p + q, p + q)).cwiseAbs().maxCoeff();
}

bool relator_exact_identity(const Representation& rep) {
  if (rep.kind() == RepKind::SL2) {
    SL2Element r = relator_sl2(rep);
    if (auto t = r.rotation_t()) return *t == 0;
    if (auto q = r.rational_entries())
      return (*q)[0] == 1 && (*q)[1] == 0 && (*q)[2] == 0 && (*q)[3] == 1;
    return false;
  }
  if (rep.kind() == RepKind::SL2Blocks) {
    for (int k = 0; k < rep.block_count(); ++k)
      if (!relator_exact_identity(block_of(rep, k))) return false;
    return true;
  }
  for (const auto& u : rep.unitary)
    if (!u.is_torus()) return false;
  return relator_defect(rep) == 0;
}

void validate(const Representation& rep) {
  double defect = relator_defect(rep);
  if (!(defect <= 1e-8))
    throw Error(ErrorCode::InvalidInput, "relator defect " + std::to_string(defect));
  auto check = [](const Representation& r) {
    for (int j = 0; j < r.surface.boundary; ++j) {
      ConjClass c;
      try {
        c = classify(r.c(j));
      } catch (const Error&) {
        continue;
      }
      if (!same_class(c, r.boundary_classes[j]))
        throw Error(ErrorCode::InvalidInput, "boundary " + std::to_string(j + 1) + " recorded as " +
                                                 describe(r.boundary_classes[j]) + " but is " +
                                                 describe(c));
    }
  };
  if (rep.kind() == RepKind::SL2) check(rep);
  if (rep.kind() == RepKind::SL2Blocks)
    for (int k = 0; k < rep.block_count(); ++k) check(block_of(rep, k));
}

Representation glue(const Representation& rep1, int i, const Representation& rep2, int j,
                    const Mat2& conj) {
  if (rep1.kind() != RepKind::SL2 || rep2.kind() != RepKind::SL2)
    throw Error(ErrorCode::InvalidInput, "glue needs SL2 reps");
  int n1 = rep1.surface.boundary;
  int n2 = rep2.surface.boundary;
  if (i != n1 - 1 || j != 0)
    throw Error(ErrorCode::NonStandardIndex, "only last-of-first with first-of-second is supported");
  int g1 = rep1.surface.genus;
  int g2 = rep2.surface.genus;
  std::vector<SL2Element> right;
  for (const auto& x : rep2.sl2) right.push_back(x.conjugated(conj));
  const SL2Element& left_c = rep1.c(n1 - 1);
  SL2Element target = right[2 * g2].inverse();
  auto q1 = left_c.rational_entries();
  auto q2 = target.rational_entries();
  if (q1 && q2) {
    if (*q1 != *q2) throw Error(ErrorCode::HolonomyMismatch, "boundary holonomies differ");
  } else {
    double scale = 1;
    for (double v : left_c.entries()) scale = std::max(scale, std::abs(v));
    if (left_c.distance(target) > 1e-10 * scale)
      throw Error(ErrorCode::HolonomyMismatch,
                  "boundary holonomies differ by " + std::to_string(left_c.distance(target)));
  }
  std::vector<SL2Element> images(right.begin(), right.begin() + 2 * g2);
  images.insert(images.end(), rep1.sl2.begin(), rep1.sl2.begin() + 2 * g1);
  std::vector<ConjClass> classes;
  for (int k = 0; k < n1 - 1; ++k) {
    images.push_back(rep1.c(k));
    classes.push_back(rep1.boundary_classes[k]);
  }
  for (int k = 1; k < n2; ++k) {
    images.push_back(right[2 * g2 + k]);
    classes.push_back(rep2.boundary_classes[k]);
  }
  nlohmann::json prov = {{"op", "glue"}, {"left", rep1.provenance}, {"right", rep2.provenance}};
  return make_sl2_rep(g1 + g2, n1 + n2 - 2, std::move(images), std::move(classes), prov);
}

Representation hurwitz(const Representation& rep, int j) {
  if (j < 0 || j + 1 >= rep.surface.boundary)
    throw Error(ErrorCode::InvalidInput, "Hurwitz index out of range");
  Representation r = rep;
  if (r.kind() == RepKind::SL2)
    hurwitz_images(r.sl2, r.surface.genus, j);
  else
    hurwitz_images(r.unitary, r.surface.genus, j);
  swap_classes(r, j);
  return r;
}

Representation boundary_to_end(const Representation& rep, int j) {
  Representation r = rep;
  for (int k = j; k + 1 < r.surface.boundary; ++k) r = hurwitz(r, k);
  return r;
}

Representation boundary_to_front(const Representation& rep, int j) {
  // Inverse Hurwitz move: (C_k, C_{k+1}) -> (C_k C_{k+1} C_k^-1, C_k).
  Representation r = rep;
  int g = r.surface.genus;
  for (int k = j - 1; k >= 0; --k) {
    auto apply = [&](auto& im) {
      auto ck = im[2 * g + k];
      auto cn = im[2 * g + k + 1];
      im[2 * g + k] = ck * cn * ck.inverse();
      im[2 * g + k + 1] = ck;
    };
    if (r.kind() == RepKind::SL2)
      apply(r.sl2);
    else
      apply(r.unitary);
    swap_classes(r, k);
  }
  return r;
}

Representation rotate_boundaries(const Representation& rep) {
  if (rep.surface.genus != 0) throw Error(ErrorCode::InvalidInput, "rotation needs genus 0");
  Representation r = rep;
  int n = r.surface.boundary;
  auto rot = [](auto& v, int off, int len) {
    std::rotate(v.begin() + off, v.begin() + off + 1, v.begin() + off + len);
  };
  if (r.kind() == RepKind::SL2)
    rot(r.sl2, 0, n);
  else
    rot(r.unitary, 0, n);
  int blocks = static_cast<int>(r.boundary_classes.size()) / n;
  for (int k = 0; k < blocks; ++k) rot(r.boundary_classes, k * n, n);
  return r;
}

ConjClass mirrored_class(const ConjClass& c) { return inverse_class(c); }

Representation involution(const Representation& rep) {
  Representation r = rep;
  for (auto& x : r.sl2) x = mirrored(x);
  for (auto& x : r.unitary) x = x.mirrored();
  for (auto& c : r.boundary_classes) c = mirrored_class(c);
  r.provenance = {{"op", "involution"}, {"of", rep.provenance}};
  return r;
}

Representation conjugate_rep(const Representation& rep, const Mat2& p) {
  if (rep.kind() != RepKind::SL2) throw Error(ErrorCode::InvalidInput, "conjugation needs SL2 rep");
  Representation r = rep;
  for (auto& x : r.sl2) x = x.conjugated(p);
  return r;
}

}  // namespace flatsig
