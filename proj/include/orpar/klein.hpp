#pragma once

#include <utility>

#include "orpar/forms.hpp"

namespace orpar {

/// Plücker coordinates in the order (p12, p13, p14, p23, p24, p34).
struct PlueckerVector {
  Vec6 coords = Vec6::Zero();

  double p12() const { return coords[0]; }
  double p13() const { return coords[1]; }
  double p14() const { return coords[2]; }
  double p23() const { return coords[3]; }
  double p24() const { return coords[4]; }
  double p34() const { return coords[5]; }

  /// p12 p34 - p13 p24 + p14 p23; vanishes on images of lines.
  double quadric() const { return p12() * p34() - p13() * p24() + p14() * p23(); }
};

/// Oriented line of real projective 3-space, stored as a unit f-null vector
/// in diagonal Klein coordinates. Negation is reversal.
class OrientedLine {
 public:
  /// Normalizes; throws NotNull if |f| >= 1e-8 after normalization.
  static OrientedLine from_klein(const Vec6& x);

  const Vec6& klein() const { return klein_; }
  OrientedLine reversed() const { return OrientedLine(-klein_); }
  ProjPoint forget() const { return ProjPoint(klein_); }

  static double distance(const OrientedLine& a, const OrientedLine& b) {
    return (a.klein_ - b.klein_).norm();
  }

 private:
  explicit OrientedLine(const Vec6& x) : klein_(x) {}
  Vec6 klein_;
};

PlueckerVector pluecker(const Vec4& u, const Vec4& v);

/// The fixed orthogonal map T into diagonal coordinates; f(Tp, Tp) = 2 q(p).
Vec6 to_diagonal(const PlueckerVector& p);
PlueckerVector from_diagonal(const Vec6& x);

OrientedLine oriented_line_to_klein(const Vec4& u, const Vec4& v);
/// Orthonormal ordered pair (u, v) spanning the line with u ^ v a positive multiple.
std::pair<Vec4, Vec4> klein_to_oriented_line(const OrientedLine& line);

OrientedLine oriented_line_from(const OrientedSubspace& plane);
OrientedSubspace line_plane(const OrientedLine& line);
/// Unoriented 2-subspace of R^4 represented by a (nonzero, null) Klein vector.
Subspace line_of_klein(const Vec6& x);

/// Totally isotropic 3-space of Klein points of lines through x.
Subspace point_star(const ProjPoint& x);
/// f-orthogonal complement of a null ray (the tangent hyperplane of K at x).
Subspace tangent_hyperplane(const Vec6& x);

/// Lines meet iff their unit Klein vectors are f-orthogonal (|f| < 1e-8).
bool lines_intersect(const OrientedLine& a, const OrientedLine& b);

}  // namespace orpar
