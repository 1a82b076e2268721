#pragma once

#include "orpar/forms.hpp"

namespace orpar {

using Frame = Eigen::Matrix<double, 6, 4>;

/// Oriented (1,3)-subspace R of R^6 with an f-orthonormal frame (r0; r1, r2, r3),
/// f(r0,r0) = 1, f(ri,ri) = -1. Chart coordinates (w, a, b, c) stand for the
/// vector w r0 + a r1 + b r2 + c r3; the quadric Q is the unit sphere of the
/// affine chart w = 1 and the interior is the open unit ball.
class Ruler {
 public:
  /// span(e1, e4, e5, e6) with that frame order positive.
  static Ruler standard();
  /// Any basis of a (1,3)-space; the frame is oriented like the given basis.
  static Ruler from_basis(const Mat& basis);

  const OrientedSubspace& space() const { return space_; }
  const Frame& frame() const { return frame_; }

  Vec6 lift(const Vec4& chart) const { return frame_ * chart; }
  Mat lift(const Mat& chart) const { return frame_ * chart; }
  /// Inverse of lift on R (uses f-orthonormality of the frame).
  Vec4 chart_coords(const Vec6& v) const;

  /// Chart form w^2 - a^2 - b^2 - c^2.
  static double chart_form(const Vec4& u, const Vec4& v) {
    return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
  }

 private:
  Ruler(OrientedSubspace space, Frame frame) : space_(std::move(space)), frame_(frame) {}

  OrientedSubspace space_;
  Frame frame_;
};

/// Homogeneous chart vector of an affine point.
inline Vec4 affine_point(const Vec3& x) { return Vec4(1.0, x[0], x[1], x[2]); }
/// Homogeneous chart vector of an ideal point (direction).
inline Vec4 ideal_point(const Vec3& d) { return Vec4(0.0, d[0], d[1], d[2]); }

/// f(p,p) / |p|^2 in the chart form; > 0 inside the ball.
double interior_value(const Vec4& p);
/// Relative threshold above which a chart point counts as interior.
inline constexpr double kInteriorThreshold = 1e-9;
inline bool is_interior(const Vec4& p) { return interior_value(p) > kInteriorThreshold; }

}  // namespace orpar
