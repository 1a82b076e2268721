#include <array>
#include <cmath>

#include "orpar/spreads.hpp"

namespace orpar {

namespace {

bool on_affine_line(const AffineLine& l, const Vec4& p) {
  const Vec4 d = p - l.offset;
  const double scale = std::max({1.0, p.norm(), l.offset.norm()});
  return (d - l.direction.projector() * d).norm() < 1e-9 * scale;
}

struct Projection {
  Eigen::Vector2d coords;
  double conditioning;
};

// Image of y under the central projection, in the coordinates of `to`.
Projection project(const RegularSpread& s, const Vec4& y, const Vec4& center, const AffineLine& to) {
  const Subspace through = line_of_klein(spread_klein_point(s, y - center));
  Eigen::Matrix4d m;
  m << through.basis(), -to.direction.basis();
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector4d z = svd.solve(to.offset - center);
  return {z.tail<2>(), svd.singularValues()[3] / svd.singularValues()[0]};
}

}  // namespace

OrientedLine perspectivity_transfer(const RegularSpread& s, const AffineLine& from,
                                    const Vec4& center, const AffineLine& to,
                                    const OrientedLine& from_orientation) {
  if (on_affine_line(from, center) || on_affine_line(to, center)) {
    throw GeometryError(ErrorCode::CenterOnLine, "center lies on a line of the perspectivity");
  }
  const Mat& da = from.direction.basis();
  const Mat& db = to.direction.basis();
  const auto [u, v] = klein_to_oriented_line(from_orientation);
  Eigen::Matrix2d given;
  given << da.transpose() * u, da.transpose() * v;
  const double given_det = given.determinant();
  if (std::abs(given_det) < 0.5) {
    throw GeometryError(ErrorCode::InvalidParameter, "orientation is not an orientation of the source line");
  }

  // Points of the source whose images are far from infinity; the best one is used.
  const std::array<Eigen::Vector2d, 5> probes = {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0),
                                                 Eigen::Vector2d(0, 1), Eigen::Vector2d(-1, 0),
                                                 Eigen::Vector2d(0, -1)};
  Eigen::Vector2d best_t = probes[0];
  double best_cond = -1.0;
  for (const auto& t : probes) {
    const Vec4 y = from.offset + da * t;
    if ((y - center).norm() < 1e-9) continue;
    const double c = project(s, y, center, to).conditioning;
    if (c > best_cond) {
      best_cond = c;
      best_t = t;
    }
  }
  if (best_cond < 1e-10) {
    throw GeometryError(ErrorCode::DegenerateDerivative, "perspectivity is singular at every probe");
  }

  const double h = 1e-5;
  Eigen::Matrix2d jac;
  for (int k = 0; k < 2; ++k) {
    const Eigen::Vector2d e = Eigen::Vector2d::Unit(k);
    const auto plus = project(s, Vec4(from.offset + da * (best_t + h * e)), center, to).coords;
    const auto minus = project(s, Vec4(from.offset + da * (best_t - h * e)), center, to).coords;
    jac.col(k) = (plus - minus) / (2.0 * h);
  }
  if (std::abs(jac.determinant()) < tol::kDerivativeRank) {
    throw GeometryError(ErrorCode::DegenerateDerivative, "perspectivity derivative is singular");
  }
  // Push the positive frame of the source forward.
  const Eigen::Matrix2d image = jac * given;
  const Vec4 a = db * image.col(0);
  const Vec4 b = db * image.col(1);
  return oriented_line_to_klein(a, b);
}

}  // namespace orpar
