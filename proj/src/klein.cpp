#include "orpar/klein.hpp"

#include <cmath>

namespace orpar {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool is_null_unit(const Vec6& x, double tol) {
  return std::abs(BilinearForm::klein()(x, x)) < tol;
}

}  // namespace

OrientedLine OrientedLine::from_klein(const Vec6& x) {
  const double n = x.norm();
  if (n == 0.0) throw GeometryError(ErrorCode::NotNull, "zero Klein vector");
  const Vec6 unit = x / n;
  if (!is_null_unit(unit, tol::kNullInput)) {
    throw GeometryError(ErrorCode::NotNull, "Klein vector is not on the quadric");
  }
  return OrientedLine(unit);
}

PlueckerVector pluecker(const Vec4& u, const Vec4& v) {
  PlueckerVector p;
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) p.coords[k++] = u[i] * v[j] - u[j] * v[i];
  }
  if (p.coords.cwiseAbs().maxCoeff() <= tol::kDependent * u.norm() * v.norm() ||
      u.norm() == 0.0 || v.norm() == 0.0) {
    throw GeometryError(ErrorCode::DependentVectors, "spanning vectors are dependent");
  }
  return p;
}

Vec6 to_diagonal(const PlueckerVector& p) {
  Vec6 x;
  x << p.p12() + p.p34(), p.p14() + p.p23(), p.p24() - p.p13(),
       p.p12() - p.p34(), p.p14() - p.p23(), p.p24() + p.p13();
  return x * kInvSqrt2;
}

PlueckerVector from_diagonal(const Vec6& x) {
  PlueckerVector p;
  p.coords << x[0] + x[3], x[5] - x[2], x[1] + x[4], x[1] - x[4], x[2] + x[5], x[0] - x[3];
  p.coords *= kInvSqrt2;
  return p;
}

OrientedLine oriented_line_to_klein(const Vec4& u, const Vec4& v) {
  return OrientedLine::from_klein(to_diagonal(pluecker(u, v)));
}

Subspace line_of_klein(const Vec6& x) {
  const PlueckerVector p = from_diagonal(x);
  // M = u v^T - v u^T has column space span(u, v).
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      m(i, j) = p.coords[k];
      m(j, i) = -p.coords[k];
      ++k;
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(m, Eigen::ComputeFullU);
  return Subspace::from_orthonormal(svd.matrixU().leftCols(2));
}

std::pair<Vec4, Vec4> klein_to_oriented_line(const OrientedLine& line) {
  const Subspace s = line_of_klein(line.klein());
  Vec4 u = s.basis().col(0);
  Vec4 v = s.basis().col(1);
  if (to_diagonal(pluecker(u, v)).dot(line.klein()) < 0) std::swap(u, v);
  return {u, v};
}

OrientedLine oriented_line_from(const OrientedSubspace& plane) {
  if (plane.dim() != 2 || plane.ambient_dim() != 4) {
    throw GeometryError(ErrorCode::InvalidParameter, "a line is a 2-subspace of R^4");
  }
  return oriented_line_to_klein(plane.basis().col(0), plane.basis().col(1));
}

OrientedSubspace line_plane(const OrientedLine& line) {
  const auto [u, v] = klein_to_oriented_line(line);
  Mat b(4, 2);
  b << u, v;
  return OrientedSubspace::from_basis(b);
}

Subspace point_star(const ProjPoint& x) {
  if (x.ambient_dim() != 4) throw GeometryError(ErrorCode::InvalidParameter, "point of P3 expected");
  const Vec4 p = x.ray();
  const Mat complement = null_space(p.transpose());
  Mat b(6, 3);
  for (int i = 0; i < 3; ++i) b.col(i) = to_diagonal(pluecker(p, complement.col(i)));
  return Subspace::span(b);
}

Subspace tangent_hyperplane(const Vec6& x) {
  const double n = x.norm();
  if (n == 0.0 || !is_null_unit(x / n, tol::kNullInput)) {
    throw GeometryError(ErrorCode::NotNull, "tangent hyperplane needs a point of the quadric");
  }
  Mat col = x / n;
  return polar(Subspace::span(col), BilinearForm::klein());
}

bool lines_intersect(const OrientedLine& a, const OrientedLine& b) {
  return std::abs(BilinearForm::klein()(a.klein(), b.klein())) < 1e-8;
}

}  // namespace orpar
