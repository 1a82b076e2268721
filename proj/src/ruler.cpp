#include "orpar/ruler.hpp"

#include <cmath>

namespace orpar {

Ruler Ruler::standard() {
  Frame f = Frame::Zero();
  f(0, 0) = 1.0;
  f(3, 1) = 1.0;
  f(4, 2) = 1.0;
  f(5, 3) = 1.0;
  return Ruler(OrientedSubspace::from_basis(f), f);
}

Ruler Ruler::from_basis(const Mat& basis) {
  if (basis.rows() != 6 || basis.cols() != 4) {
    throw GeometryError(ErrorCode::InvalidParameter, "ruler basis must be 6x4");
  }
  const BilinearForm& k = BilinearForm::klein();
  const OrientedSubspace space = OrientedSubspace::from_basis(basis);
  if (gram_signature(space.base(), k) != Signature{1, 3, 0}) {
    throw GeometryError(ErrorCode::WrongSignature, "ruler must have signature (1,3)");
  }
  const Mat b = space.basis();
  Eigen::SelfAdjointEigenSolver<Mat> eig(k.gram(b));
  // Eigenvalues ascend: three negative ones, then the positive one.
  Frame frame;
  frame.col(0) = b * eig.eigenvectors().col(3) / std::sqrt(eig.eigenvalues()[3]);
  for (int i = 0; i < 3; ++i) {
    frame.col(i + 1) = b * eig.eigenvectors().col(i) / std::sqrt(-eig.eigenvalues()[i]);
  }
  if (space.orientation_of(frame) < 0) frame.col(3) = -frame.col(3);
  return Ruler(space, frame);
}

Vec4 Ruler::chart_coords(const Vec6& v) const {
  const BilinearForm& k = BilinearForm::klein();
  return Vec4(k(v, frame_.col(0)), -k(v, frame_.col(1)), -k(v, frame_.col(2)),
              -k(v, frame_.col(3)));
}

double interior_value(const Vec4& p) {
  const double n2 = p.squaredNorm();
  if (n2 == 0.0) throw GeometryError(ErrorCode::InvalidParameter, "zero chart vector");
  return Ruler::chart_form(p, p) / n2;
}

}  // namespace orpar
