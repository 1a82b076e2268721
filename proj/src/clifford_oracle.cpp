#include <cmath>

#include "orpar/parallelism.hpp"

namespace orpar {

Vec4 quaternion_multiply(const Vec4& a, const Vec4& b) {
  return Vec4(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
              a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
              a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
              a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]);
}

Vec4 quaternion_conjugate(const Vec4& a) { return Vec4(a[0], -a[1], -a[2], -a[3]); }

OrientedLine clifford_oracle(const Vec4& p, const Vec4& u, const Vec4& v, QuaternionSide side) {
  if (std::abs(u.norm() - 1.0) > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9 || std::abs(u.dot(v)) > 1e-9) {
    throw GeometryError(ErrorCode::NotOrthonormal, "oracle needs an orthonormal pair");
  }
  if (side == QuaternionSide::Right) {
    const Vec4 i = quaternion_multiply(quaternion_conjugate(u), v);
    return oriented_line_to_klein(p, quaternion_multiply(p, i));
  }
  const Vec4 i = quaternion_multiply(v, quaternion_conjugate(u));
  return oriented_line_to_klein(p, quaternion_multiply(i, p));
}

}  // namespace orpar
