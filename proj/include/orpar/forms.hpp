#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <vector>

#include "orpar/errors.hpp"
#include "orpar/tolerance.hpp"

namespace orpar {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Symmetric bilinear form that is diagonal in standard coordinates.
class BilinearForm {
 public:
  explicit BilinearForm(std::vector<int> diagonal_signs);

  /// The (3,3) form x1y1 + x2y2 + x3y3 - x4y4 - x5y5 - x6y6 of the Klein model.
  static const BilinearForm& klein();
  static BilinearForm euclidean(int n);

  int ambient_dim() const { return static_cast<int>(signs_.size()); }
  const std::vector<int>& diagonal_signs() const { return signs_; }

  double operator()(const Vec& u, const Vec& v) const;
  Vec apply(const Vec& v) const;
  Mat apply(const Mat& m) const;
  /// Restricted Gram matrix basis^T D basis.
  Mat gram(const Mat& basis) const;

 private:
  std::vector<int> signs_;
  Vec diag_;
};

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Linear subspace of R^n held as a column-orthonormal basis.
class Subspace {
 public:
  /// Span of the given columns; rank decided by singular values above tol.
  static Subspace span(const Mat& vectors, double rank_tol = tol::kRank);
  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);
  /// Coordinate subspace spanned by e_i for the given 0-based indices.
  static Subspace coordinate(int ambient_dim, std::initializer_list<int> indices);
  /// Wraps an already orthonormal basis (checked).
  static Subspace from_orthonormal(const Mat& basis);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  Mat projector() const { return basis_ * basis_.transpose(); }
  /// Euclidean distance of v from the subspace relative to |v|.
  double containment_residual(const Vec& v) const;
  bool contains(const Vec& v, double tol = 1e-9) const { return containment_residual(v) < tol; }

  /// Principal angles (radians, ascending) to a subspace of equal dimension.
  std::vector<double> principal_angles(const Subspace& other) const;
  bool approx_equal(const Subspace& other, double angle_tol = tol::kPrincipalAngle) const;

 private:
  explicit Subspace(Mat basis) : basis_(std::move(basis)) {}
  Mat basis_;
};

/// Subspace together with an orientation: the stored basis order is positive.
class OrientedSubspace {
 public:
  /// Orthonormalizes the given ordered basis while keeping its orientation class.
  static OrientedSubspace from_basis(const Mat& ordered_basis);
  static OrientedSubspace standard(int n);

  const Subspace& base() const { return base_; }
  const Mat& basis() const { return base_.basis(); }
  int dim() const { return base_.dim(); }
  int ambient_dim() const { return base_.ambient_dim(); }

  OrientedSubspace reversed() const;

  /// +1 if the ordered basis (spanning this subspace) is positive, -1 otherwise.
  int orientation_of(const Mat& ordered_basis) const;
  /// Coordinates of v with respect to the stored positive basis.
  Vec coordinates(const Vec& v) const { return basis().transpose() * v; }

  bool approx_equal(const OrientedSubspace& other, double angle_tol = tol::kPrincipalAngle) const;

 private:
  explicit OrientedSubspace(Subspace base) : base_(std::move(base)) {}
  Subspace base_;
};

/// Point of projective space: a unit ray, sign-canonicalized.
class ProjPoint {
 public:
  explicit ProjPoint(const Vec& v);

  const Vec& ray() const { return ray_; }
  int ambient_dim() const { return static_cast<int>(ray_.size()); }

  /// min(|p - q|, |p + q|).
  static double distance(const ProjPoint& p, const ProjPoint& q);

 private:
  Vec ray_;
};

Vec canonicalize_sign(const Vec& v);

/// Orthonormal basis of the null space of m (columns), using singular values <= tol.
Mat null_space(const Mat& m, double tol = tol::kRank);

Signature gram_signature(const Subspace& s, const BilinearForm& f);

Subspace meet(const Subspace& s, const Subspace& t);
Subspace join(const Subspace& s, const Subspace& t);

/// f-orthogonal complement in the whole space.
Subspace polar(const Subspace& s, const BilinearForm& f);
/// f-orthogonal complement of s inside `ambient` (s must lie in ambient).
Subspace polar_within(const Subspace& s, const BilinearForm& f, const Subspace& ambient);

/// Oriented polar: a positive basis of X followed by a positive basis of the
/// result is a positive basis of ambient. Throws DegenerateRestriction when f
/// is degenerate on X.
OrientedSubspace oriented_polar(const OrientedSubspace& x, const BilinearForm& f,
                                const OrientedSubspace& ambient);

/// Orientation sign of a projective 3-space P(P+) as a manifold at the point
/// [s], for the tangent frame represented by three vectors of P.
int manifold_orientation_sign(const OrientedSubspace& p, const Vec& s,
                              const std::vector<Vec>& tangent_basis);

/// Unit bivector u ^ v of an oriented 2-plane (n(n-1)/2 coordinates, i<j order).
Vec plane_bivector(const OrientedSubspace& plane);

}  // namespace orpar
