#include "orpar/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orpar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateRestriction: return "DegenerateRestriction";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DependentVectors: return "DependentVectors";
    case ErrorCode::NotNull: return "NotNull";
    case ErrorCode::WrongSignature: return "WrongSignature";
    case ErrorCode::DegenerateMeet: return "DegenerateMeet";
    case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorCode::CenterOnLine: return "CenterOnLine";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::FixedPointDetected: return "FixedPointDetected";
    case ErrorCode::InteriorPoint: return "InteriorPoint";
    case ErrorCode::NotCharMapForm: return "NotCharMapForm";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::StarRejected: return "StarRejected";
    case ErrorCode::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorCode::NoMatch: return "NoMatch";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// BilinearForm

BilinearForm::BilinearForm(std::vector<int> diagonal_signs) : signs_(std::move(diagonal_signs)) {
  diag_.resize(static_cast<Eigen::Index>(signs_.size()));
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (signs_[i] != 1 && signs_[i] != -1) {
      throw GeometryError(ErrorCode::InvalidParameter, "diagonal entries must be +1 or -1");
    }
    diag_[static_cast<Eigen::Index>(i)] = signs_[i];
  }
}

const BilinearForm& BilinearForm::klein() {
  static const BilinearForm form({1, 1, 1, -1, -1, -1});
  return form;
}

BilinearForm BilinearForm::euclidean(int n) { return BilinearForm(std::vector<int>(n, 1)); }

double BilinearForm::operator()(const Vec& u, const Vec& v) const {
  return (u.array() * diag_.array() * v.array()).sum();
}

Vec BilinearForm::apply(const Vec& v) const { return diag_.cwiseProduct(v); }

Mat BilinearForm::apply(const Mat& m) const { return diag_.asDiagonal() * m; }

Mat BilinearForm::gram(const Mat& basis) const { return basis.transpose() * apply(basis); }

// ---------------------------------------------------------------------------
// Subspace

Mat null_space(const Mat& m, double tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  const double thr = tol * std::max(1.0, sv.size() ? sv[0] : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > thr) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

Subspace Subspace::span(const Mat& vectors, double rank_tol) {
  const Eigen::Index n = vectors.rows();
  if (vectors.cols() == 0) return zero(static_cast<int>(n));
  Eigen::JacobiSVD<Mat> svd(vectors, Eigen::ComputeThinU);
  const Vec& sv = svd.singularValues();
  if (sv[0] == 0.0) return zero(static_cast<int>(n));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > rank_tol * sv[0]) ++rank;
  }
  return Subspace(svd.matrixU().leftCols(rank));
}

Subspace Subspace::zero(int ambient_dim) { return Subspace(Mat(ambient_dim, 0)); }

Subspace Subspace::full(int ambient_dim) { return Subspace(Mat::Identity(ambient_dim, ambient_dim)); }

Subspace Subspace::coordinate(int ambient_dim, std::initializer_list<int> indices) {
  Mat b = Mat::Zero(ambient_dim, static_cast<Eigen::Index>(indices.size()));
  Eigen::Index col = 0;
  for (int i : indices) {
    if (i < 0 || i >= ambient_dim) {
      throw GeometryError(ErrorCode::InvalidParameter, "coordinate index out of range");
    }
    b(i, col++) = 1.0;
  }
  return span(b);
}

Subspace Subspace::from_orthonormal(const Mat& basis) {
  const Mat gram = basis.transpose() * basis;
  if ((gram - Mat::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() > 1e-10) {
    throw GeometryError(ErrorCode::NotOrthonormal, "basis is not column-orthonormal");
  }
  return Subspace(basis);
}

double Subspace::containment_residual(const Vec& v) const {
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  const Vec r = v - basis_ * (basis_.transpose() * v);
  return r.norm() / norm;
}

std::vector<double> Subspace::principal_angles(const Subspace& other) const {
  if (other.dim() != dim()) {
    throw GeometryError(ErrorCode::InvalidParameter, "principal angles need equal dimensions");
  }
  std::vector<double> angles;
  if (dim() == 0) return angles;
  // sin-based evaluation keeps small angles accurate.
  const Mat residual = other.basis() - basis_ * (basis_.transpose() * other.basis());
  Eigen::JacobiSVD<Mat> svd(residual);
  const Vec& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) angles.push_back(std::asin(std::min(1.0, s[i])));
  std::sort(angles.begin(), angles.end());
  return angles;
}

bool Subspace::approx_equal(const Subspace& other, double angle_tol) const {
  if (other.ambient_dim() != ambient_dim() || other.dim() != dim()) return false;
  if (dim() == 0) return true;
  const auto angles = principal_angles(other);
  return angles.back() < angle_tol;
}

// ---------------------------------------------------------------------------
// OrientedSubspace

OrientedSubspace OrientedSubspace::from_basis(const Mat& ordered_basis) {
  const Eigen::Index n = ordered_basis.rows();
  const Eigen::Index k = ordered_basis.cols();
  if (k == 0 || k > n) {
    throw GeometryError(ErrorCode::InvalidParameter, "oriented subspace needs 1..n basis vectors");
  }
  Eigen::HouseholderQR<Mat> qr(ordered_basis);
  const Mat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const double scale = std::max(r.cwiseAbs().maxCoeff(), 1e-300);
  Mat q = qr.householderQ() * Mat::Identity(n, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(r(i, i)) <= tol::kDependent * scale) {
      throw GeometryError(ErrorCode::DependentVectors, "ordered basis is rank deficient");
    }
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return OrientedSubspace(Subspace::from_orthonormal(q));
}

OrientedSubspace OrientedSubspace::standard(int n) { return from_basis(Mat::Identity(n, n)); }

OrientedSubspace OrientedSubspace::reversed() const {
  Mat b = basis();
  b.col(b.cols() - 1) = -b.col(b.cols() - 1);
  return OrientedSubspace(Subspace::from_orthonormal(b));
}

int OrientedSubspace::orientation_of(const Mat& ordered_basis) const {
  if (ordered_basis.cols() != dim()) {
    throw GeometryError(ErrorCode::InvalidParameter, "basis size does not match dimension");
  }
  const double d = (basis().transpose() * ordered_basis).determinant();
  if (std::abs(d) <= tol::kFrameDet) {
    throw GeometryError(ErrorCode::DegenerateFrame, "basis does not span the subspace");
  }
  return d > 0 ? 1 : -1;
}

bool OrientedSubspace::approx_equal(const OrientedSubspace& other, double angle_tol) const {
  if (!base_.approx_equal(other.base_, angle_tol)) return false;
  return (basis().transpose() * other.basis()).determinant() > 0;
}

// ---------------------------------------------------------------------------
// ProjPoint

Vec canonicalize_sign(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol::kCanonicalSign) return v[i] < 0 ? Vec(-v) : v;
  }
  return v;
}

ProjPoint::ProjPoint(const Vec& v) {
  const double n = v.norm();
  if (n == 0.0) throw GeometryError(ErrorCode::InvalidParameter, "zero vector is not a point");
  ray_ = canonicalize_sign(v / n);
}

double ProjPoint::distance(const ProjPoint& p, const ProjPoint& q) {
  return std::min((p.ray_ - q.ray_).norm(), (p.ray_ + q.ray_).norm());
}

// ---------------------------------------------------------------------------
// Operations

Signature gram_signature(const Subspace& s, const BilinearForm& f) {
  if (s.ambient_dim() != f.ambient_dim()) {
    throw GeometryError(ErrorCode::InvalidParameter, "form and subspace dimensions differ");
  }
  Signature sig;
  if (s.dim() == 0) return sig;
  Eigen::SelfAdjointEigenSolver<Mat> eig(f.gram(s.basis()), Eigen::EigenvaluesOnly);
  const Vec& ev = eig.eigenvalues();
  // Bases are orthonormal, so eigenvalues are bounded by the form's scale 1;
  // the floor keeps totally isotropic spaces from being judged relative to noise.
  const double thr = tol::kSignatureRel * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > thr) {
      ++sig.positive;
    } else if (ev[i] < -thr) {
      ++sig.negative;
    } else {
      ++sig.zero;
    }
  }
  return sig;
}

Subspace meet(const Subspace& s, const Subspace& t) {
  const int n = s.ambient_dim();
  if (t.ambient_dim() != n) throw GeometryError(ErrorCode::InvalidParameter, "ambient dims differ");
  if (s.dim() == 0 || t.dim() == 0) return Subspace::zero(n);
  Mat stacked(2 * n, n);
  stacked.topRows(n) = Mat::Identity(n, n) - s.projector();
  stacked.bottomRows(n) = Mat::Identity(n, n) - t.projector();
  return Subspace::from_orthonormal(null_space(stacked, tol::kRank));
}

Subspace join(const Subspace& s, const Subspace& t) {
  const int n = s.ambient_dim();
  if (t.ambient_dim() != n) throw GeometryError(ErrorCode::InvalidParameter, "ambient dims differ");
  Mat both(n, s.dim() + t.dim());
  both << s.basis(), t.basis();
  return Subspace::span(both, tol::kRank);
}

Subspace polar(const Subspace& s, const BilinearForm& f) {
  return polar_within(s, f, Subspace::full(s.ambient_dim()));
}

Subspace polar_within(const Subspace& s, const BilinearForm& f, const Subspace& ambient) {
  if (s.ambient_dim() != f.ambient_dim() || ambient.ambient_dim() != f.ambient_dim()) {
    throw GeometryError(ErrorCode::InvalidParameter, "form and subspace dimensions differ");
  }
  if (s.dim() == 0) return ambient;
  const Mat constraints = f.apply(s.basis()).transpose() * ambient.basis();
  const Mat coeffs = null_space(constraints, tol::kRank);
  return Subspace::from_orthonormal(ambient.basis() * coeffs);
}

OrientedSubspace oriented_polar(const OrientedSubspace& x, const BilinearForm& f,
                                const OrientedSubspace& ambient) {
  if (gram_signature(x.base(), f).zero > 0) {
    throw GeometryError(ErrorCode::DegenerateRestriction, "form is degenerate on the subspace");
  }
  const Subspace y = polar_within(x.base(), f, ambient.base());
  if (y.dim() == 0 || x.dim() + y.dim() != ambient.dim()) {
    throw GeometryError(ErrorCode::InvalidParameter, "oriented polar needs a proper subspace");
  }
  Mat yb = y.basis();
  Mat both(x.ambient_dim(), ambient.dim());
  both << x.basis(), yb;
  if ((ambient.basis().transpose() * both).determinant() < 0) {
    yb.col(yb.cols() - 1) = -yb.col(yb.cols() - 1);
  }
  return OrientedSubspace::from_basis(yb);
}

int manifold_orientation_sign(const OrientedSubspace& p, const Vec& s,
                              const std::vector<Vec>& tangent_basis) {
  if (p.dim() != 4 || tangent_basis.size() != 3) {
    throw GeometryError(ErrorCode::InvalidParameter,
                        "orientation descends only for a 4-dim space with a 3-vector frame");
  }
  Eigen::Matrix4d frame;
  auto put = [&](int col, const Vec& v) {
    const Vec c = p.coordinates(v);
    const double n = c.norm();
    if (n == 0.0) throw GeometryError(ErrorCode::DegenerateFrame, "zero frame vector");
    frame.col(col) = c / n;
  };
  put(0, s);
  for (int i = 0; i < 3; ++i) put(i + 1, tangent_basis[static_cast<std::size_t>(i)]);
  const double d = frame.determinant();
  if (std::abs(d) < tol::kFrameDet) {
    throw GeometryError(ErrorCode::DegenerateFrame, "frame does not span the space");
  }
  return d > 0 ? 1 : -1;
}

Vec plane_bivector(const OrientedSubspace& plane) {
  if (plane.dim() != 2) throw GeometryError(ErrorCode::InvalidParameter, "bivector needs a 2-plane");
  const Eigen::Index n = plane.ambient_dim();
  const Vec u = plane.basis().col(0);
  const Vec v = plane.basis().col(1);
  Vec b(n * (n - 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) b[k++] = u[i] * v[j] - u[j] * v[i];
  }
  return b;
}

}  // namespace orpar
