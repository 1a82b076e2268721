#include "orpar/spreads.hpp"

#include <cmath>
#include <limits>

#include "orpar/sampling.hpp"

namespace orpar {

RegularSpread spread_from_space(const Subspace& p) {
  if (p.ambient_dim() != 6 || p.dim() != 4) {
    throw GeometryError(ErrorCode::WrongSignature, "a regular spread needs a 4-space of R^6");
  }
  const Signature sig = gram_signature(p, BilinearForm::klein());
  const bool elliptic = sig.zero == 0 && (sig.positive == 1 || sig.positive == 3);
  if (!elliptic) {
    throw GeometryError(ErrorCode::WrongSignature,
                        "signature (" + std::to_string(sig.positive) + "," +
                            std::to_string(sig.negative) + ") does not cut an elliptic quadric");
  }
  return RegularSpread(p, sig);
}

bool RegularSpread::contains_klein(const Vec6& x, double tol) const {
  const double n = x.norm();
  if (n == 0.0) return false;
  const Vec6 unit = x / n;
  return space_.containment_residual(unit) < tol &&
         std::abs(BilinearForm::klein()(unit, unit)) < tol;
}

Vec6 spread_klein_point(const RegularSpread& s, const Vec4& x) {
  const Subspace m = meet(point_star(ProjPoint(x)), s.space());
  if (m.dim() != 1) {
    throw GeometryError(ErrorCode::DegenerateMeet,
                        "point star meets the spread space in dimension " + std::to_string(m.dim()));
  }
  return m.basis().col(0);
}

Subspace line_through(const RegularSpread& s, const ProjPoint& x) {
  return line_of_klein(spread_klein_point(s, x.ray()));
}

int quadric_orientation_sign(const OrientedSubspace& p, const Vec6& s, const Vec6& w2,
                             const Vec6& w3) {
  const BilinearForm& f = BilinearForm::klein();
  // n = B B^T D s satisfies f(s, n) = |B^T D s|^2 > 0, i.e. it points to f > 0.
  Vec6 n = p.basis() * (p.basis().transpose() * f.apply(Vec(s)));
  const Signature sig = gram_signature(p.base(), f);
  if (sig.positive == 1) n = -n;  // (1,3): the exterior is the f < 0 side
  return manifold_orientation_sign(p, s, {n, w2, w3});
}

namespace {

Vec4 default_auxiliary(const Subspace& line) {
  Vec4 best = Vec4::UnitX();
  double best_residual = -1.0;
  for (int i = 0; i < 4; ++i) {
    const Vec4 e = Vec4::Unit(i);
    const double r = line.containment_residual(e);
    if (r > best_residual) {
      best_residual = r;
      best = e;
    }
  }
  return best;
}

// Pushes the basis (u1, u2) of the line forward through s -> K-point of the
// spread line through s + v, differentiated at s = 0.
struct Pushforward {
  Vec6 base_point;
  Vec6 t1;
  Vec6 t2;
};

Pushforward chart_derivative(const RegularSpread& s, const Vec4& u1, const Vec4& u2,
                             const Vec4& v, double h) {
  const Vec6 k0 = spread_klein_point(s, v);
  auto k_at = [&](const Vec4& shift) {
    Vec6 k = spread_klein_point(s, v + shift);
    return k.dot(k0) < 0 ? Vec6(-k) : k;
  };
  auto central = [&](const Vec4& u, double step) {
    return Vec6((k_at(step * u) - k_at(-step * u)) / (2.0 * step));
  };
  auto richardson = [&](const Vec4& u) {
    return Vec6((4.0 * central(u, 0.5 * h) - central(u, h)) / 3.0);
  };
  return {k0, richardson(u1), richardson(u2)};
}

}  // namespace

OrientedLine oriented_line_through(const OrientedRegularSpread& s, const ProjPoint& x,
                                   const OrientationOptions& options) {
  const Subspace line = line_through(s.spread(), x);
  const Vec4 u1 = line.basis().col(0);
  const Vec4 u2 = line.basis().col(1);

  Vec4 v = options.auxiliary ? *options.auxiliary : default_auxiliary(line);
  Rng rng(options.retry_seed);
  constexpr int kRetries = 8;
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    if (line.containment_residual(v) > 1e-3) {
      const Pushforward d = chart_derivative(s.spread(), u1, u2, v, options.step);
      Eigen::Matrix<double, 6, 2> pair;
      pair << d.t1, d.t2;
      Eigen::JacobiSVD<Eigen::Matrix<double, 6, 2>> svd(pair);
      if (svd.singularValues()[1] >= tol::kDerivativeRank) {
        const int sign = quadric_orientation_sign(s.oriented_space(), d.base_point, d.t1, d.t2);
        return sign > 0 ? oriented_line_to_klein(u1, u2) : oriented_line_to_klein(u2, u1);
      }
    }
    v = random_unit4(rng);
  }
  throw GeometryError(ErrorCode::DegenerateDerivative, "chart derivative stayed rank deficient");
}

double hausdorff_distance(const FiniteLineSample& a, const FiniteLineSample& b) {
  return hausdorff_distance<OrientedLine>(std::span<const OrientedLine>(a),
                                          std::span<const OrientedLine>(b),
                                          &OrientedLine::distance);
}

FiniteLineSample spread_sample(const OrientedRegularSpread& s, int n, std::uint64_t seed) {
  if (n < 1) throw GeometryError(ErrorCode::InvalidParameter, "sample size must be positive");
  FiniteLineSample out;
  out.reserve(static_cast<std::size_t>(n));
  for (const Vec4& p : halton_sphere3(n, seed)) out.push_back(oriented_line_through(s, ProjPoint(p)));
  return out;
}

}  // namespace orpar
