#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orpar/klein.hpp"

namespace orpar {

/// Regular spread K ∩ P for a 4-space P of signature (1,3) or (3,1).
class RegularSpread {
 public:
  const Subspace& space() const { return space_; }
  const Signature& type() const { return type_; }
  /// True for (3,1), whose interior is the f < 0 side.
  bool positive_type() const { return type_.positive == 3; }

  /// Membership of a Klein vector in the quadric K ∩ P.
  bool contains_klein(const Vec6& x, double tol = 1e-9) const;

 private:
  friend RegularSpread spread_from_space(const Subspace& p);
  RegularSpread(Subspace space, Signature type) : space_(std::move(space)), type_(type) {}

  Subspace space_;
  Signature type_;
};

/// Throws WrongSignature unless p is a (1,3)- or (3,1)-space of R^6.
RegularSpread spread_from_space(const Subspace& p);

class OrientedRegularSpread {
 public:
  explicit OrientedRegularSpread(OrientedSubspace space)
      : spread_(spread_from_space(space.base())), space_(std::move(space)) {}

  const RegularSpread& spread() const { return spread_; }
  const OrientedSubspace& oriented_space() const { return space_; }
  OrientedRegularSpread reversed() const { return OrientedRegularSpread(space_.reversed()); }

 private:
  RegularSpread spread_;
  OrientedSubspace space_;
};

/// Unit Klein vector of the spread line containing the point [x] (sign unspecified).
Vec6 spread_klein_point(const RegularSpread& s, const Vec4& x);
/// The spread line through [x] as a 2-subspace of R^4.
Subspace line_through(const RegularSpread& s, const ProjPoint& x);

/// Orientation of the quadric K ∩ P induced from P+ at the null vector s, for
/// the tangent pair (w2, w3): +1 when (outward, w2, w3) is positive.
int quadric_orientation_sign(const OrientedSubspace& p, const Vec6& s, const Vec6& w2,
                             const Vec6& w3);

struct OrientationOptions {
  /// Central-difference step of the chart derivative (refined once by Richardson).
  double step = 1e-5;
  /// Translation vector v of the chart s -> spread line through s + v.
  std::optional<Vec4> auxiliary;
  std::uint64_t retry_seed = 0x5eedULL;
};

/// The spread line through [x], oriented coherently with the orientation of the
/// spread manifold induced by the oriented space.
OrientedLine oriented_line_through(const OrientedRegularSpread& s, const ProjPoint& x,
                                   const OrientationOptions& options = {});

/// Affine line offset + direction of the translation plane of a spread; the
/// direction is a spread element.
struct AffineLine {
  Subspace direction;
  Vec4 offset;
};

/// Transports an orientation of `from` to `to` through the central projection
/// y -> (y ∨ center) ∧ to of the translation plane. Orientations of affine lines
/// are orientations of their direction 2-spaces.
OrientedLine perspectivity_transfer(const RegularSpread& s, const AffineLine& from,
                                    const Vec4& center, const AffineLine& to,
                                    const OrientedLine& from_orientation);

using FiniteLineSample = std::vector<OrientedLine>;

template <typename T, typename Metric>
double hausdorff_distance(std::span<const T> a, std::span<const T> b, Metric metric) {
  if (a.empty() || b.empty()) throw GeometryError(ErrorCode::EmptySet, "Hausdorff distance of an empty set");
  auto directed = [&](std::span<const T> from, std::span<const T> to) {
    double worst = 0.0;
    for (const T& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const T& y : to) best = std::min(best, metric(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance(const FiniteLineSample& a, const FiniteLineSample& b);

/// Deterministic low-discrepancy sample of n lines of the oriented spread.
FiniteLineSample spread_sample(const OrientedRegularSpread& s, int n, std::uint64_t seed);

}  // namespace orpar
