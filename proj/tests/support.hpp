#pragma once

// Scenario builders shared by the unit tests and the acceptance binary.

#include <vector>

#include "oracles/oracles.hpp"
#include "orpar/sampling.hpp"
#include "orpar/spreads.hpp"

namespace orpar::testing {

/// span(e1, e4, e5, e6) with that basis order positive.
inline OrientedRegularSpread complex_spread() {
  Mat b = Mat::Zero(6, 4);
  b(0, 0) = 1;
  b(3, 1) = 1;
  b(4, 2) = 1;
  b(5, 3) = 1;
  return OrientedRegularSpread(OrientedSubspace::from_basis(b));
}

/// J0(a, b, c, d) = (-b, a, -d, c).
inline Vec4 j0(const Vec4& w) { return Vec4(-w[1], w[0], -w[3], w[2]); }

/// Oriented (3,1)-space polar to an oriented negative definite 2-plane.
inline OrientedRegularSpread spread_polar_to(const Mat& negative_plane) {
  return OrientedRegularSpread(oriented_polar(OrientedSubspace::from_basis(negative_plane), BilinearForm::klein(),
                                              OrientedSubspace::standard(6)));
}

inline OrientedRegularSpread random_31_spread(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return spread_polar_to(oracle::random_negative_plane(rng));
}

/// Hausdorff distances of spread samples along the path of (3,1)-spaces
/// polar to B0 + t (B1 - B0), t = t0 / 2^k, against the limit t = 0.
inline std::vector<double> spread_path_distances(std::uint64_t seed, int steps, int points, double t0 = 0.5) {
  std::mt19937_64 rng(seed);
  const Mat b0 = oracle::random_negative_plane(rng);
  const Mat b1 = oracle::random_negative_plane(rng);
  const std::vector<Vec4> xs = halton_sphere3(points, seed);
  auto sample = [&](const OrientedRegularSpread& s) {
    FiniteLineSample out;
    for (const Vec4& x : xs) out.push_back(oriented_line_through(s, ProjPoint(x)));
    return out;
  };
  const FiniteLineSample limit = sample(spread_polar_to(b0));
  std::vector<double> d;
  double t = t0;
  for (int k = 0; k < steps; ++k, t *= 0.5) d.push_back(hausdorff_distance(sample(spread_polar_to(b0 + t * (b1 - b0))), limit));
  return d;
}

/// Runs one perspectivity loop K -> L -> M -> K in the translation plane of
/// the spread; returns +1 when the orientation of K comes back unchanged,
/// -1 when reversed and 0 otherwise.
inline int perspectivity_loop_sign(const OrientedRegularSpread& s, std::uint64_t seed) {
  Rng rng(seed);
  auto make_line = [&] {
    return AffineLine{line_through(s.spread(), ProjPoint(random_unit4(rng))), Vec4(random_gaussian(rng, 4))};
  };
  const AffineLine k = make_line(), l = make_line(), m = make_line();
  const Vec4 c1 = random_gaussian(rng, 4), c2 = random_gaussian(rng, 4), c3 = random_gaussian(rng, 4);
  const OrientedLine ko = oriented_line_to_klein(k.direction.basis().col(0), k.direction.basis().col(1));
  const OrientedLine lo = perspectivity_transfer(s.spread(), k, c1, l, ko);
  const OrientedLine mo = perspectivity_transfer(s.spread(), l, c2, m, lo);
  const OrientedLine back = perspectivity_transfer(s.spread(), m, c3, k, mo);
  if (OrientedLine::distance(back, ko) < 1e-6) return 1;
  if (OrientedLine::distance(back, ko.reversed()) < 1e-6) return -1;
  return 0;
}

}  // namespace orpar::testing
