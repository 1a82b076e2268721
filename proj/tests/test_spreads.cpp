#include <gtest/gtest.h>

#include "support.hpp"

using namespace orpar;
using namespace orpar::testing;

TEST(Spreads, SignatureGate) {
  EXPECT_TRUE(spread_from_space(Subspace::coordinate(6, {0, 3, 4, 5})).type() == (Signature{1, 3, 0}));
  EXPECT_TRUE(spread_from_space(Subspace::coordinate(6, {0, 1, 2, 3})).positive_type());
  EXPECT_THROW(spread_from_space(Subspace::coordinate(6, {0, 1, 3, 4})), GeometryError);
}

TEST(Spreads, EveryPointOnExactlyOneLine) {
  std::vector<OrientedRegularSpread> spreads = {complex_spread()};
  for (std::uint64_t s = 1; s <= 3; ++s) spreads.push_back(random_31_spread(s));
  Rng rng(21);
  for (const auto& sp : spreads) {
    for (int t = 0; t < 500; ++t) {
      const Vec4 x = random_unit4(rng);
      const Subspace line = line_through(sp.spread(), ProjPoint(x));
      ASSERT_EQ(line.dim(), 2);
      EXPECT_LT(line.containment_residual(x), 1e-10);
      const Vec6 k = spread_klein_point(sp.spread(), x);
      EXPECT_TRUE(sp.spread().contains_klein(k));
      // A second point of the same line resolves to the same line.
      const Vec4 y = line.basis() * Eigen::Vector2d(0.3, -1.1);
      EXPECT_TRUE(line_through(sp.spread(), ProjPoint(y)).approx_equal(line, 1e-8));
    }
  }
}

TEST(Spreads, ComplexSpreadLinesAreJ0Pairs) {
  const OrientedRegularSpread s = complex_spread();
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    const Vec4 w = random_unit4(rng);
    const OrientedLine l = oriented_line_through(s, ProjPoint(w));
    // Frozen global sign: the construction yields (w, -J0 w).
    EXPECT_LT(OrientedLine::distance(l, oriented_line_to_klein(w, -j0(w))), 1e-7);
  }
}

TEST(Spreads, OrientationIndependentOfChartChoices) {
  const OrientedRegularSpread s = random_31_spread(5);
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const Vec4 x = random_unit4(rng);
    const OrientedLine ref = oriented_line_through(s, ProjPoint(x));
    for (int k = 0; k < 6; ++k) {
      OrientationOptions o;
      o.auxiliary = random_unit4(rng);
      o.step = k % 2 ? 1e-4 : 1e-6;
      EXPECT_LT(OrientedLine::distance(ref, oriented_line_through(s, ProjPoint(x), o)), 1e-7);
    }
    EXPECT_NEAR(OrientedLine::distance(ref, oriented_line_through(s.reversed(), ProjPoint(x))), 2.0, 1e-7);
  }
}

TEST(Spreads, OrientationVariesContinuouslyWithSpace) {
  const std::vector<double> d = spread_path_distances(31, 10, 64);
  for (std::size_t k = 0; k < d.size(); ++k) {
    EXPECT_LT(d[k], 1.0) << "orientation flip at step " << k;
    if (k > 0) EXPECT_LE(d[k], 1.1 * d[k - 1]);
  }
  EXPECT_LT(d.back(), 0.01);
}

TEST(Spreads, PerspectivityLoopsPreserveOrientation) {
  const OrientedRegularSpread s = complex_spread();
  for (std::uint64_t t = 0; t < 50; ++t) EXPECT_EQ(perspectivity_loop_sign(s, 1000 + t), 1);
}

TEST(Spreads, PerspectivityRejectsCenterOnTarget) {
  const OrientedRegularSpread s = complex_spread();
  const AffineLine from{line_through(s.spread(), ProjPoint(Vec4(1, 0, 0, 0))), Vec4(0, 0, 0, 0)};
  const AffineLine to{line_through(s.spread(), ProjPoint(Vec4(0, 0, 1, 0))), Vec4(0, 0, 1, 1)};
  const OrientedLine o = oriented_line_to_klein(from.direction.basis().col(0), from.direction.basis().col(1));
  EXPECT_THROW(perspectivity_transfer(s.spread(), from, to.offset, to, o), GeometryError);
}

TEST(Spreads, HausdorffDistanceOfFiniteSamples) {
  const OrientedRegularSpread s = complex_spread();
  const FiniteLineSample a = spread_sample(s, 16, 3);
  EXPECT_DOUBLE_EQ(hausdorff_distance(a, a), 0.0);
  FiniteLineSample rev;
  for (const auto& l : a) rev.push_back(l.reversed());
  EXPECT_GT(hausdorff_distance(a, rev), 0.1);
  EXPECT_THROW(hausdorff_distance(a, FiniteLineSample{}), GeometryError);
}
