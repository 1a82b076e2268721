#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "orpar/klein.hpp"
#include "orpar/sampling.hpp"

using namespace orpar;

TEST(Klein, PlueckerMatchesMinorOracle) {
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const Vec4 u = random_gaussian(rng, 4), v = random_gaussian(rng, 4);
    const PlueckerVector p = pluecker(u, v);
    EXPECT_LT((p.coords - oracle::pluecker_minors(u, v)).norm(), 1e-12);
    EXPECT_NEAR(p.quadric(), 0.0, 1e-10);
  }
}

TEST(Klein, DiagonalFormIsTwiceQuadric) {
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    PlueckerVector p;
    p.coords = random_gaussian(rng, 6);
    const Vec6 x = to_diagonal(p);
    EXPECT_NEAR(oracle::klein_form(x, x), 2.0 * p.quadric(), 1e-10);
    EXPECT_LT((from_diagonal(x).coords - p.coords).norm(), 1e-12);
  }
}

TEST(Klein, RoundTripKeepsOrientedLine) {
  Rng rng(3);
  for (int t = 0; t < 10000; ++t) {
    const OrientedLine l = oriented_line_to_klein(random_gaussian(rng, 4), random_gaussian(rng, 4));
    EXPECT_NEAR(l.klein().norm(), 1.0, 1e-12);
    EXPECT_LT(std::abs(oracle::klein_form(l.klein(), l.klein())), 1e-10);
    const auto [a, b] = klein_to_oriented_line(l);
    EXPECT_LT(OrientedLine::distance(oriented_line_to_klein(a, b), l), 1e-10);
  }
}

TEST(Klein, SwappingRowsReversesLine) {
  Rng rng(4);
  const Vec4 u = random_gaussian(rng, 4), v = random_gaussian(rng, 4);
  EXPECT_NEAR(OrientedLine::distance(oriented_line_to_klein(u, v), oriented_line_to_klein(v, u)), 2.0, 1e-12);
}

TEST(Klein, RejectsNonNullAndDependentInput) {
  Vec6 x = Vec6::Zero();
  x[0] = 1.0;
  EXPECT_THROW(OrientedLine::from_klein(x), GeometryError);
  EXPECT_THROW(oriented_line_to_klein(Vec4(1, 0, 0, 0), Vec4(2, 0, 0, 0)), GeometryError);
}

TEST(Klein, IntersectionAgreesWithRankOracle) {
  Rng rng(5);
  int meeting = 0;
  for (int t = 0; t < 4000; ++t) {
    const Vec4 u1 = random_gaussian(rng, 4), v1 = random_gaussian(rng, 4);
    Vec4 u2 = random_gaussian(rng, 4);
    const Vec4 v2 = random_gaussian(rng, 4);
    // Half of the pairs share a point.
    if (t % 2 == 0) u2 = 0.7 * u1 - 1.3 * v1;
    const bool oracle_meets = oracle::lines_meet_by_rank(u1, v1, u2, v2);
    meeting += oracle_meets;
    EXPECT_EQ(lines_intersect(oriented_line_to_klein(u1, v1), oriented_line_to_klein(u2, v2)), oracle_meets);
  }
  EXPECT_EQ(meeting, 2000);
}

TEST(Klein, PointStarContainsLinesThroughPoint) {
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    const Vec4 x = random_gaussian(rng, 4);
    const Subspace star = point_star(ProjPoint(x));
    EXPECT_EQ(star.dim(), 3);
    const OrientedLine l = oriented_line_to_klein(x, random_gaussian(rng, 4));
    EXPECT_LT(star.containment_residual(l.klein()), 1e-9);
    const OrientedLine m = oriented_line_to_klein(random_gaussian(rng, 4), random_gaussian(rng, 4));
    EXPECT_GT(star.containment_residual(m.klein()), 1e-6);
  }
}

TEST(Klein, LineOfKleinSpansRows) {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const Vec4 u = random_gaussian(rng, 4), v = random_gaussian(rng, 4);
    const Subspace s = line_of_klein(oriented_line_to_klein(u, v).klein());
    EXPECT_LT(s.containment_residual(u), 1e-9);
    EXPECT_LT(s.containment_residual(v), 1e-9);
  }
}
