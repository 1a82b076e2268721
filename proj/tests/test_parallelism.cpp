#include <gtest/gtest.h>

#include "orpar/families.hpp"
#include "orpar/parallelism.hpp"

using namespace orpar;

namespace {

/// Orthonormal rows of an oriented line, orientation kept.
std::pair<Vec4, Vec4> orthonormal_rows(const OrientedLine& l) {
  auto [u, v] = klein_to_oriented_line(l);
  u.normalize();
  v = (v - v.dot(u) * u).normalized();
  return {u, v};
}

BuildOptions small_build() {
  BuildOptions b;
  b.incidence = SamplerSpec{300, 150, 50, 3};
  b.entry_leave_samples = 100;
  b.continuity.n_pairs = 20;
  return b;
}

}  // namespace

TEST(Parallelism, CliffordMatchesRightQuaternionOracle) {
  const OrientedParallelism par = build_parallelism(clifford_star(Ruler::standard()), false);
  Rng rng(41);
  int left_agree = 0;
  for (int t = 0; t < 200; ++t) {
    const OrientedLine l = random_oriented_line(rng);
    const Vec4 p = random_unit4(rng);
    const auto [u, v] = orthonormal_rows(l);
    const OrientedLine got = par.parallel_through(ProjPoint(p), l);
    const OrientedLine right = clifford_oracle(p, u, v, QuaternionSide::Right);
    EXPECT_LT(OrientedLine::distance(got, right), 1e-8);
    const OrientedLine left = clifford_oracle(p, u, v, QuaternionSide::Left);
    left_agree += std::min(OrientedLine::distance(got, left), OrientedLine::distance(got, left.reversed())) < 1e-8;
  }
  EXPECT_EQ(left_agree, 0);
}

TEST(Parallelism, CliffordRulerIsALine) {
  const OrientedParallelism par = build_parallelism(clifford_star(Ruler::standard()), false);
  EXPECT_EQ(ruler_dimension(par.hfd(), 30, 1), 2);
  // L = (e1, e2): r(x) is the chart point (1, 0, 0) on the quadric.
  const Vec4 r = par.hfd().r_point(oriented_line_to_klein(Vec4::UnitX(), Vec4::UnitY()).klein());
  EXPECT_NEAR(std::abs(r[1] / r[0]), 1.0, 1e-9);
  EXPECT_NEAR(r[2] / r[0], 0.0, 1e-9);
  EXPECT_NEAR(r[3] / r[0], 0.0, 1e-9);
}

TEST(Parallelism, PointOnLineEchoesLine) {
  const OrientedParallelism par = build_parallelism(glued_star(Ruler::standard(), 0.3, -0.4), false);
  Rng rng(43);
  for (int t = 0; t < 10; ++t) {
    const OrientedLine l = random_oriented_line(rng);
    const auto [u, v] = klein_to_oriented_line(l);
    EXPECT_LT(OrientedLine::distance(par.parallel_through(ProjPoint(0.4 * u - 0.9 * v), l), l), 1e-7);
  }
}

TEST(Parallelism, GluedAndConeParallelismsSatisfyAxioms) {
  const Ruler r = Ruler::standard();
  for (const GlCandidate& star : {glued_star(r, 0.3, -0.4), combine_case1(r)}) {
    const OrientedParallelism par = build_parallelism(star, true, small_build());
    EXPECT_TRUE(verify_partition(par, 60, 5).pass) << star.name();
    ContinuitySpec c;
    c.n_pairs = 20;
    EXPECT_TRUE(verify_hfd_plus(par.hfd(), 60, 5, c).pass) << star.name();
    EXPECT_EQ(ruler_dimension(par.hfd(), 30, 1), 3) << star.name();
  }
}

TEST(Parallelism, ReversedLineResolvesToCompanion) {
  const OrientedParallelism par = build_parallelism(glued_star(Ruler::standard(), 0.3, -0.4), false);
  Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    const OrientedLine l = random_oriented_line(rng);
    const SpreadMatch m = par.spread_of(l);
    const SpreadMatch rev = par.spread_of(l.reversed());
    ASSERT_TRUE(m.companion);
    EXPECT_TRUE(rev.spread->oriented_space().approx_equal(m.companion->oriented_space(), 1e-6));
  }
}

TEST(Parallelism, StrictBuildRejectsCaseTwo) {
  try {
    build_parallelism(combine_case2(Ruler::standard()), true, small_build());
    FAIL() << "case 2 star was accepted";
  } catch (const StarRejectedError& e) {
    EXPECT_FALSE(e.report().pass);
  }
}

TEST(Parallelism, OracleRequiresOrthonormalPair) {
  EXPECT_THROW(clifford_oracle(Vec4::UnitZ(), Vec4(1, 0, 0, 0), Vec4(1, 1, 0, 0)), GeometryError);
  const Vec4 q(0.3, -0.2, 0.5, 0.1);
  EXPECT_LT((quaternion_multiply(q, quaternion_conjugate(q)) - Vec4(q.squaredNorm(), 0, 0, 0)).norm(), 1e-15);
}
