#include <gtest/gtest.h>

#include "orpar/families.hpp"
#include "orpar/verify.hpp"

using namespace orpar;

namespace {

SamplerSpec small_spec(std::uint64_t seed) { return SamplerSpec{300, 150, 50, seed}; }

ContinuitySpec small_continuity(std::uint64_t seed) {
  ContinuitySpec c;
  c.n_pairs = 20;
  c.seed = seed;
  return c;
}

void expect_identical(const VerificationReport& a, const VerificationReport& b) {
  EXPECT_EQ(a.check, b.check);
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_EQ(a.relaxed_violations, b.relaxed_violations);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    EXPECT_EQ(a.violations[i].stratum, b.violations[i].stratum);
    EXPECT_EQ(a.violations[i].index, b.violations[i].index);
    EXPECT_EQ(a.violations[i].deviation, b.violations[i].deviation);
    EXPECT_EQ(a.violations[i].witness, b.violations[i].witness);
  }
  ASSERT_EQ(a.modulus.size(), b.modulus.size());
  for (std::size_t i = 0; i < a.modulus.size(); ++i) {
    EXPECT_EQ(a.modulus[i].max_gap, b.modulus[i].max_gap);
    EXPECT_EQ(a.modulus[i].pairs, b.modulus[i].pairs);
  }
}

}  // namespace

TEST(Verify, SamplersLandOnTheirStrata) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Vec4 e = sample_exterior(derive_seed(1, 0, i));
    EXPECT_FALSE(is_interior(e));
    EXPECT_EQ(e[0], 1.0);
    const Vec4 q = sample_quadric(derive_seed(1, 1, i));
    EXPECT_NEAR(q.tail<3>().norm(), q[0], 1e-12);
    EXPECT_EQ(sample_ideal(derive_seed(1, 2, i))[0], 0.0);
  }
}

TEST(Verify, SerialAndParallelReportsAreIdentical) {
  const GlCandidate glued = glued_star(Ruler::standard(), 0.3, -0.4);
  const GlCandidate case2 = combine_case2(Ruler::standard());
  for (const GlCandidate* c : {&glued, &case2}) {
    expect_identical(verify_incidence(*c, small_spec(4), ExecPolicy::Serial),
                     verify_incidence(*c, small_spec(4), ExecPolicy::Parallel));
    expect_identical(verify_entry_leave(*c, 100, 4, ExecPolicy::Serial),
                     verify_entry_leave(*c, 100, 4, ExecPolicy::Parallel));
    expect_identical(verify_continuity(*c, small_continuity(4), ExecPolicy::Serial),
                     verify_continuity(*c, small_continuity(4), ExecPolicy::Parallel));
  }
}

TEST(Verify, GoodStarsPass) {
  const Ruler r = Ruler::standard();
  for (const GlCandidate& c : {clifford_star(r), rotational_involution_star(r, 0.3), glued_star(r, 0.3, -0.4),
                               combine_case1(r)}) {
    EXPECT_TRUE(verify_incidence(c, small_spec(5)).pass) << c.name();
    EXPECT_TRUE(verify_entry_leave(c, 100, 5).pass) << c.name();
    const VerificationReport cont = verify_continuity(c, small_continuity(5));
    EXPECT_TRUE(cont.pass) << c.name();
    EXPECT_EQ(cont.modulus.size(), 4u);
  }
}

TEST(Verify, PinchedBandFailsIncidence) {
  const VerificationReport r = verify_incidence(pinched_band_star(Ruler::standard(), 3.0), SamplerSpec{2000, 500, 200, 6});
  EXPECT_FALSE(r.pass);
  ASSERT_NE(r.worst(), nullptr);
  EXPECT_GT(r.worst()->deviation, 0.0);
}

TEST(Verify, CaseTwoFailsContinuityAcrossSeam) {
  const GlCandidate c = combine_case2(Ruler::standard());
  EXPECT_TRUE(verify_incidence(c, small_spec(7)).pass);
  const VerificationReport cont = verify_continuity(c, small_continuity(7));
  EXPECT_FALSE(cont.pass);
  ASSERT_NE(cont.worst(), nullptr);
  EXPECT_EQ(cont.worst()->stratum, "seam z=0");
  EXPECT_LT(std::abs(cont.worst()->witness[3]) / cont.worst()->witness.norm(), 1e-3);
  // The gap does not shrink with delta: a plateau at the line-metric diameter.
  EXPECT_NEAR(cont.modulus.back().max_gap, 2.0, 1e-6);
  EXPECT_FALSE(verify_entry_leave(c, 100, 7).pass);
}

TEST(Verify, ModulusPassRule) {
  EXPECT_TRUE(modulus_passes({{1e-1, 1e-1, 10}, {1e-2, 1e-2, 10}, {1e-3, 1e-3, 10}}, 0.05));
  EXPECT_TRUE(modulus_passes({{1e-1, 0.0, 10}, {1e-2, 0.0, 10}}, 0.05));
  EXPECT_FALSE(modulus_passes({{1e-1, 2.0, 10}, {1e-2, 2.0, 10}, {1e-3, 2.0, 10}}, 0.05));
  EXPECT_FALSE(modulus_passes({{1e-1, 0.3, 10}, {1e-2, 0.2, 10}, {1e-3, 0.1, 10}}, 0.05));
}

TEST(Verify, FoldabilityAndSymmetry) {
  const Ruler r = Ruler::standard();
  const FoldCheck cliff = is_foldable(clifford_star(r), 200, 1);
  EXPECT_TRUE(cliff.foldable);
  EXPECT_TRUE(is_foldable(rotational_involution_star(r, 0.3), 200, 1).foldable);
  const GlCandidate glued = glued_star(r, 0.3, -0.4);
  const FoldCheck g = is_foldable(glued, 200, 1);
  EXPECT_FALSE(g.foldable);
  EXPECT_GT(g.deviation, 0.1);
  EXPECT_TRUE(rotational_symmetry_check(glued, 100, 1).symmetric);
  const GlCandidate c1 = combine_case1(r);
  EXPECT_FALSE(is_foldable(c1, 200, 1).foldable);
  EXPECT_FALSE(rotational_symmetry_check(c1, 100, 1).symmetric);
  EXPECT_THROW(is_foldable(combine_case2(r), 200, 1), GeometryError);
}

TEST(Verify, LineSetGap) {
  const GlLine a = gl_line(Vec3(1, 0, 0), Vec3(-1, 0, 0));
  const GlLine b = gl_line(Vec3(-1, 0, 0), Vec3(1, 0, 0));
  EXPECT_DOUBLE_EQ(line_set_gap({a}, {a}), 0.0);
  EXPECT_NEAR(line_set_gap({a}, {b}), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(line_set_gap({a}, {}), 2.0);
}

TEST(Verify, ExceptionsPropagateFromParallelLoop) {
  EXPECT_THROW(for_each_index(100, ExecPolicy::Parallel,
                              [](std::size_t i) {
                                if (i == 37) throw GeometryError(ErrorCode::EmptySet, "boom");
                              }),
               GeometryError);
}
