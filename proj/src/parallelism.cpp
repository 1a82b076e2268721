#include "orpar/parallelism.hpp"

#include <algorithm>
#include <cmath>

namespace orpar {

namespace {

constexpr double kMatch = 1e-6;

enum Stratum : std::uint64_t {
  kPartitionLines = 200,
  kPartitionTriples = 201,
  kHfdPoints = 202,
  kHfdContinuity = 300,
  kDimension = 203,
};

std::array<long long, 6> cache_key(const OrientedLine& l) {
  std::array<long long, 6> key{};
  for (int i = 0; i < 6; ++i) key[static_cast<std::size_t>(i)] = std::llround(l.klein()[i] * 1e9);
  return key;
}

Vec bivector_of(const OrientedSubspace& h) { return plane_bivector(h); }

double bivector_set_gap(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 2.0;
  return hausdorff_distance<Vec>(a, b, [](const Vec& x, const Vec& y) { return (x - y).norm(); });
}

// Perturbs the spanning pair of a line by at most `size` per vector.
OrientedLine nearby_line(const OrientedLine& l, double size, Rng& rng) {
  auto [u, v] = klein_to_oriented_line(l);
  const Vec4 du = random_unit4(rng) * size * uniform01(rng);
  const Vec4 dv = random_unit4(rng) * size * uniform01(rng);
  return oriented_line_to_klein(u + du, v + dv);
}

}  // namespace

OrientedSubspace HfdPlusSet::lift(const GlLine& line) const {
  Mat b(6, 2);
  b << ruler().lift(affine_point(line.entry)), ruler().lift(affine_point(line.leave));
  return OrientedSubspace::from_basis(b);
}

OrientedSubspace HfdPlusSet::h_line(const GlLine& line) const {
  return oriented_polar(lift(line), BilinearForm::klein(), ruler().space());
}

Vec4 HfdPlusSet::r_point(const Vec6& x) const {
  const BilinearForm& f = BilinearForm::klein();
  const Subspace w = meet(tangent_hyperplane(x), ruler().space().base());
  if (w.dim() != 3) {
    throw GeometryError(ErrorCode::DegenerateMeet,
                        "tangent hyperplane meets the ruler in dimension " + std::to_string(w.dim()));
  }
  const Subspace r = polar_within(w, f, ruler().space().base());
  if (r.dim() != 1) throw GeometryError(ErrorCode::DegenerateMeet, "r(x) is not a point");
  Vec4 c = ruler().chart_coords(r.basis().col(0));
  c.normalize();
  // r(x) is non-interior; absorb rounding right at the quadric.
  const double iv = interior_value(c);
  if (iv > kInteriorThreshold && iv < 1e-7) {
    const double a = c.tail<3>().norm();
    c[0] = std::copysign(a, c[0]);
    c.normalize();
  }
  return c;
}

std::vector<GlLine> HfdPlusSet::star_lines_for(const Vec6& x) const {
  return star().lines_through_point(r_point(x));
}

OrientedSubspace spread_space(const HfdPlusSet& hfd, const GlLine& line) {
  return oriented_polar(hfd.h_line(line), BilinearForm::klein(), OrientedSubspace::standard(6));
}

OrientedParallelism::OrientedParallelism(std::shared_ptr<const GlCandidate> star)
    : hfd_(std::move(star)) {}

std::shared_ptr<const OrientedRegularSpread> OrientedParallelism::spread_for(const GlLine& line) const {
  const auto key = cache_key(line.klein);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->spreads.find(key);
    if (it != cache_->spreads.end()) return it->second;
  }
  auto spread = std::make_shared<const OrientedRegularSpread>(spread_space(hfd_, line));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->spreads[key] = spread;
  return spread;
}

std::size_t OrientedParallelism::cache_size() const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->spreads.size();
}

SpreadMatch OrientedParallelism::spread_of(const OrientedLine& line) const {
  const std::vector<GlLine> candidates = hfd_.star_lines_for(line.klein());
  const Vec4 point = klein_to_oriented_line(line).first;
  std::vector<SpreadMatch> matches;
  std::vector<std::shared_ptr<const OrientedRegularSpread>> others;
  for (const GlLine& g : candidates) {
    auto spread = spread_for(g);
    const OrientedLine here = oriented_line_through(*spread, ProjPoint(point));
    if (OrientedLine::distance(here, line) < kMatch) {
      matches.push_back({spread, nullptr, g});
    } else {
      others.push_back(spread);
    }
  }
  if (matches.empty()) {
    throw GeometryError(ErrorCode::NoMatch, "no member spread carries the oriented line (" +
                                                std::to_string(candidates.size()) + " candidates)");
  }
  if (matches.size() > 1) {
    throw GeometryError(ErrorCode::AmbiguousMatch, "several member spreads carry the oriented line");
  }
  if (others.size() == 1) matches.front().companion = others.front();
  return matches.front();
}

OrientedLine OrientedParallelism::parallel_through(const ProjPoint& p, const OrientedLine& line) const {
  return oriented_line_through(*spread_of(line).spread, p);
}

OrientedParallelism build_parallelism(const GlCandidate& star, bool strict, const BuildOptions& options) {
  if (strict) {
    VerificationReport r = verify_incidence(star, options.incidence, options.policy);
    if (!r.pass) throw StarRejectedError(std::move(r));
    r = verify_entry_leave(star, options.entry_leave_samples, options.incidence.seed, options.policy);
    if (!r.pass) throw StarRejectedError(std::move(r));
    r = verify_continuity(star, options.continuity, options.policy);
    if (!r.pass) throw StarRejectedError(std::move(r));
  }
  return OrientedParallelism(std::make_shared<const GlCandidate>(star));
}

OrientedLine random_oriented_line(Rng& rng) {
  for (;;) {
    const Vec4 u = random_gaussian(rng, 4);
    const Vec4 v = random_gaussian(rng, 4);
    try {
      return oriented_line_to_klein(u, v);
    } catch (const GeometryError&) {
      // Dependent pair; draw again.
    }
  }
}

VerificationReport verify_partition(const OrientedParallelism& par, int n, std::uint64_t seed,
                                    ExecPolicy policy) {
  const std::size_t count = static_cast<std::size_t>(std::max(n, 0));
  std::vector<std::optional<Violation>> single(count);
  std::vector<std::optional<Violation>> triple(count);
  for_each_index(count, policy, [&](std::size_t i) {
    Rng rng(derive_seed(seed, kPartitionLines, i));
    const OrientedLine l = random_oriented_line(rng);
    auto fail = [&](const char* stratum, double dev, std::string detail) {
      Violation v;
      v.stratum = stratum;
      v.index = i;
      v.witness = klein_to_oriented_line(l).first;
      v.deviation = dev;
      v.detail = std::move(detail);
      return v;
    };
    try {
      const SpreadMatch m = par.spread_of(l);
      const SpreadMatch rev = par.spread_of(l.reversed());
      if (rev.spread->oriented_space().approx_equal(m.spread->oriented_space(), 1e-8)) {
        single[i] = fail("line", 2.0, "reversed line resolves to the same oriented spread");
      }
    } catch (const GeometryError& e) {
      single[i] = fail("line", 2.0, e.what());
    }
  });
  for_each_index(count, policy, [&](std::size_t i) {
    Rng rng(derive_seed(seed, kPartitionTriples, i));
    const OrientedLine l = random_oriented_line(rng);
    const Vec4 p = random_unit4(rng);
    Violation v;
    v.stratum = "parallel";
    v.index = i;
    v.witness = p;
    try {
      const OrientedLine m = par.parallel_through(ProjPoint(p), l);
      const double through = line_of_klein(m.klein()).containment_residual(p);
      const auto sl = par.spread_of(l).spread;
      const auto sm = par.spread_of(m).spread;
      const auto angles = sl->oriented_space().base().principal_angles(sm->oriented_space().base());
      const double angle = angles.empty() ? 0.0 : angles.back();
      const bool same = sl->oriented_space().approx_equal(sm->oriented_space(), 1e-8);
      if (through > 1e-9 || !same) {
        v.deviation = std::max(through, angle);
        v.detail = same ? "parallel line misses the point" : "parallel line left the spread";
        triple[i] = v;
      }
    } catch (const GeometryError& e) {
      v.deviation = 2.0;
      v.detail = e.what();
      triple[i] = v;
    }
  });
  VerificationReport report;
  report.check = "partition";
  report.n = static_cast<int>(2 * count);
  for (auto* list : {&single, &triple}) {
    for (auto& v : *list) {
      if (v) report.violations.push_back(std::move(*v));
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.deviation > b.deviation; });
  report.pass = report.violations.empty();
  return report;
}

VerificationReport verify_hfd_plus(const HfdPlusSet& hfd, int n, std::uint64_t seed,
                                   const ContinuitySpec& continuity, ExecPolicy policy) {
  const BilinearForm& f = BilinearForm::klein();
  const std::size_t count = static_cast<std::size_t>(std::max(n, 0));
  std::vector<std::optional<Violation>> found(count);
  for_each_index(count, policy, [&](std::size_t i) {
    Rng rng(derive_seed(seed, kHfdPoints, i));
    const OrientedLine l = random_oriented_line(rng);
    Violation v;
    v.stratum = "klein";
    v.index = i;
    v.witness = klein_to_oriented_line(l).first;
    try {
      const auto lines = hfd.star_lines_for(l.klein());
      if (lines.size() != 2) {
        v.deviation = std::abs(static_cast<double>(lines.size()) - 2.0);
        v.detail = "h-lines=" + std::to_string(lines.size());
        found[i] = v;
        return;
      }
      const Subspace tangent = tangent_hyperplane(l.klein());
      for (const GlLine& g : lines) {
        const OrientedSubspace h = hfd.h_line(g);
        double worst = 0.0;
        for (int c = 0; c < 2; ++c) worst = std::max(worst, tangent.containment_residual(h.basis().col(c)));
        if (gram_signature(h.base(), f) != Signature{0, 2, 0}) {
          v.deviation = 1.0;
          v.detail = "h-line is not of type (0,2)";
          found[i] = v;
          return;
        }
        if (worst > 1e-8) {
          v.deviation = worst;
          v.detail = "h-line not in the tangent hyperplane";
          found[i] = v;
          return;
        }
      }
    } catch (const GeometryError& e) {
      v.deviation = 2.0;
      v.detail = e.what();
      found[i] = v;
    }
  });

  PairSampler sampler = [&](std::size_t stratum, double delta,
                            std::uint64_t s) -> std::optional<PairGap> {
    Rng rng(s);
    OrientedLine a = random_oriented_line(rng);
    if (stratum == 1) {
      // Klein points near the ruler quadric, where r(x) approaches Q.
      const Vec3 u = random_unit3(rng);
      a = OrientedLine::from_klein(hfd.ruler().lift(affine_point(u)));
    }
    for (int attempt = 0; attempt < 16; ++attempt) {
      const OrientedLine b = nearby_line(a, 0.25 * delta, rng);
      if (OrientedLine::distance(a, b) >= delta) continue;
      try {
        std::vector<Vec> sa;
        std::vector<Vec> sb;
        for (const GlLine& g : hfd.star_lines_for(a.klein())) sa.push_back(bivector_of(hfd.h_line(g)));
        for (const GlLine& g : hfd.star_lines_for(b.klein())) sb.push_back(bivector_of(hfd.h_line(g)));
        return PairGap{bivector_set_gap(sa, sb), klein_to_oriented_line(a).first};
      } catch (const GeometryError&) {
        return PairGap{2.0, klein_to_oriented_line(a).first};
      }
    }
    return std::nullopt;
  };
  ContinuitySpec spec = continuity;
  spec.seed = derive_seed(seed, kHfdContinuity, 0);
  VerificationReport report =
      continuity_ladder("hfd_plus", {"klein", "ruler quadric"}, spec, sampler, policy);
  report.n += static_cast<int>(count);
  for (auto& v : found) {
    if (v) report.violations.push_back(std::move(*v));
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.deviation > b.deviation; });
  report.pass = report.violations.empty() && modulus_passes(report.modulus, spec.threshold);
  return report;
}

int ruler_dimension(const HfdPlusSet& hfd, int n, std::uint64_t seed) {
  std::vector<OrientedSubspace> hs;
  for (int i = 0; i < n; ++i) {
    const Vec4 p = sample_exterior(derive_seed(seed, kDimension, static_cast<std::uint64_t>(i)));
    for (const GlLine& g : hfd.star().lines_through_point(p)) hs.push_back(hfd.h_line(g));
  }
  if (hs.empty()) throw GeometryError(ErrorCode::EmptySet, "no H-lines sampled");
  Mat all(6, static_cast<Eigen::Index>(2 * hs.size()));
  for (std::size_t k = 0; k < hs.size(); ++k) all.middleCols(static_cast<Eigen::Index>(2 * k), 2) = hs[k].basis();
  return Subspace::span(all).dim() - 1;
}

}  // namespace orpar
