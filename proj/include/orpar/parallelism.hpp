#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>

#include "orpar/candidate.hpp"
#include "orpar/spreads.hpp"
#include "orpar/verify.hpp"

namespace orpar {

/// The oriented hfd set H+ = pi_3(G+) of a star: each star line L+ gives the
/// oriented polar of its lift inside the oriented ruler.
class HfdPlusSet {
 public:
  explicit HfdPlusSet(std::shared_ptr<const GlCandidate> star) : star_(std::move(star)) {}

  const GlCandidate& star() const { return *star_; }
  const Ruler& ruler() const { return star_->ruler(); }

  /// Lift of a star line to an oriented 2-space of R^6.
  OrientedSubspace lift(const GlLine& line) const;
  /// H+ for the star line.
  OrientedSubspace h_line(const GlLine& line) const;
  /// Chart point r(x) = pi_3(pi_5(x) ∩ R) for a Klein point x.
  Vec4 r_point(const Vec6& x) const;
  /// The star lines through r(x); their H-lines are those inside pi_5(x).
  std::vector<GlLine> star_lines_for(const Vec6& x) const;

 private:
  std::shared_ptr<const GlCandidate> star_;
};

/// Oriented (3,1)-space P+ = pi_5(H+) of a star line.
OrientedSubspace spread_space(const HfdPlusSet& hfd, const GlLine& line);

struct SpreadMatch {
  std::shared_ptr<const OrientedRegularSpread> spread;
  /// The other candidate through the same unoriented line (opposite orientation).
  std::shared_ptr<const OrientedRegularSpread> companion;
  GlLine star_line;
};

class OrientedParallelism {
 public:
  explicit OrientedParallelism(std::shared_ptr<const GlCandidate> star);

  const GlCandidate& star() const { return hfd_.star(); }
  const HfdPlusSet& hfd() const { return hfd_; }

  /// Oriented spread S+(pi_5(pi_3(L+))) of a star line; memoized.
  std::shared_ptr<const OrientedRegularSpread> spread_for(const GlLine& line) const;
  /// The member spread containing the oriented line. Throws NoMatch or
  /// AmbiguousMatch when orientation matching is not unique.
  SpreadMatch spread_of(const OrientedLine& line) const;
  /// The line through p in the spread of L+.
  OrientedLine parallel_through(const ProjPoint& p, const OrientedLine& line) const;

  std::size_t cache_size() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::array<long long, 6>, std::shared_ptr<const OrientedRegularSpread>> spreads;
  };

  HfdPlusSet hfd_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct BuildOptions {
  SamplerSpec incidence;
  int entry_leave_samples = 1000;
  ContinuitySpec continuity;
  ExecPolicy policy = ExecPolicy::Parallel;
};

/// Thrown by strict builds; carries the first failing report.
class StarRejectedError : public GeometryError {
 public:
  explicit StarRejectedError(VerificationReport report)
      : GeometryError(ErrorCode::StarRejected, report.check + " check failed"),
        report_(std::move(report)) {}
  const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

/// Wires star -> H+ -> P+ -> S+. With strict, the star must first pass the
/// incidence, entry/leave and continuity checks.
OrientedParallelism build_parallelism(const GlCandidate& star, bool strict,
                                      const BuildOptions& options = {});

/// Uniformly random oriented line of P_3 (Gaussian spanning pair).
OrientedLine random_oriented_line(Rng& rng);

VerificationReport verify_partition(const OrientedParallelism& par, int n, std::uint64_t seed,
                                    ExecPolicy policy = ExecPolicy::Parallel);
VerificationReport verify_hfd_plus(const HfdPlusSet& hfd, int n, std::uint64_t seed,
                                   const ContinuitySpec& continuity = {},
                                   ExecPolicy policy = ExecPolicy::Parallel);
/// Projective dimension of the span of sampled H-lines.
int ruler_dimension(const HfdPlusSet& hfd, int n, std::uint64_t seed);

/// Which side the unit imaginary quaternion multiplies on.
enum class QuaternionSide { Right, Left };

/// Quaternion product in the basis (1, i, j, k).
Vec4 quaternion_multiply(const Vec4& a, const Vec4& b);
Vec4 quaternion_conjugate(const Vec4& a);

/// Clifford parallel through p to the line oriented by (u, v): with
/// i' = conj(u) v the result is (p, p i') (Right) or, with i' = v conj(u),
/// (p, i' p) (Left). Throws NotOrthonormal unless u, v are orthonormal.
OrientedLine clifford_oracle(const Vec4& p, const Vec4& u, const Vec4& v,
                             QuaternionSide side = QuaternionSide::Right);

}  // namespace orpar
