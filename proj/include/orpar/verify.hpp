#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orpar/candidate.hpp"
#include "orpar/sampling.hpp"

namespace orpar {

/// Every sampling kernel runs either serially or OpenMP-parallel over samples;
/// both produce bit-identical reports.
enum class ExecPolicy { Serial, Parallel };

struct Violation {
  std::string stratum;
  std::size_t index = 0;
  Vec4 witness = Vec4::Zero();
  double deviation = 0.0;
  std::string detail;
};

struct ModulusEntry {
  double delta = 0.0;
  double max_gap = 0.0;
  int pairs = 0;
};

struct VerificationReport {
  std::string check;
  int n = 0;
  /// Sorted by decreasing deviation, ties by stratum order and index.
  std::vector<Violation> violations;
  std::vector<ModulusEntry> modulus;
  bool pass = false;
  /// Incidence only, char-map form: points on more than two lines.
  std::optional<int> relaxed_violations;

  const Violation* worst() const { return violations.empty() ? nullptr : &violations.front(); }
};

struct SamplerSpec {
  int n_exterior = 6000;
  int n_quadric = 3000;
  int n_ideal = 1000;
  std::uint64_t seed = 1;
};

// Strata of non-interior chart points; `seed` is already derived per sample.
Vec4 sample_exterior(std::uint64_t seed);
Vec4 sample_quadric(std::uint64_t seed);
Vec4 sample_ideal(std::uint64_t seed);

/// Exactly-two incidence at exterior, quadric and ideal sample points.
VerificationReport verify_incidence(const GlCandidate& cand, const SamplerSpec& spec,
                                    ExecPolicy policy = ExecPolicy::Parallel);

/// One entering and one leaving line at n quadric points.
VerificationReport verify_entry_leave(const GlCandidate& cand, int n, std::uint64_t seed,
                                      ExecPolicy policy = ExecPolicy::Parallel);

struct ContinuitySpec {
  std::vector<double> ladder = {1e-1, 1e-2, 1e-3, 1e-4};
  /// Pairs per stratum and ladder step.
  int n_pairs = 100;
  std::uint64_t seed = 1;
  double threshold = 0.05;
};

/// Hausdorff gap of the line sets at nearby non-interior points along the
/// delta ladder, with pairs near the quadric, the ideal plane and the seams.
VerificationReport verify_continuity(const GlCandidate& cand, const ContinuitySpec& spec,
                                     ExecPolicy policy = ExecPolicy::Parallel);

/// Gap of one pair of sets: returns nullopt when the pair must be discarded.
struct PairGap {
  double gap = 0.0;
  Vec4 witness = Vec4::Zero();
};
using PairSampler = std::function<std::optional<PairGap>(std::size_t stratum, double delta,
                                                         std::uint64_t seed)>;
/// Shared ladder driver: strata x ladder x n_pairs evaluations of `sampler`.
VerificationReport continuity_ladder(std::string check, const std::vector<std::string>& strata,
                                     const ContinuitySpec& spec, const PairSampler& sampler,
                                     ExecPolicy policy);
/// Pass rule for a modulus table: the fitted log-log slope is positive (or all
/// gaps vanish) and the gap at the smallest delta is below the threshold.
bool modulus_passes(const std::vector<ModulusEntry>& modulus, double threshold);

struct FoldCheck {
  bool foldable = false;
  double deviation = 0.0;
};
/// max |rho(rho(x)) - x| over n sphere samples; foldable iff < 1e-9. Family
/// unions use their derived characteristic map (NotCharMapForm if undefined).
FoldCheck is_foldable(const GlCandidate& cand, int n, std::uint64_t seed,
                      ExecPolicy policy = ExecPolicy::Parallel);

struct SymmetryCheck {
  bool symmetric = false;
  double deviation = 0.0;
};
/// max |rho(R x) - R rho(x)| over n samples and 16 rotations about the z-axis.
SymmetryCheck rotational_symmetry_check(const GlCandidate& cand, int n, std::uint64_t seed,
                                        ExecPolicy policy = ExecPolicy::Parallel);

/// Hausdorff distance of two finite sets of star lines (2 if exactly one is empty).
double line_set_gap(const std::vector<GlLine>& a, const std::vector<GlLine>& b);

/// Projective distance of chart points.
double chart_distance(const Vec4& p, const Vec4& q);

/// Runs body(i) for i in [0, n) under the policy.
void for_each_index(std::size_t n, ExecPolicy policy, const std::function<void(std::size_t)>& body);

}  // namespace orpar
