#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orpar/config.hpp"
#include "orpar/parallelism.hpp"

namespace orpar {

/// Stable process exit codes.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

struct CommandOptions {
  /// Directory for report and export files; nothing is written when unset.
  std::optional<std::string> out_dir;
  /// verify: also build the parallelism and check partition and hfd+ axioms.
  /// export: validate the star first and reject it on failure.
  bool strict = false;
  ExecPolicy policy = ExecPolicy::Parallel;
};

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// Everything cmd_verify computes for one star.
struct VerifyOutcome {
  std::vector<VerificationReport> required;
  /// Incidence counting only points on more than two lines (never required).
  std::optional<VerificationReport> relaxed;
  std::optional<FoldCheck> fold;
  std::optional<SymmetryCheck> symmetry;
  bool pass = false;
};
VerifyOutcome run_verification(const GlCandidate& star, const RunConfig& config,
                               const CommandOptions& options);
/// JSON document with one {check, n, violations[], modulus[], pass} entry per check.
std::string verify_report_json(const GlCandidate& star, const RunConfig& config,
                               const VerifyOutcome& outcome);

/// One star line per sampled sphere point: the entering line there, or the
/// first line through it when no unique entering line exists.
std::vector<GlLine> sample_star_lines(const GlCandidate& star, int n, std::uint64_t seed);
/// CSV with header k1..k6,ex,ey,ez,lx,ly,lz.
std::string lines_csv(const std::vector<GlLine>& lines);
/// Parses lines_csv output; Klein vectors are recomputed from entry and leave.
/// Throws ConfigError on malformed input.
std::vector<GlLine> read_lines_csv(const std::string& text);

int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out,
               std::ostream& err);
/// Parallel through [p] to the line oriented by (u, v).
int cmd_parallel(const RunConfig& config, const Vec4& p, const Vec4& u, const Vec4& v,
                 const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& config, const CommandOptions& options, std::ostream& out,
               std::ostream& err);
/// Runs the five built-in stars through verification, build and queries.
int cmd_demo(std::uint64_t seed, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_fold_check(const RunConfig& config, const CommandOptions& options, std::ostream& out,
                   std::ostream& err);

}  // namespace orpar
