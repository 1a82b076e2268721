#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orpar/candidate.hpp"
#include "orpar/verify.hpp"

namespace orpar {

/// Malformed or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RulerSpec {
  bool standard = true;
  Mat basis;  // 6 x 4 when not standard
};

struct StarSpec {
  /// clifford | rotational | glued | cones_case1 | cones_case2 | custom | pinched_band
  std::string type = "clifford";
  double beta = 0.3;
  double beta1 = 0.3;
  double beta2 = -0.4;
  double alpha = 3.0;
  std::vector<double> g_table;  // cone apex profile; empty = default
  int n_lat = 0;
  int n_lon = 0;
  std::vector<Vec3> values;  // custom grid, row-major
};

struct VerifySpec {
  SamplerSpec incidence;
  int entry_leave = 1000;
  ContinuitySpec continuity;
  int fold_samples = 500;
  int symmetry_samples = 200;
  int partition_samples = 200;
  int hfd_samples = 200;
  double tol = 1e-9;
  std::optional<std::vector<double>> seams;
};

struct ExportSpec {
  int n = 100;
  /// csv | json | both
  std::string format = "both";
  /// Spreads exported with the bundle and lines sampled from each.
  int spreads = 4;
  int spread_lines = 32;
};

struct RunConfig {
  std::uint64_t seed = 1;
  RulerSpec ruler;
  StarSpec star;
  VerifySpec verify;
  ExportSpec export_spec;

  /// Propagates `seed` into every sampler.
  void apply_seed(std::uint64_t s);
};

/// Parses a JSON document; missing keys keep their defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

Ruler make_ruler(const RunConfig& config);
/// Throws ConfigError for parameters the builders reject.
GlCandidate make_star(const RunConfig& config);

}  // namespace orpar
