#include "orpar/commands.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "orpar/sampling.hpp"

namespace orpar {

using nlohmann::json;

namespace {

// Seed strata of the command layer.
constexpr std::uint64_t kExportLines = 0xE1;
constexpr std::uint64_t kExportSpreads = 0xE2;
constexpr std::uint64_t kFold = 0xF0;
constexpr std::uint64_t kSymmetry = 0xF1;
constexpr std::uint64_t kPartition = 0xF2;
constexpr std::uint64_t kHfd = 0xF3;
constexpr std::uint64_t kDimension = 0xF4;
constexpr std::uint64_t kQueries = 0xF5;
constexpr int kDimensionSamples = 50;
constexpr int kDemoQueries = 10;
constexpr double kQueryTol = 1e-8;

json vec_json(const Eigen::Ref<const Vec>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json report_json(const VerificationReport& r) {
  json violations = json::array();
  for (const Violation& v : r.violations) {
    violations.push_back({{"stratum", v.stratum},
                          {"index", v.index},
                          {"witness", vec_json(v.witness)},
                          {"deviation", v.deviation},
                          {"detail", v.detail}});
  }
  json modulus = json::array();
  for (const ModulusEntry& m : r.modulus) {
    modulus.push_back({{"delta", m.delta}, {"max_gap", m.max_gap}, {"pairs", m.pairs}});
  }
  return {{"check", r.check}, {"n", r.n}, {"violations", violations}, {"modulus", modulus}, {"pass", r.pass}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw ConfigError("failed writing '" + path.string() + "'");
}

std::string fixed12(const Eigen::Ref<const Vec>& v) {
  std::string s = "[";
  char buf[40];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Map -0 to 0 so printed output does not depend on rounding noise sign.
    const double x = std::abs(v[i]) < 5e-13 ? 0.0 : v[i];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    s += (i ? ", " : "") + std::string(buf);
  }
  return s + "]";
}

std::string summary_line(const VerificationReport& r, bool required) {
  std::ostringstream os;
  os << std::left << std::setw(22) << r.check << " n=" << std::setw(7) << r.n
     << " violations=" << std::setw(6) << r.violations.size() << (r.pass ? " PASS" : " FAIL")
     << (required ? "" : "  (informational)");
  if (const Violation* w = r.worst()) {
    os << "\n    worst: " << w->stratum << " #" << w->index << " deviation " << format_double(w->deviation)
       << " at " << fixed12(w->witness) << (w->detail.empty() ? "" : " (" + w->detail + ")");
  }
  return os.str();
}

BuildOptions build_options(const RunConfig& config, ExecPolicy policy) {
  BuildOptions b;
  b.incidence = config.verify.incidence;
  b.entry_leave_samples = config.verify.entry_leave;
  b.continuity = config.verify.continuity;
  b.policy = policy;
  return b;
}

/// Maps a star name back to the canonical demo config.
RunConfig demo_config(const std::string& type, std::uint64_t seed) {
  RunConfig c;
  c.star.type = type;
  c.apply_seed(seed);
  return c;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

VerifyOutcome run_verification(const GlCandidate& star, const RunConfig& config, const CommandOptions& options) {
  const VerifySpec& v = config.verify;
  VerifyOutcome out;
  VerificationReport inc = verify_incidence(star, v.incidence, options.policy);
  if (inc.relaxed_violations) {
    VerificationReport relaxed;
    relaxed.check = "incidence_relaxed";
    relaxed.n = inc.n;
    relaxed.pass = *inc.relaxed_violations == 0;
    for (const Violation& viol : inc.violations) {
      if (viol.detail.rfind("lines=", 0) == 0 && std::stoi(viol.detail.substr(6)) > 2) {
        relaxed.violations.push_back(viol);
      }
    }
    out.relaxed = std::move(relaxed);
  }
  out.required.push_back(std::move(inc));
  out.required.push_back(verify_entry_leave(star, v.entry_leave, config.seed, options.policy));
  out.required.push_back(verify_continuity(star, v.continuity, options.policy));
  try {
    out.fold = is_foldable(star, v.fold_samples, derive_seed(config.seed, kFold, 0), options.policy);
    out.symmetry = rotational_symmetry_check(star, v.symmetry_samples, derive_seed(config.seed, kSymmetry, 0),
                                             options.policy);
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::NotCharMapForm) throw;
  }
  bool pass = true;
  for (const auto& r : out.required) pass = pass && r.pass;
  if (options.strict && pass) {
    const OrientedParallelism par = build_parallelism(star, false);
    out.required.push_back(
        verify_partition(par, v.partition_samples, derive_seed(config.seed, kPartition, 0), options.policy));
    out.required.push_back(verify_hfd_plus(par.hfd(), v.hfd_samples, derive_seed(config.seed, kHfd, 0),
                                           v.continuity, options.policy));
    pass = out.required[out.required.size() - 2].pass && out.required.back().pass;
  }
  out.pass = pass;
  return out;
}

std::string verify_report_json(const GlCandidate& star, const RunConfig& config, const VerifyOutcome& outcome) {
  json reports = json::array();
  for (const auto& r : outcome.required) reports.push_back(report_json(r));
  json informational = json::array();
  if (outcome.relaxed) informational.push_back(report_json(*outcome.relaxed));
  json props = json::object();
  props["foldable"] = outcome.fold ? json{{"value", outcome.fold->foldable}, {"deviation", outcome.fold->deviation}}
                                   : json(nullptr);
  props["rotational_symmetry"] =
      outcome.symmetry ? json{{"value", outcome.symmetry->symmetric}, {"deviation", outcome.symmetry->deviation}}
                       : json(nullptr);
  json doc = {{"star", star.name()},
              {"seed", config.seed},
              {"reports", reports},
              {"informational", informational},
              {"properties", props},
              {"pass", outcome.pass}};
  return doc.dump(2) + "\n";
}

std::vector<GlLine> sample_star_lines(const GlCandidate& star, int n, std::uint64_t seed) {
  std::vector<GlLine> lines;
  lines.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, kExportLines, static_cast<std::uint64_t>(i)));
    const Vec3 x = random_unit3(rng);
    try {
      lines.push_back(star.entering_line(x));
    } catch (const GeometryError&) {
      const std::vector<GlLine> through = star.lines_through_point(affine_point(x));
      if (through.empty()) throw GeometryError(ErrorCode::EmptySet, "no star line through a sampled sphere point");
      lines.push_back(through.front());
    }
  }
  return lines;
}

std::string lines_csv(const std::vector<GlLine>& lines) {
  std::string s = "k1,k2,k3,k4,k5,k6,ex,ey,ez,lx,ly,lz\n";
  for (const GlLine& l : lines) {
    std::string row;
    for (int i = 0; i < 6; ++i) row += format_double(l.klein.klein()[i]) + ",";
    for (int i = 0; i < 3; ++i) row += format_double(l.entry[i]) + ",";
    for (int i = 0; i < 3; ++i) row += format_double(l.leave[i]) + (i < 2 ? "," : "\n");
    s += row;
  }
  return s;
}

std::vector<GlLine> read_lines_csv(const std::string& text) {
  std::istringstream in(text);
  std::string row;
  if (!std::getline(in, row) || row != "k1,k2,k3,k4,k5,k6,ex,ey,ez,lx,ly,lz") {
    throw ConfigError("line CSV must start with the k1..k6,ex,ey,ez,lx,ly,lz header");
  }
  std::vector<GlLine> lines;
  while (std::getline(in, row)) {
    if (row.empty()) continue;
    double v[12];
    const char* p = row.data();
    const char* end = row.data() + row.size();
    for (int i = 0; i < 12; ++i) {
      const auto res = std::from_chars(p, end, v[i]);
      if (res.ec != std::errc()) throw ConfigError("bad number in line CSV: " + row);
      p = res.ptr;
      if (i < 11) {
        if (p == end || *p != ',') throw ConfigError("line CSV rows need 12 fields: " + row);
        ++p;
      }
    }
    if (p != end) throw ConfigError("trailing data in line CSV row: " + row);
    lines.push_back(gl_line(Vec3(v[6], v[7], v[8]), Vec3(v[9], v[10], v[11])));
  }
  return lines;
}

int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream&) {
  const GlCandidate star = make_star(config);
  const VerifyOutcome outcome = run_verification(star, config, options);
  out << "star: " << star.name() << "  seed: " << config.seed << "\n";
  for (const auto& r : outcome.required) out << summary_line(r, true) << "\n";
  if (outcome.relaxed) out << summary_line(*outcome.relaxed, false) << "\n";
  if (outcome.fold) {
    out << "foldable: " << (outcome.fold->foldable ? "yes" : "no")
        << " (rho^2 deviation " << format_double(outcome.fold->deviation) << ")\n";
    out << "rotationally symmetric: " << (outcome.symmetry->symmetric ? "yes" : "no") << " (deviation "
        << format_double(outcome.symmetry->deviation) << ")\n";
  } else {
    out << "foldable: undefined (no characteristic map)\n";
  }
  if (options.out_dir) {
    const auto path = std::filesystem::path(*options.out_dir) / "verify_report.json";
    write_file(path, verify_report_json(star, config, outcome));
    out << "report: " << path.string() << "\n";
  }
  out << (outcome.pass ? "PASS" : "FAIL") << "\n";
  return outcome.pass ? kExitOk : kExitFailure;
}

int cmd_parallel(const RunConfig& config, const Vec4& p, const Vec4& u, const Vec4& v,
                 const CommandOptions& options, std::ostream& out, std::ostream& err) {
  if (p.norm() == 0.0) throw ConfigError("point must be nonzero");
  const OrientedLine line = [&] {
    try {
      return oriented_line_to_klein(u, v);
    } catch (const GeometryError& e) {
      throw ConfigError(std::string("line rows must be independent: ") + e.what());
    }
  }();
  const GlCandidate star = make_star(config);
  std::optional<OrientedParallelism> par;
  try {
    par.emplace(build_parallelism(star, true, build_options(config, options.policy)));
  } catch (const StarRejectedError& e) {
    err << "star rejected: " << summary_line(e.report(), true) << "\n";
    return kExitFailure;
  }
  const ProjPoint point(p);
  OrientedLine result = line;
  bool verified = false;
  try {
    result = par->parallel_through(point, line);
    const auto [a, b] = klein_to_oriented_line(result);
    Mat m(4, 3);
    m << a, b, p.normalized();
    const Eigen::JacobiSVD<Mat> svd(m);
    const bool through_p = svd.singularValues()[2] < kQueryTol;
    const SpreadMatch given = par->spread_of(line);
    const SpreadMatch found = par->spread_of(result);
    const bool same_spread =
        found.spread->oriented_space().approx_equal(given.spread->oriented_space(), 1e-6);
    verified = through_p && same_spread;
    out << "point:    " << fixed12(p) << "\n";
    out << "line:     u=" << fixed12(u) << " v=" << fixed12(v) << "\n";
    out << "parallel: u=" << fixed12(a) << " v=" << fixed12(b) << "\n";
    out << "klein:    " << fixed12(result.klein()) << "\n";
    out << "verified: " << (verified ? "true" : "false") << "\n";
  } catch (const GeometryError& e) {
    err << "query failed: " << e.what() << "\n";
    return kExitFailure;
  }
  return verified ? kExitOk : kExitFailure;
}

int cmd_export(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  const GlCandidate star = make_star(config);
  json summaries = json::array();
  bool validated = false;
  if (options.strict) {
    const VerifyOutcome outcome = run_verification(star, config, CommandOptions{std::nullopt, false, options.policy});
    for (const auto& r : outcome.required) {
      summaries.push_back({{"check", r.check}, {"n", r.n}, {"violations", r.violations.size()}, {"pass", r.pass}});
    }
    if (!outcome.pass) {
      err << "star rejected; nothing exported\n";
      return kExitFailure;
    }
    validated = true;
  }
  const ExportSpec& e = config.export_spec;
  const std::vector<GlLine> lines = sample_star_lines(star, e.n, config.seed);

  const OrientedParallelism par = build_parallelism(star, false);
  json spreads = json::array();
  const int n_spreads = std::min<int>(e.spreads, static_cast<int>(lines.size()));
  for (int k = 0; k < n_spreads; ++k) {
    const auto spread = par.spread_for(lines[static_cast<std::size_t>(k)]);
    json sample = json::array();
    for (const OrientedLine& l :
         spread_sample(*spread, e.spread_lines, derive_seed(config.seed, kExportSpreads, static_cast<std::uint64_t>(k)))) {
      sample.push_back(vec_json(l.klein()));
    }
    spreads.push_back({{"star_line", k}, {"lines", sample}});
  }

  const std::filesystem::path dir = options.out_dir.value_or(".");
  if (e.format == "csv" || e.format == "both") {
    write_file(dir / "gl_lines.csv", lines_csv(lines));
    out << "wrote " << (dir / "gl_lines.csv").string() << " (" << lines.size() << " rows)\n";
  }
  if (e.format == "json" || e.format == "both") {
    json arr = json::array();
    for (const GlLine& l : lines) {
      arr.push_back({{"klein", vec_json(l.klein.klein())}, {"entry", vec_json(l.entry)}, {"leave", vec_json(l.leave)}});
    }
    const json doc = {{"star", star.name()},
                      {"seed", config.seed},
                      {"validated", validated},
                      {"lines", arr},
                      {"spreads", spreads},
                      {"verification", summaries}};
    write_file(dir / "export.json", doc.dump(2) + "\n");
    out << "wrote " << (dir / "export.json").string() << "\n";
  }
  if (!validated) out << "note: star not validated (use --strict)\n";
  return kExitOk;
}

int cmd_demo(std::uint64_t seed, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> types = {"clifford", "rotational", "glued", "cones_case1", "cones_case2"};
  json rows = json::array();
  out << std::left << std::setw(13) << "star" << std::setw(11) << "foldable" << std::setw(5) << "dim"
      << std::setw(11) << "incidence" << std::setw(13) << "entry/leave" << std::setw(12) << "continuity"
      << "queries\n";
  bool pattern_ok = true;
  for (const std::string& type : types) {
    const RunConfig config = demo_config(type, seed);
    const GlCandidate star = make_star(config);
    const VerifyOutcome v = run_verification(star, config, CommandOptions{std::nullopt, false, options.policy});
    const OrientedParallelism par = build_parallelism(star, false);
    const int dim = ruler_dimension(par.hfd(), kDimensionSamples, derive_seed(seed, kDimension, 0));
    int ok_queries = -1;
    if (v.pass) {
      ok_queries = 0;
      for (int q = 0; q < kDemoQueries; ++q) {
        Rng rng(derive_seed(seed, kQueries, static_cast<std::uint64_t>(q)));
        const OrientedLine l = random_oriented_line(rng);
        const Vec4 p = random_gaussian(rng, 4);
        try {
          const OrientedLine r = par.parallel_through(ProjPoint(p), l);
          const auto [a, b] = klein_to_oriented_line(r);
          Mat m(4, 3);
          m << a, b, p.normalized();
          const bool through = Eigen::JacobiSVD<Mat>(m).singularValues()[2] < kQueryTol;
          const bool same = par.spread_of(r).spread->oriented_space().approx_equal(
              par.spread_of(l).spread->oriented_space(), 1e-6);
          if (through && same) ++ok_queries;
        } catch (const GeometryError&) {
        }
      }
    }
    const std::string fold = v.fold ? (v.fold->foldable ? "yes" : "no") : "-";
    auto pf = [](bool b) { return std::string(b ? "pass" : "fail"); };
    const std::string queries =
        ok_queries < 0 ? "-" : std::to_string(ok_queries) + "/" + std::to_string(kDemoQueries);
    out << std::setw(13) << type << std::setw(11) << fold << std::setw(5) << dim << std::setw(11)
        << pf(v.required[0].pass) << std::setw(13) << pf(v.required[1].pass) << std::setw(12)
        << pf(v.required[2].pass) << queries << "\n";
    const bool expect_pass = type != "cones_case2";
    pattern_ok = pattern_ok && v.pass == expect_pass && (ok_queries < 0 || ok_queries == kDemoQueries);
    json reports = json::array();
    for (const auto& r : v.required) reports.push_back(report_json(r));
    rows.push_back({{"star", type},
                    {"foldable", v.fold ? json(v.fold->foldable) : json(nullptr)},
                    {"dim", dim},
                    {"queries_ok", ok_queries < 0 ? json(nullptr) : json(ok_queries)},
                    {"pass", v.pass},
                    {"reports", reports}});
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "demo runtime: " << std::fixed << std::setprecision(1) << seconds << " s\n";
  if (options.out_dir) {
    const auto path = std::filesystem::path(*options.out_dir) / "demo_report.json";
    write_file(path, json{{"seed", seed}, {"stars", rows}}.dump(2) + "\n");
    out << "report: " << path.string() << "\n";
  }
  return pattern_ok ? kExitOk : kExitFailure;
}

int cmd_fold_check(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  const GlCandidate star = make_star(config);
  try {
    const FoldCheck f =
        is_foldable(star, config.verify.fold_samples, derive_seed(config.seed, kFold, 0), options.policy);
    const SymmetryCheck s = rotational_symmetry_check(star, config.verify.symmetry_samples,
                                                      derive_seed(config.seed, kSymmetry, 0), options.policy);
    out << "star: " << star.name() << "\n";
    out << "foldable: " << (f.foldable ? "yes" : "no") << " (rho^2 deviation " << format_double(f.deviation) << ")\n";
    out << "rotationally symmetric: " << (s.symmetric ? "yes" : "no") << " (deviation "
        << format_double(s.deviation) << ")\n";
    if (options.out_dir) {
      const json doc = {{"star", star.name()},
                        {"foldable", f.foldable},
                        {"fold_deviation", f.deviation},
                        {"rotationally_symmetric", s.symmetric},
                        {"symmetry_deviation", s.deviation}};
      write_file(std::filesystem::path(*options.out_dir) / "fold_check.json", doc.dump(2) + "\n");
    }
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::NotCharMapForm) throw;
    err << "no characteristic map: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace orpar
