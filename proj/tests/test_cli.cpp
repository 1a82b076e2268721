#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "orpar/commands.hpp"

using namespace orpar;
namespace fs = std::filesystem;

namespace {

const char* kSmallVerify =
    R"("verify": {"exterior": 300, "quadric": 150, "ideal": 50, "entry_leave": 100, "continuity_pairs": 20,
                  "partition_samples": 40, "hfd_samples": 40})";

std::string config_text(const std::string& star) {
  return R"({"seed": 5, "star": )" + star + ", " + kSmallVerify + R"(, "export": {"n": 100, "spreads": 2, "spread_lines": 8}})";
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("orpar_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ORPAR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"star": {"type": "clifford"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"seed": 1, "star": {"type": "hexagonal"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"seed": 1, "verify": {"exterior": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"seed": 1, "verify": {"tol": -1}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"seed": 1, "ruler": {"basis": [[1, 0]]}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"seed": 1, "export": {"format": "xml"}})"), ConfigError);
}

TEST(Config, ParsesStarsAndSeed) {
  const RunConfig c = parse_config(R"({"seed": 9, "star": {"type": "glued", "beta1": 0.2, "beta2": -0.1},
                                        "verify": {"delta_ladder": [0.1, 0.01]}})");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.verify.incidence.seed, 9u);
  EXPECT_EQ(c.verify.continuity.seed, 9u);
  EXPECT_EQ(c.star.type, "glued");
  EXPECT_DOUBLE_EQ(c.star.beta2, -0.1);
  EXPECT_EQ(c.verify.continuity.ladder.size(), 2u);
  EXPECT_EQ(make_star(c).name(), "glued");
  EXPECT_THROW(make_star(parse_config(R"({"seed": 1, "star": {"type": "rotational", "beta": 2.0}})")), ConfigError);
}

TEST(Config, ExplicitRulerBasis) {
  const RunConfig c = parse_config(
      R"({"seed": 1, "ruler": {"basis": [[1,0,0,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]]}})");
  EXPECT_FALSE(c.ruler.standard);
  EXPECT_NO_THROW(make_ruler(c));
}

TEST(Format, ShortestRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Cli, ExitCodes) {
  const fs::path d = scratch_dir("exit");
  EXPECT_EQ(run_cli("verify --config " + write_config(d, R"({"seed": 1, "star": {"type": "nope"}})").string()), 2);
  EXPECT_EQ(run_cli("verify --config " + (d / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("parallel --point 1,2"), 2);
  EXPECT_EQ(run_cli("verify --out " + d.string() + " --config " +
                    write_config(d, config_text(R"({"type": "cones_case1"})")).string()),
            0);
  EXPECT_TRUE(fs::exists(d / "verify_report.json"));
  EXPECT_EQ(run_cli("verify --out " + d.string() + " --config " +
                    write_config(d, config_text(R"({"type": "cones_case2"})")).string()),
            1);
}

TEST(Cli, VerifyReportSchema) {
  const fs::path d = scratch_dir("schema");
  const RunConfig c = parse_config(config_text(R"({"type": "cones_case2"})"));
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(c, CommandOptions{d.string(), false, ExecPolicy::Parallel}, out, err), kExitFailure);
  const auto doc = nlohmann::json::parse(slurp(d / "verify_report.json"));
  ASSERT_TRUE(doc["reports"].is_array());
  for (const auto& r : doc["reports"]) {
    for (const char* key : {"check", "n", "violations", "modulus", "pass"}) EXPECT_TRUE(r.contains(key)) << key;
  }
  const auto& cont = doc["reports"][2];
  EXPECT_EQ(cont["check"], "continuity");
  EXPECT_FALSE(cont["pass"].get<bool>());
  EXPECT_EQ(cont["violations"][0]["stratum"], "seam z=0");
  EXPECT_TRUE(doc["properties"]["foldable"].is_null());
}

TEST(Cli, StrictVerifyAddsParallelismChecks) {
  const RunConfig c = parse_config(config_text(R"({"type": "glued", "beta1": 0.3, "beta2": -0.4})"));
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(c, CommandOptions{std::nullopt, true, ExecPolicy::Parallel}, out, err), kExitOk);
  EXPECT_NE(out.str().find("partition"), std::string::npos);
  EXPECT_NE(out.str().find("hfd_plus"), std::string::npos);
  EXPECT_NE(out.str().find("foldable: no"), std::string::npos);
}

TEST(Cli, ParallelMatchesCliffordOracle) {
  const RunConfig c = parse_config(config_text(R"({"type": "clifford"})"));
  std::ostringstream out, err;
  ASSERT_EQ(cmd_parallel(c, Vec4::UnitZ(), Vec4::UnitX(), Vec4::UnitY(), {}, out, err), kExitOk) << err.str();
  const std::string text = out.str();
  EXPECT_NE(text.find("verified: true"), std::string::npos);
  // The oracle gives the line (j, -k).
  const OrientedLine expected = clifford_oracle(Vec4::UnitZ(), Vec4::UnitX(), Vec4::UnitY());
  EXPECT_LT(OrientedLine::distance(expected, oriented_line_to_klein(Vec4::UnitZ(), -Vec4::UnitW())), 1e-12);
  const auto pos = text.find("klein:");
  ASSERT_NE(pos, std::string::npos);
  std::string nums = text.substr(text.find('[', pos) + 1);
  nums = nums.substr(0, nums.find(']'));
  std::replace(nums.begin(), nums.end(), ',', ' ');
  std::istringstream in(nums);
  Vec6 k;
  for (int i = 0; i < 6; ++i) in >> k[i];
  EXPECT_LT((k - expected.klein()).norm(), 1e-10);
}

TEST(Cli, ParallelRejectsBadStar) {
  const RunConfig c = parse_config(config_text(R"({"type": "cones_case2"})"));
  std::ostringstream out, err;
  EXPECT_EQ(cmd_parallel(c, Vec4::UnitZ(), Vec4::UnitX(), Vec4::UnitY(), {}, out, err), kExitFailure);
  EXPECT_THROW(cmd_parallel(c, Vec4::UnitZ(), Vec4::UnitX(), 2 * Vec4::UnitX(), {}, out, err), ConfigError);
}

TEST(Cli, ExportIsByteStableAndThroughOrigin) {
  const RunConfig c = parse_config(config_text(R"({"type": "clifford"})"));
  const fs::path a = scratch_dir("export_a"), b = scratch_dir("export_b");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_export(c, CommandOptions{a.string(), false, ExecPolicy::Parallel}, out, err), kExitOk);
  ASSERT_EQ(cmd_export(c, CommandOptions{b.string(), false, ExecPolicy::Serial}, out, err), kExitOk);
  EXPECT_EQ(slurp(a / "gl_lines.csv"), slurp(b / "gl_lines.csv"));
  EXPECT_EQ(slurp(a / "export.json"), slurp(b / "export.json"));
  const std::vector<GlLine> lines = read_lines_csv(slurp(a / "gl_lines.csv"));
  ASSERT_EQ(lines.size(), 100u);
  for (const GlLine& l : lines) EXPECT_LT((l.entry + l.leave).norm(), 1e-12);
  const auto doc = nlohmann::json::parse(slurp(a / "export.json"));
  EXPECT_EQ(doc["lines"].size(), 100u);
  EXPECT_FALSE(doc["validated"].get<bool>());
}

TEST(Cli, GluedExportReloadsAndReverifies) {
  const RunConfig c = parse_config(config_text(R"({"type": "glued", "beta1": 0.3, "beta2": -0.4})"));
  const fs::path d = scratch_dir("export_glued");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_export(c, CommandOptions{d.string(), true, ExecPolicy::Parallel}, out, err), kExitOk);
  const std::vector<GlLine> lines = read_lines_csv(slurp(d / "gl_lines.csv"));
  const GlCandidate star = make_star(c);
  for (const GlLine& l : lines) {
    // A point of the line beyond the leave point lies on exactly two star lines, one of them l.
    const Vec3 q = l.leave + 0.5 * (l.leave - l.entry);
    const std::vector<GlLine> through = star.lines_through_point(affine_point(q));
    ASSERT_EQ(through.size(), 2u);
    double best = 2.0;
    for (const GlLine& m : through) best = std::min(best, OrientedLine::distance(m.klein, l.klein));
    EXPECT_LT(best, 1e-6);
  }
  EXPECT_TRUE(nlohmann::json::parse(slurp(d / "export.json"))["validated"].get<bool>());
}

TEST(Cli, ReadLinesCsvRejectsGarbage) {
  EXPECT_THROW(read_lines_csv("a,b\n"), ConfigError);
  EXPECT_THROW(read_lines_csv("k1,k2,k3,k4,k5,k6,ex,ey,ez,lx,ly,lz\n1,2,3\n"), ConfigError);
}
