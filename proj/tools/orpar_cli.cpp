#include <CLI11.hpp>
#include <iostream>

#include "orpar/commands.hpp"

namespace {

orpar::Vec4 to_vec4(const std::vector<double>& v) { return orpar::Vec4(v[0], v[1], v[2], v[3]); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oriented regular parallelisms of real projective 3-space"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool strict = false;
  bool serial = false;
  app.add_option("--config", config_path, "JSON run configuration");
  auto* seed_opt = app.add_option("--seed", seed, "Override the configuration seed");
  auto* out_opt = app.add_option("--out", out_dir, "Directory for reports and exports");
  app.add_flag("--strict", strict, "verify: also check partition and hfd+ axioms; export: validate first");
  app.add_flag("--serial", serial, "Run sampling kernels serially");

  auto* verify = app.add_subcommand("verify", "Check the star axioms and write a JSON report");
  auto* parallel = app.add_subcommand("parallel", "Parallel through a point to an oriented line");
  std::vector<double> point, u, v;
  parallel->add_option("--point", point, "Homogeneous point p1,p2,p3,p4")->delimiter(',')->expected(4)->required();
  parallel->add_option("--u", u, "First row of the oriented line")->delimiter(',')->expected(4)->required();
  parallel->add_option("--v", v, "Second row of the oriented line")->delimiter(',')->expected(4)->required();
  auto* exp = app.add_subcommand("export", "Export sampled star lines and spreads (CSV/JSON)");
  auto* demo = app.add_subcommand("demo", "Run the five built-in stars");
  auto* fold = app.add_subcommand("fold-check", "Foldability and rotational symmetry of the characteristic map");

  // Options are accepted before or after the subcommand.
  for (auto* sub : {verify, parallel, exp, demo, fold}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? orpar::kExitOk : orpar::kExitUsage;
  }

  orpar::CommandOptions options;
  if (*out_opt) options.out_dir = out_dir;
  options.strict = strict;
  options.policy = serial ? orpar::ExecPolicy::Serial : orpar::ExecPolicy::Parallel;

  try {
    if (*demo) return orpar::cmd_demo(*seed_opt ? seed : 1, options, std::cout, std::cerr);
    orpar::RunConfig config = config_path.empty() ? orpar::RunConfig{} : orpar::load_config(config_path);
    if (*seed_opt) config.apply_seed(seed);
    if (*verify) {
      if (!options.out_dir) options.out_dir = ".";
      return orpar::cmd_verify(config, options, std::cout, std::cerr);
    }
    if (*parallel) {
      return orpar::cmd_parallel(config, to_vec4(point), to_vec4(u), to_vec4(v), options, std::cout, std::cerr);
    }
    if (*exp) return orpar::cmd_export(config, options, std::cout, std::cerr);
    return orpar::cmd_fold_check(config, options, std::cout, std::cerr);
  } catch (const orpar::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return orpar::kExitUsage;
  } catch (const orpar::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return orpar::kExitFailure;
  }
}
