// Batch driver: one subcommand per verification, JSON config in, CSV out.
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "hypcomp/config.hpp"
#include "hypcomp/error.hpp"
#include "hypcomp/experiments.hpp"

int main(int argc, char** argv) {
  using namespace hypcomp;
  CLI::App app{"Composition operators on H2: numerical verification driver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool dry_run = false;

  const std::map<std::string, std::string> about{
      {"norm-identity", "composition norm vs Poisson quadratic form on random polynomials"},
      {"poisson-bounds", "kernel and orbit kernel-sum bounds on grids"},
      {"orbit", "orbit norms, decay fits, square sums, hypercyclicity check"},
      {"eigen-scan", "Laurent eigenfunction residuals over an annulus grid"},
      {"circle-eigen", "circle-indexed partial sums and their identity residuals"},
      {"spectrum", "finite-section norm bounds and the eigen-residual map"},
      {"conjugacy", "transport of multiplier, fixed points, norms and scans"}};
  for (const std::string& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "report directory (overrides output.dir)");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s, seed_given = true; }, "RNG seed");
    sub->add_flag("--dry-run", dry_run, "validate config and print planned budgets");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    ExperimentConfig config = default_config(name);
    if (!config_path.empty()) config = load_config(config_path, config);
    if (seed_given) config.seed = seed;
    if (!out_dir.empty()) config.out_dir = out_dir;
    config.validate();
    if (dry_run) std::cout << to_json(config) << '\n';
    RunContext ctx{config.out_dir, dry_run, &std::cout};
    const int code = run_subcommand(name, config, ctx);
    if (!dry_run) std::cout << name << ": " << (code == kExitPass ? "pass" : "violation") << '\n';
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Config ? kExitUsage : kExitViolation;
  }
}
