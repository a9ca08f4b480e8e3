#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "srsim/srsim.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string seed;
  std::string policy;
  std::string scenario;
  std::string out_dir;
  std::string trace_level;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Path to an INI configuration file");
  cmd->add_option("--seed", flags.seed, "Override scenario.seed");
  cmd->add_option("--policy", flags.policy,
                  "Override scenario.policy (single name or comma-separated per-BSS list)");
  cmd->add_option("--scenario", flags.scenario, "Override scenario.kind");
  cmd->add_option("--out", flags.out_dir, "Override output.out_dir");
  cmd->add_option("--trace-level", flags.trace_level,
                  "Override output.trace_level (summary, full, debug)");
}

srsim::cli::CliOptions to_options(const CommonFlags& flags) {
  srsim::cli::CliOptions opts;
  opts.config_path = flags.config_path;
  if (!flags.scenario.empty()) opts.overrides.emplace_back("scenario.kind", flags.scenario);
  if (!flags.seed.empty()) opts.overrides.emplace_back("scenario.seed", flags.seed);
  if (!flags.policy.empty()) opts.overrides.emplace_back("scenario.policy", flags.policy);
  if (!flags.out_dir.empty()) opts.overrides.emplace_back("output.out_dir", flags.out_dir);
  if (!flags.trace_level.empty())
    opts.overrides.emplace_back("output.trace_level", flags.trace_level);
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized spatial-reuse simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, oracle_flags;
  CLI::App* run = app.add_subcommand("run", "Run one episode or a deployment campaign");
  add_common_flags(run, run_flags);
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a grid of parameter/policy cells");
  add_common_flags(sweep, sweep_flags);
  CLI::App* oracle =
      app.add_subcommand("oracle", "Brute-force the optimal joint action profile");
  add_common_flags(oracle, oracle_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return srsim::cli::cmd_run(srsim::cli::load_config(to_options(run_flags)), std::cout);
    if (sweep->parsed())
      return srsim::cli::cmd_sweep(srsim::cli::load_config(to_options(sweep_flags)), std::cout);
    return srsim::cli::cmd_oracle(srsim::cli::load_config(to_options(oracle_flags)), std::cout);
  } catch (const srsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
