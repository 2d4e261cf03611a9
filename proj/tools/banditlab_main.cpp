#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "banditlab/harness.hpp"
#include "banditlab/version.hpp"

namespace {

void add_common(CLI::App* sub, banditlab::CliOptions& opts,
                std::string& config, std::string& output) {
  sub->add_option("-c,--config", config, "experiment config (JSON)")
      ->required();
  sub->add_option("-o,--output", output,
                  "output directory (overrides config and environment)");
  sub->add_option("-j,--jobs", opts.jobs, "worker threads per cell")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian bandit simulation harness"};
  app.set_version_flag("--version", banditlab::kVersion);
  app.require_subcommand(1);

  banditlab::CliOptions opts;
  std::string config;
  std::string output;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run configured algorithms and write per-run CSVs");
  add_common(simulate, opts, config, output);
  CLI::App* oracle = app.add_subcommand(
      "oracle-check",
      "compare quadrature posterior quantities against Monte Carlo");
  add_common(oracle, opts, config, output);
  CLI::App* bound = app.add_subcommand(
      "bound-check", "check mean regret against analytic growth bounds");
  add_common(bound, opts, config, output);

  CLI11_PARSE(app, argc, argv);

  opts.config_path = config;
  if (!output.empty()) opts.output_override = output;

  if (simulate->parsed()) {
    return banditlab::cmd_simulate(opts, std::cout, std::cerr);
  }
  if (oracle->parsed()) {
    return banditlab::cmd_oracle_check(opts, std::cout, std::cerr);
  }
  return banditlab::cmd_bound_check(opts, std::cout, std::cerr);
}
