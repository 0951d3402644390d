#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "rsw/commands.hpp"
#include "rsw/grid.hpp"

namespace {

void add_common(CLI::App* cmd, rsw::CommandOptions& opts, std::string& config, std::string& output) {
  cmd->add_option("--config", config, "run configuration (JSON)");
  cmd->add_option("--seed", opts.seed, "seed for randomized checks");
  cmd->add_option("--output", output, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("RSW_NUM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) rsw::set_fft_threads(n);
  }

  CLI::App app{"Maxwell evolution in the 8-component Riemann-Silberstein-Weber representation"};
  app.require_subcommand(1);

  rsw::CommandOptions opts;
  std::string config, output, oracle, mutation;

  auto* verify = app.add_subcommand("verify", "run the identity suites");
  add_common(verify, opts, config, output);
  verify->add_option("--scope", opts.scope, "algebra, operators, evolution or all");
  verify->add_option("--mutation", mutation, "perturb one constant matrix entry before checking");

  auto* evolve = app.add_subcommand("evolve", "time evolution from a config");
  add_common(evolve, opts, config, output);
  evolve->add_option("--oracle", oracle, "cross-check against the curl-equation solver")
      ->check(CLI::IsMember({"on", "off"}));

  auto* dispersion = app.add_subcommand("dispersion", "measure omega(k) with the exact propagator");
  add_common(dispersion, opts, config, output);

  auto* beam = app.add_subcommand("beam", "beam-optics Hamiltonian structure checks");
  add_common(beam, opts, config, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rsw::exit_config_error;
  }

  if (!config.empty()) opts.config = config;
  if (!output.empty()) opts.output = output;
  if (!mutation.empty()) opts.mutation = mutation;
  if (!oracle.empty()) opts.oracle = oracle == "on";

  if (verify->parsed()) return rsw::cmd_verify(opts, std::cout, std::cerr);
  if (evolve->parsed()) return rsw::cmd_evolve(opts, std::cout, std::cerr);
  if (dispersion->parsed()) return rsw::cmd_dispersion(opts, std::cout, std::cerr);
  return rsw::cmd_beam(opts, std::cout, std::cerr);
}
