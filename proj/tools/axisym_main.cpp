#include <CLI11.hpp>
#include <iostream>

#include "axisym/commands.hpp"
#include "axisym/parallel.hpp"
#include "axisym/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"axisym: axially symmetric Gaussian random fields on the sphere"};
  app.set_version_flag("--version", axisym::kVersion);
  app.require_subcommand(1);

  axisym::CommandOptions options;
  std::uint64_t seed = 0;
  std::string out_dir;
  int threads = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config_path, "Path to the INI config file")
        ->required();
    cmd->add_option("--seed", seed, "Override the config seed");
    cmd->add_option("--out", out_dir, "Override the output directory");
    cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
    cmd->add_flag("--allow-unchecked", options.allow_unchecked,
                  "Bypass the admissibility gate (still warns)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Sample realizations onto a grid");
  CLI::App* covariance = app.add_subcommand("covariance", "Evaluate a covariance panel");
  CLI::App* variogram =
      app.add_subcommand("variogram", "Empirical vs theoretical local variograms");
  CLI::App* converge = app.add_subcommand("converge", "Truncation-error convergence study");
  CLI::App* check = app.add_subcommand("check", "Summability and PSD admissibility report");
  for (CLI::App* cmd : {simulate, covariance, variogram, converge, check}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = nullptr;
  for (CLI::App* cmd : {simulate, covariance, variogram, converge, check})
    if (cmd->parsed()) active = cmd;
  if (active == nullptr) return axisym::kExitFailure;

  if (active->count("--seed")) options.seed = seed;
  if (active->count("--out")) options.out_dir = out_dir;
  options.threads = axisym::resolve_threads(threads);

  if (active == simulate) return axisym::cmd_simulate(options, std::cout);
  if (active == covariance) return axisym::cmd_covariance(options, std::cout);
  if (active == variogram) return axisym::cmd_variogram(options, std::cout);
  if (active == converge) return axisym::cmd_converge(options, std::cout);
  return axisym::cmd_check(options, std::cout);
}
