// cyclordf run <config> [--set key=value ...] [--jobs N] [--out PREFIX]

#include <iostream>

#include "CLI11.hpp"
#include "cyclordf/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rate-distortion functions of sampled cyclostationary Gaussian sources"};
  app.set_version_flag("--version", std::string(cyclordf::kVersion));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Execute the task described by a config file");
  std::string config_path;
  cyclordf::RunOptions opts;
  std::string out_prefix;
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--set", opts.overrides, "Override a config value, section.key=value")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  run->add_option("--jobs", opts.jobs, "Worker threads (default: CYCLORDF_JOBS or all cores)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_prefix, "Output path prefix (overrides output.prefix)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cyclordf::kExitConfig;
  }
  if (!out_prefix.empty()) opts.out_prefix = out_prefix;
  return cyclordf::run(config_path, opts, std::cerr);
}
