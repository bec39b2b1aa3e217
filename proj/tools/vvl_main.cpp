// vvl: pseudo-spectral laboratory for the 2D Navier-Stokes vanishing
// viscosity limit.
//
//   vvl <command> --config <path> [--out <dir>] [--set section.key=value ...]
//
// Commands: simulate, sweep, split, diagnose, scenario-dump.
// VVL_THREADS caps sweep concurrency.

#include <CLI11.hpp>

#include <iostream>

#include "vvl/harness.hpp"
#include "vvl/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"2D Navier-Stokes vanishing-viscosity laboratory"};
  app.set_version_flag("--version", vvl::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file")
        ->required();
    cmd->add_option("--out", out_dir, "override output.dir");
    cmd->add_option("--set", overrides,
                    "override a config key, section.key=value");
  };

  add_common(app.add_subcommand("simulate", "run one simulation"));
  add_common(app.add_subcommand("sweep", "run a viscosity sweep"));
  add_common(app.add_subcommand("split", "operator-splitting rate study"));
  add_common(app.add_subcommand("diagnose", "run and emit diagnostic probes"));
  add_common(
      app.add_subcommand("scenario-dump", "write scenario fields and norms"));

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<std::string> merged = overrides;
    if (!out_dir.empty()) merged.push_back("output.dir=" + out_dir);
    const vvl::ExperimentConfig cfg = vvl::parse_config(config_path, merged);
    const std::string command = app.get_subcommands().front()->get_name();
    return vvl::harness::dispatch(command, cfg);
  } catch (const vvl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
