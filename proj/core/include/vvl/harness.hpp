#pragma once

#include <filesystem>

#include "vvl/config.hpp"
#include "vvl/diagnostics.hpp"
#include "vvl/splitting.hpp"

namespace vvl::harness {

/// One run of the configured scenario at the given viscosity.
RunResult simulate(const ExperimentConfig& cfg, double nu);

struct SweepOutput {
  SweepResult sweep;
  std::vector<RunResult> runs;
  BalanceReport report;
  /// Runs that failed, as (nu, message); partial results are kept.
  std::vector<std::pair<double, std::string>> failures;
};

/// Execute every configured viscosity (concurrently up to VVL_THREADS),
/// restrict all trajectories to the common sample times, and evaluate the
/// theorem verdicts when at least 3 viscosities completed.
SweepOutput run_sweep(const ExperimentConfig& cfg);

/// Splitting study assembled from the config: beta0 is the scenario's
/// initial vorticity, U the associated velocity frozen at t = 0, g the
/// configured forcing.
SplitConfig make_split_config(const ExperimentConfig& cfg, double nu);

/// Commands behind the CLI. Each writes its artifacts plus manifest.json
/// under cfg.output_dir and returns a process exit code (0 = every run and
/// every enabled probe completed).
int cmd_simulate(const ExperimentConfig& cfg);
int cmd_sweep(const ExperimentConfig& cfg);
int cmd_split(const ExperimentConfig& cfg);
int cmd_diagnose(const ExperimentConfig& cfg);
int cmd_scenario_dump(const ExperimentConfig& cfg);

int dispatch(const std::string& command, const ExperimentConfig& cfg);

/// Plot files for a sweep: energy_vs_t.svg, zeta_vs_nu.svg (log-log),
/// gaps_vs_nu.svg. Failures downgrade to warnings.
void emit_plots(const std::filesystem::path& dir, const BalanceReport& report,
                const std::vector<RunLedger>& ledgers);

int thread_budget(size_t jobs);

}  // namespace vvl::harness
