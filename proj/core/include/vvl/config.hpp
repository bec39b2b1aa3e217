#pragma once

#include <string>
#include <vector>

#include "vvl/scenarios.hpp"

namespace vvl {

/// Validated experiment configuration. The on-disk form is line-oriented
/// `section.key = value` text; `#` starts a comment. Unknown keys are
/// rejected, missing required keys are reported by name, type mismatches by
/// line number. See config.cpp for the full key schema and defaults.
struct ExperimentConfig {
  // grid / time / physics
  int n = 0;
  double dt = 0.0;
  double T = 0.0;
  std::vector<double> nus;  // physics.nu, scalar or comma list
  bool advection = true;

  ScenarioRef scenario;
  ScenarioRef forcing;

  // output
  std::string output_dir;
  int snapshot_stride = 10;
  bool write_snapshots = true;
  bool write_plots = true;

  // split command
  int split_levels = 4;
  double split_dt0 = 0.0;      // 0 -> T/8
  double split_inner_dt = 0.0; // 0 -> Dt/20
  int split_samples_per_step = 1;

  // diagnose command
  int diag_s_samples = 32;
  double diag_delta = 1.0;
  double diag_lorentz_q = 2.0;
  double diag_llogl_alpha = 1.0;
  double diag_r = 0.5;

  GridSpec grid() const { return GridSpec(n); }
  /// Canonical text form; parse(echo()) reproduces the config.
  std::string echo() const;
};

/// Parse config text. `overrides` are `section.key=value` entries applied on
/// top of the file before validation (the CLI's --set).
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::vector<std::string>& overrides = {});
ExperimentConfig parse_config(const std::string& path,
                              const std::vector<std::string>& overrides = {});

}  // namespace vvl
