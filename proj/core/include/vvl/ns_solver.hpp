#pragma once

#include <optional>
#include <vector>

#include "vvl/scenarios.hpp"

namespace vvl {

/// One run of the vorticity-form solver
///   dw/dt + u . grad w = nu Lap w + g,  u = biot_savart(w),
/// integrated by integrating-factor RK4: the viscous factor e^{-nu |k|^2 dt}
/// is applied exactly per mode and the forcing is evaluated at the
/// Runge-Kutta stage times.
struct SimulationConfig {
  GridSpec grid;
  double nu = 0.0;  // >= 0; nu = 0 runs the Euler limit candidate
  double dt = 0.0;
  double T = 0.0;
  ScenarioRef initial;
  ScenarioRef forcing;
  int snapshot_stride = 1;
  bool advection = true;  // off = forced heat equation, used by probes
  double cfl_limit = 0.5;
  int max_dt_halvings = 10;
};

struct TrajectorySample {
  double t = 0.0;
  SpectralField omega;
  VelocityField u;
};

/// Per-step time series of the energy identity
///   1/2 ||u(t)||^2 = 1/2 ||u0||^2 - nu int ||w||^2 + int <f, u>.
/// Cumulative integrals use the trapezoid rule on the step grid.
struct RunLedger {
  double nu = 0.0;
  std::vector<double> times;
  std::vector<double> energy;           // 1/2 ||u||^2
  std::vector<double> enstrophy;        // ||w||^2
  std::vector<double> dissipation_cum;  // nu int_0^t ||w||^2
  std::vector<double> work_cum;         // int_0^t <f, u>
  std::vector<double> identity_residual;

  double max_identity_residual() const;
};

struct RunResult {
  std::vector<TrajectorySample> trajectory;
  RunLedger ledger;
};

/// Thrown when adaptive step halving is exhausted mid-run; carries what was
/// computed before the failure.
class RunFailure : public Error {
 public:
  RunFailure(const std::string& what, RunResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const RunResult& partial() const { return partial_; }

 private:
  RunResult partial_;
};

/// -dealias(u . grad w) with u = biot_savart(w); the advection term of the
/// vorticity equation. Output has zero mean.
SpectralField nonlinear_term(const SpectralField& omega);

/// Advance one step of size dt. Checks the advective CFL condition
/// dt max|u| / h <= cfl_limit and suggests a compliant dt on violation.
TrajectorySample step(const TrajectorySample& state, double dt,
                      const Forcing& forcing, double nu,
                      bool advection = true, double cfl_limit = 0.5);

/// Integrate to T. The step size halves when the CFL check fails (at most
/// max_dt_halvings times over the run) and the final step is clipped to land
/// on T exactly.
RunResult run(const SimulationConfig& config);

/// L2 norms of  D_t w + u . grad w - nu Lap w - g  at interior snapshots,
/// D_t the centered difference on the (uniform) snapshot grid. Needs at
/// least 3 snapshots.
std::vector<double> pde_residual(const std::vector<TrajectorySample>& traj,
                                 const Forcing& forcing, double nu);

/// Ledger CSV with header t,energy,enstrophy,dissipation_cum,work_cum,identity_residual.
std::string ledger_csv(const RunLedger& ledger);
RunLedger ledger_from_csv(const std::string& text, double nu);

}  // namespace vvl
