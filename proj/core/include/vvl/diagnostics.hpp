#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vvl/ns_solver.hpp"

namespace vvl {

/// One viscosity sweep: decreasing nus, one ledger per nu, and velocity /
/// vorticity snapshots on a shared time grid.
struct SweepResult {
  std::vector<double> nus;  // strictly decreasing
  std::vector<RunLedger> ledgers;
  std::vector<double> sample_times;
  std::vector<std::vector<VelocityField>> u_samples;      // [nu][time]
  std::vector<std::vector<SpectralField>> omega_samples;  // [nu][time]
  std::string forcing_mode;  // "strong-limit" or "weak-oscillatory"
};

struct BalanceFlags {
  bool anomalous_dissipation = false;
  bool strong_convergence = false;
  bool equivalence_consistent = false;
};

/// Numeric verdicts for one sweep. Thresholds (1.5x dissipation decrease per
/// nu-halving, 0.7x Cauchy factor) are test budgets, not constants from the
/// theory.
struct BalanceReport {
  std::vector<double> nus;
  std::vector<double> zeta_T;
  std::vector<double> l2l2_gaps;   // consecutive-pair distances
  std::vector<double> ctl2_gaps;
  std::vector<double> balance_residual_final;  // |r(T)| per nu
  BalanceFlags flags;
  std::string forcing_mode;
};

/// r(t) = 1/2||u(t)||^2 - 1/2||u0||^2 - int_0^t <f,u>; for viscous runs this
/// equals -dissipation_cum up to the identity residual.
std::vector<double> balance_residual(const RunLedger& ledger);
std::vector<double> balance_residual(const RunLedger& ledger, double u0_energy);

/// zeta_nu(t) = nu int_0^t ||w||^2, recomputed from the enstrophy series by
/// the trapezoid rule. Requires nu > 0.
std::vector<double> zeta(const RunLedger& ledger);

/// min over t of the Gronwall envelope slack
///   (||u0||^2 + sqrt(t) M) e^{sqrt(t) M} - ||u(t)||^2,  M = ||f||_{L2_t L2_x}.
double gronwall_probe(const RunLedger& ledger, double f_l2t_l2x);

/// Per-nu sup over t > 0 of sqrt(nu t) ||w(t)||, plus the max/min uniformity
/// ratio. nu = 0 entries are excluded and noted.
struct VorticityDecayProbe {
  std::vector<double> nus;
  std::vector<double> sup_sqrt_nut_omega;
  double uniformity_ratio = 0.0;
  std::vector<double> excluded_nus;
};
VorticityDecayProbe vorticity_decay_probe(const SweepResult& sweep);

/// S_2(v; r): the L2 average of increments over all nonzero lattice offsets
/// with |h| <= r (uniform weights, shifts exact by index rolling). Requires
/// h <= r <= pi.
double structure_function(const VelocityField& v, double r);

/// S_2^T = ( int_0^T S_2(v(t); r)^2 dt )^{1/2} by the trapezoid rule.
double s2_time(const std::vector<double>& times,
               const std::vector<VelocityField>& traj, double r);

/// The three measurable sides of the interpolation inequality
/// ||w|| <= C r ||grad w|| + 2 S_2(u; r)/r, plus the implied-constant ratio.
struct InterpolationProbe {
  double omega_l2;
  double r_grad_omega_l2;
  double s2_over_r;
  double ratio;  // ||w|| / (r ||grad w|| + 2 S_2/r)
};
InterpolationProbe interpolation_probe(const VelocityField& u,
                                       const SpectralField& omega, double r);

/// (L2_t L2_x, C_t L2_x) distances between two sampled trajectories. Times
/// are restricted to the exact common subset; a finer spatial grid is
/// restricted to the coarser one by spectral truncation.
struct TrajectoryDistance {
  double l2t_l2x;
  double ct_l2x;
};
TrajectoryDistance convergence_metrics(
    const std::vector<double>& times_a, const std::vector<VelocityField>& a,
    const std::vector<double>& times_b, const std::vector<VelocityField>& b);

/// Time-integrated pairings int_0^T <v(t), psi_j> dt per test field.
/// Composite Simpson when the sample count is odd and uniform, trapezoid
/// otherwise.
std::vector<double> weak_pairing_probe(
    const std::vector<double>& times,
    const std::function<VelocityField(double)>& series,
    const std::vector<VelocityField>& test_fields);

/// The fixed test family: grad-perp of the 8 lowest nonconstant Fourier
/// modes plus one smooth radial bump stream function supported in |x| < 1.
std::vector<VelocityField> test_velocity_family(const GridSpec& grid);

/// Theorem-level verdicts for a sweep (needs >= 3 viscosities).
BalanceReport theorem_verdict(const SweepResult& sweep);

std::string balance_report_json(const BalanceReport& report);

}  // namespace vvl
