#pragma once

#include <vector>

#include "vvl/field.hpp"

namespace vvl {

/// Sorted-magnitude summary of a grid field. Grid functions are treated as
/// piecewise constant on cells, which makes the maximal function
///   M_s(f) = sup { int_E |f| : |E| = s }
/// piecewise linear in s and exactly computable by sorting: the supremum
/// fills the largest cells first, fractionally at the boundary.
struct RearrangementProfile {
  double cell_measure = 0.0;
  /// |f| per cell, non-increasing; ties broken by flattened grid index.
  std::vector<double> sorted_abs;
  /// cum[k] = M_{k h^2}(f); size sorted_abs.size() + 1, cum[0] = 0.
  std::vector<double> cum;

  double l1() const { return cum.empty() ? 0.0 : cum.back(); }
  double total_measure() const { return cell_measure * sorted_abs.size(); }
};

RearrangementProfile profile(const SpectralField& f);
RearrangementProfile profile(const std::vector<double>& cell_values,
                             double cell_measure);

/// M_s(f) for s in [0, 4 pi^2]; exact at lattice measures s = k h^2 and
/// linearly interpolated between them.
double maximal_function(const RearrangementProfile& p, double s);

/// Lorentz L^(1,q) norm ( int_0^{4 pi^2} M_s^q ds/s )^{1/q}, q in [1, 2].
/// The first lattice segment, where M_s = s * max|f|, is integrated in closed
/// form; the rest by adaptive Gauss quadrature to 1e-10 relative.
double lorentz_norm(const RearrangementProfile& p, double q);

/// Orlicz L(log L)^alpha Luxemburg norm: the infimal lambda with
/// int (|f|/lambda) [log+(|f|/lambda)]^alpha dx <= 1, by bisection to 1e-10
/// relative. Returns 0 for the zero field.
double llogl_norm(const SpectralField& f, double alpha);
double llogl_norm(const RearrangementProfile& p, double alpha);

/// Decay functional int_0^delta M_s^q ds/s (q = 2 by default).
double decay_functional(const RearrangementProfile& p, double delta,
                        double q = 2.0);

/// Pointwise-in-s time average  s -> int_0^T M_s(g(t)) dt  by the trapezoid
/// rule over the sampled profiles; the result is again a profile on the same
/// cell lattice.
RearrangementProfile time_averaged_profile(
    const std::vector<RearrangementProfile>& profiles,
    const std::vector<double>& times);

/// Default measure samples: `count` logarithmically spaced values in
/// [h^2, 4 pi^2].
std::vector<double> log_spaced_measures(const GridSpec& grid, int count = 32);

/// Max over sampled (s, t) of
///   M_s(omega(t)) - M_s(omega0) - int_0^t M_s(g(tau)) dtau,
/// the defect of the a priori rearrangement bound. omega_traj and g_traj must
/// share the time grid; omega_traj[0] supplies omega0.
double apriori_violation(const std::vector<RearrangementProfile>& omega_traj,
                         const std::vector<RearrangementProfile>& g_traj,
                         const std::vector<double>& times,
                         const std::vector<double>& s_samples);

}  // namespace vvl
