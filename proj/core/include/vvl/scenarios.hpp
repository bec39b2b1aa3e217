#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "vvl/field.hpp"

namespace vvl {

/// Named generator plus its parameter map, as carried by config files
/// (scenario.kind = ..., scenario.<param> = ...).
struct ScenarioRef {
  std::string kind;  // taylor_green | counterexample | lp_family |
                     // lorentz_family | llogl_family | random_smooth | zero
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

/// Closed-form Taylor-Green data at time t:
///   u = e^{-2 nu t} (sin x cos y, -cos x sin y),  omega = 2 e^{-2 nu t} sin x sin y.
struct TaylorGreen {
  VelocityField u;
  SpectralField omega;
  double energy;     // pi^2 e^{-4 nu t}
  double enstrophy;  // 4 pi^2 e^{-4 nu t}
};
TaylorGreen taylor_green(const GridSpec& grid, double nu, double t);

/// C-infinity bump e^{-1/(1-z^2)} normalized to max 1, and its derivatives;
/// zero outside |z| < 1. Used for the phi and gamma cutoffs.
double bump(double z);
double bump_d1(double z);
double bump_d2(double z);
double bump_d3(double z);

/// The cutoffs of the oscillatory family, supported on [1/2, 1] with
/// maximum 1 at 3/4: phi(r) = gamma(r) = bump(4 (r - 3/4)).
double cutoff(double r);
double cutoff_d1(double r);

/// Oscillatory manufactured family on the fundamental domain [-pi, pi)^2:
///   u(x, t) = (x_perp / |x|^2) sin(|x| / nu^{1/3}) phi(|x|) gamma(t),
///   f = du/dt - nu Lap u.
/// The stationary profile is sampled once, Leray-projected, and cached;
/// the Laplacian in f is spectral. gamma(0) = 0, so the initial data vanish.
class CounterexampleScenario {
 public:
  CounterexampleScenario(const GridSpec& grid, double nu);

  /// Smallest even n resolving the oscillation (16 points per wavelength).
  static int required_n(double nu);

  VelocityField u(double t) const;
  VelocityField f(double t) const;
  SpectralField omega(double t) const;
  /// g = curl f = W gamma'(t) - nu (Lap W) gamma(t).
  SpectralField g(double t) const;

  const VelocityField& velocity_profile() const { return u_profile_; }
  const SpectralField& vorticity_profile() const { return w_profile_; }
  double nu() const { return nu_; }

 private:
  GridSpec grid_;
  double nu_;
  VelocityField u_profile_;      // U
  VelocityField lap_u_profile_;  // Lap U (spectral)
  SpectralField w_profile_;      // W = curl U
  SpectralField lap_w_profile_;  // Lap W
};

/// Convenience form of the family: (u^nu(t), f^nu(t)).
std::pair<VelocityField, VelocityField> counterexample_family(
    const GridSpec& grid, double nu, double t);

/// Radially layered zero-mean vorticity with prescribed decreasing
/// rearrangement; kind selects the envelope,
///   lp:      f*(s) ~ A s^{-1/p'},
///   lorentz: f*(s) ~ A s^{-1} log(e S / s)^{-(1 + 2/q)},
///   llogl:   f*(s) ~ A s^{-1} log(e S / s)^{-(alpha + 2)}.
/// Signs alternate on dyadic annuli (seed-shuffled) and the negative layers
/// are rescaled so the discrete mean is exactly zero.
enum class FamilyKind { lp, lorentz, llogl };
SpectralField vorticity_family(const GridSpec& grid, FamilyKind kind,
                               double shape_param, double amplitude,
                               uint64_t seed);

/// The continuum envelope F(s) used by vorticity_family, exposed so tests can
/// integrate it radially as an independent oracle.
double family_envelope(FamilyKind kind, double shape_param, double amplitude,
                       double s);
/// Envelope support bounds in measure: [s_min(grid), s_max].
std::pair<double, double> family_measure_range(const GridSpec& grid);

/// Band-limited random field: amplitudes |k|^{-slope} for 0 < |k|_inf <=
/// k_max, uniformly random phases, zero mean, real. Deterministic in seed.
/// Requires 3 k_max <= n (the dealias band).
SpectralField random_smooth_field(const GridSpec& grid, uint64_t seed,
                                  double slope, int k_max,
                                  double amplitude = 1.0);

/// Time-indexed forcing pair: g = curl f drives the vorticity equation,
/// f enters the work integral <f, u>. Either may be synthesized from the
/// other (Biot-Savart one way, curl the other).
struct Forcing {
  std::function<SpectralField(double)> g;
  std::function<VelocityField(double)> f;
  bool is_zero = false;
  std::string mode;  // "strong-limit" or "weak-oscillatory"
};

/// Resolve a scenario reference to initial vorticity.
SpectralField initial_vorticity(const GridSpec& grid, const ScenarioRef& ref);

/// Resolve a scenario reference to a forcing; nu is needed by the
/// counterexample family.
Forcing make_forcing(const GridSpec& grid, const ScenarioRef& ref, double nu);

}  // namespace vvl
