#include "vvl/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vvl/errors.hpp"
#include "vvl/quadrature.hpp"

namespace vvl {

namespace {

constexpr std::array<double, 15> kGl15Nodes = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr std::array<double, 15> kGl15Weights = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

double gl15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 15; ++i)
    s += kGl15Weights[i] * f(mid + half * kGl15Nodes[i]);
  return s * half;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl15(f, a, mid);
  const double right = gl15(f, mid, b);
  const double err = std::abs(left + right - whole);
  if (depth >= 24 || err <= tol * std::max(1e-300, std::abs(left + right)))
    return left + right;
  return adaptive_rec(f, a, mid, left, tol, depth + 1) +
         adaptive_rec(f, mid, b, right, tol, depth + 1);
}

}  // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a,
                      double b, double rel_tol) {
  if (a == b) return 0.0;
  return adaptive_rec(f, a, b, gl15(f, a, b), rel_tol, 0);
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double s = 0.0;
  for (size_t i = 1; i < t.size(); ++i)
    s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& t,
                                         const std::vector<double>& y) {
  std::vector<double> out(t.size(), 0.0);
  for (size_t i = 1; i < t.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

RearrangementProfile profile(const std::vector<double>& cell_values,
                             double cell_measure) {
  const size_t cells = cell_values.size();
  std::vector<int> order(cells);
  std::iota(order.begin(), order.end(), 0);
  // Descending by magnitude, ties by flattened index.
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double va = std::abs(cell_values[a]);
    const double vb = std::abs(cell_values[b]);
    if (va != vb) return va > vb;
    return a < b;
  });

  RearrangementProfile p;
  p.cell_measure = cell_measure;
  p.sorted_abs.resize(cells);
  p.cum.resize(cells + 1);
  p.cum[0] = 0.0;
  for (size_t k = 0; k < cells; ++k) {
    p.sorted_abs[k] = std::abs(cell_values[order[k]]);
    p.cum[k + 1] = p.cum[k] + p.sorted_abs[k] * cell_measure;
  }
  return p;
}

RearrangementProfile profile(const SpectralField& f) {
  return profile(f.values(), f.grid().cell_measure());
}

double maximal_function(const RearrangementProfile& p, double s) {
  const double total = p.total_measure();
  if (s < -1e-12 * total || s > total * (1.0 + 1e-12))
    throw DomainError("maximal_function: measure s = " + std::to_string(s) +
                      " outside [0, " + std::to_string(total) + "]");
  s = std::clamp(s, 0.0, total);
  const double pos = s / p.cell_measure;
  const auto k = static_cast<size_t>(pos);
  if (k >= p.sorted_abs.size()) return p.cum.back();
  const double frac = s - static_cast<double>(k) * p.cell_measure;
  return p.cum[k] + frac * p.sorted_abs[k];
}

namespace {

// int_{lo}^{hi} M_s^q ds/s, with M piecewise linear on the cell lattice.
// The leading segment carries M_s = slope * s, which integrates in closed
// form and removes the apparent singularity at s = 0.
double ds_over_s_integral(const RearrangementProfile& p, double lo, double hi,
                          double q) {
  if (hi <= lo) return 0.0;
  const double h2 = p.cell_measure;
  double total = 0.0;
  const size_t segments = p.sorted_abs.size();
  for (size_t k = 0; k < segments; ++k) {
    const double a = std::max(lo, static_cast<double>(k) * h2);
    const double b = std::min(hi, static_cast<double>(k + 1) * h2);
    if (b <= a) continue;
    const double base = p.cum[k];
    const double slope = p.sorted_abs[k];
    if (k == 0 && base == 0.0) {
      // M_s = slope * s on [0, h^2]:  int (slope s)^q ds/s = slope^q s^q / q.
      if (slope > 0.0)
        total += std::pow(slope, q) *
                 (std::pow(b, q) - std::pow(a, q)) / q;
      continue;
    }
    if (slope == 0.0) {
      if (base > 0.0) total += std::pow(base, q) * std::log(b / a);
      continue;
    }
    const double s0 = static_cast<double>(k) * h2;
    total += adaptive_gauss(
        [&](double s) {
          return std::pow(base + slope * (s - s0), q) / s;
        },
        a, b, 1e-11);
  }
  return total;
}

}  // namespace

double lorentz_norm(const RearrangementProfile& p, double q) {
  if (q < 1.0 || q > 2.0)
    throw DomainError("lorentz_norm: q must lie in [1, 2], got " +
                      std::to_string(q));
  const double integral = ds_over_s_integral(p, 0.0, p.total_measure(), q);
  return std::pow(integral, 1.0 / q);
}

double decay_functional(const RearrangementProfile& p, double delta,
                        double q) {
  const double total = p.total_measure();
  if (delta <= 0.0 || delta > total * (1.0 + 1e-12))
    throw DomainError("decay_functional: delta = " + std::to_string(delta) +
                      " outside (0, " + std::to_string(total) + "]");
  return ds_over_s_integral(p, 0.0, std::min(delta, total), q);
}

double llogl_norm(const RearrangementProfile& p, double alpha) {
  if (alpha <= 0.0)
    throw DomainError("llogl_norm: alpha must be positive");
  if (p.l1() == 0.0) return 0.0;

  const auto integrand_sum = [&](double lambda) {
    double s = 0.0;
    for (double v : p.sorted_abs) {
      if (v <= lambda) break;  // sorted: the rest contribute log+ = 0
      const double r = v / lambda;
      s += r * std::pow(std::log(r), alpha) * p.cell_measure;
    }
    return s;
  };

  // The map lambda -> integral is continuous, non-increasing, -> infinity as
  // lambda -> 0 and identically 0 for lambda >= max|f|. Bisect the feasibility
  // predicate integral <= 1.
  double hi = *std::max_element(p.sorted_abs.begin(), p.sorted_abs.end());
  if (hi == 0.0) return 0.0;
  double lo = hi;
  while (integrand_sum(lo) <= 1.0) {
    lo *= 0.5;
    if (lo < 1e-300) return 0.0;  // constraint never binds
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (integrand_sum(mid) <= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

double llogl_norm(const SpectralField& f, double alpha) {
  return llogl_norm(profile(f), alpha);
}

RearrangementProfile time_averaged_profile(
    const std::vector<RearrangementProfile>& profiles,
    const std::vector<double>& times) {
  if (profiles.empty() || profiles.size() != times.size())
    throw InsufficientDataError(
        "time_averaged_profile: need matching non-empty profiles and times");
  const size_t cells = profiles[0].sorted_abs.size();
  RearrangementProfile avg;
  avg.cell_measure = profiles[0].cell_measure;
  avg.sorted_abs.assign(cells, 0.0);
  for (size_t i = 0; i < profiles.size(); ++i) {
    if (profiles[i].sorted_abs.size() != cells)
      throw DimensionError("time_averaged_profile: profile size mismatch");
    double w = 0.0;
    if (i > 0) w += 0.5 * (times[i] - times[i - 1]);
    if (i + 1 < profiles.size()) w += 0.5 * (times[i + 1] - times[i]);
    for (size_t k = 0; k < cells; ++k)
      avg.sorted_abs[k] += w * profiles[i].sorted_abs[k];
  }
  avg.cum.resize(cells + 1);
  avg.cum[0] = 0.0;
  for (size_t k = 0; k < cells; ++k)
    avg.cum[k + 1] = avg.cum[k] + avg.sorted_abs[k] * avg.cell_measure;
  return avg;
}

std::vector<double> log_spaced_measures(const GridSpec& grid, int count) {
  const double lo = grid.cell_measure();
  const double hi = GridSpec::domain_measure();
  std::vector<double> s(count);
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 1.0 : static_cast<double>(i) / (count - 1);
    s[i] = lo * std::pow(hi / lo, t);
  }
  s.back() = hi;
  return s;
}

double apriori_violation(const std::vector<RearrangementProfile>& omega_traj,
                         const std::vector<RearrangementProfile>& g_traj,
                         const std::vector<double>& times,
                         const std::vector<double>& s_samples) {
  if (omega_traj.size() < 2 || omega_traj.size() != times.size())
    throw InsufficientDataError(
        "apriori_violation: need >= 2 vorticity profiles matching times");
  if (g_traj.size() != times.size())
    throw InsufficientDataError(
        "apriori_violation: forcing profiles must share the time grid");
  double worst = -std::numeric_limits<double>::infinity();
  for (double s : s_samples) {
    const double m0 = maximal_function(omega_traj[0], s);
    std::vector<double> mg(times.size());
    for (size_t i = 0; i < times.size(); ++i)
      mg[i] = maximal_function(g_traj[i], s);
    const std::vector<double> budget = cumulative_trapezoid(times, mg);
    for (size_t i = 0; i < times.size(); ++i) {
      const double v =
          maximal_function(omega_traj[i], s) - m0 - budget[i];
      worst = std::max(worst, v);
    }
  }
  return worst;
}

}  // namespace vvl
