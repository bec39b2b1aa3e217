#include "vvl/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "vvl/quadrature.hpp"
#include "vvl/scenarios.hpp"
#include "vvl/spectral.hpp"

namespace vvl {

std::vector<double> balance_residual(const RunLedger& led) {
  return balance_residual(led, led.energy.empty() ? 0.0 : led.energy[0]);
}

std::vector<double> balance_residual(const RunLedger& led, double u0_energy) {
  std::vector<double> r(led.times.size());
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = led.energy[i] - u0_energy - led.work_cum[i];
  return r;
}

std::vector<double> zeta(const RunLedger& led) {
  if (led.nu <= 0.0)
    throw DomainError("zeta: the dissipation functional needs nu > 0");
  std::vector<double> scaled(led.enstrophy.size());
  for (size_t i = 0; i < scaled.size(); ++i)
    scaled[i] = led.nu * led.enstrophy[i];
  return cumulative_trapezoid(led.times, scaled);
}

double gronwall_probe(const RunLedger& led, double f_l2t_l2x) {
  const double M = f_l2t_l2x;
  const double u0_sq = 2.0 * led.energy[0];
  double slack = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < led.times.size(); ++i) {
    const double rt = std::sqrt(led.times[i]);
    const double envelope = (u0_sq + rt * M) * std::exp(rt * M);
    slack = std::min(slack, envelope - 2.0 * led.energy[i]);
  }
  return slack;
}

VorticityDecayProbe vorticity_decay_probe(const SweepResult& sweep) {
  VorticityDecayProbe probe;
  for (size_t v = 0; v < sweep.nus.size(); ++v) {
    const double nu = sweep.nus[v];
    if (nu <= 0.0) {
      probe.excluded_nus.push_back(nu);
      continue;
    }
    const RunLedger& led = sweep.ledgers[v];
    double sup = 0.0;
    for (size_t i = 0; i < led.times.size(); ++i) {
      if (led.times[i] <= 0.0) continue;
      sup = std::max(sup, std::sqrt(nu * led.times[i] * led.enstrophy[i]));
    }
    probe.nus.push_back(nu);
    probe.sup_sqrt_nut_omega.push_back(sup);
  }
  if (!probe.sup_sqrt_nut_omega.empty()) {
    const auto [mn, mx] = std::minmax_element(
        probe.sup_sqrt_nut_omega.begin(), probe.sup_sqrt_nut_omega.end());
    probe.uniformity_ratio = *mn > 0.0 ? *mx / *mn
                             : std::numeric_limits<double>::infinity();
  }
  return probe;
}

namespace {

std::vector<std::pair<int, int>> ball_offsets(const GridSpec& grid, double r) {
  if (r <= 0.0 || r > std::numbers::pi)
    throw DomainError("structure_function: r must lie in (0, pi]");
  const double h = grid.h();
  const int reach = static_cast<int>(std::floor(r / h));
  std::vector<std::pair<int, int>> offsets;
  for (int a = -reach; a <= reach; ++a)
    for (int b = -reach; b <= reach; ++b) {
      if (a == 0 && b == 0) continue;
      if (h * h * (a * a + b * b) <= r * r) offsets.emplace_back(a, b);
    }
  if (offsets.empty())
    throw DomainError("structure_function: no lattice offsets with |h| <= r (r < grid spacing)");
  return offsets;
}

double shifted_increment_sq(const std::vector<double>& v, int n, int a,
                            int b) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const int is = (i + a + n) % n;
    for (int j = 0; j < n; ++j) {
      const int js = (j + b + n) % n;
      const double d = v[is * n + js] - v[i * n + j];
      s += d * d;
    }
  }
  return s;
}

}  // namespace

double structure_function(const VelocityField& v, double r) {
  const GridSpec& grid = v.grid();
  const auto offsets = ball_offsets(grid, r);
  const int n = grid.n;
  double acc = 0.0;
  for (const auto& [a, b] : offsets) {
    acc += shifted_increment_sq(v.x.values(), n, a, b);
    acc += shifted_increment_sq(v.y.values(), n, a, b);
  }
  acc *= grid.cell_measure() / static_cast<double>(offsets.size());
  return std::sqrt(std::max(0.0, acc));
}

double s2_time(const std::vector<double>& times,
               const std::vector<VelocityField>& traj, double r) {
  std::vector<double> s2sq(traj.size());
  for (size_t i = 0; i < traj.size(); ++i) {
    const double s = structure_function(traj[i], r);
    s2sq[i] = s * s;
  }
  return std::sqrt(std::max(0.0, trapezoid(times, s2sq)));
}

InterpolationProbe interpolation_probe(const VelocityField& u,
                                       const SpectralField& omega, double r) {
  const SpectralField w = curl(u);
  const double mismatch = l2_norm(w.axpy(-1.0, omega));
  if (mismatch > 1e-8)
    throw ConsistencyError(
        "interpolation_probe: curl(u) differs from omega by " +
        std::to_string(mismatch));
  InterpolationProbe p{};
  p.omega_l2 = l2_norm(omega);
  const SpectralField wx = derivative(omega, Axis::x);
  const SpectralField wy = derivative(omega, Axis::y);
  p.r_grad_omega_l2 =
      r * std::sqrt(inner_product_l2(wx, wx) + inner_product_l2(wy, wy));
  p.s2_over_r = structure_function(u, r) / r;
  const double denom = p.r_grad_omega_l2 + 2.0 * p.s2_over_r;
  p.ratio = denom > 0.0 ? p.omega_l2 / denom : 0.0;
  return p;
}

TrajectoryDistance convergence_metrics(const std::vector<double>& times_a,
                                       const std::vector<VelocityField>& a,
                                       const std::vector<double>& times_b,
                                       const std::vector<VelocityField>& b) {
  if (a.empty() || b.empty())
    throw ResampleError("convergence_metrics: empty trajectory");

  // Restrict to the exact common time subset.
  std::vector<size_t> ia, ib;
  {
    size_t i = 0, j = 0;
    const double tol = 1e-9;
    while (i < times_a.size() && j < times_b.size()) {
      if (std::abs(times_a[i] - times_b[j]) <= tol) {
        ia.push_back(i);
        ib.push_back(j);
        ++i;
        ++j;
      } else if (times_a[i] < times_b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  if (ia.size() < 2)
    throw ResampleError(
        "convergence_metrics: fewer than 2 common sample times");

  const GridSpec coarse =
      a[0].grid().n <= b[0].grid().n ? a[0].grid() : b[0].grid();
  std::vector<double> times, diff_sq;
  double ct = 0.0;
  for (size_t k = 0; k < ia.size(); ++k) {
    const VelocityField ua = truncate_to(a[ia[k]], coarse);
    const VelocityField ub = truncate_to(b[ib[k]], coarse);
    const VelocityField d = ua.axpy(-1.0, ub);
    const double nrm_sq = inner_product_l2(d, d);
    times.push_back(times_a[ia[k]]);
    diff_sq.push_back(nrm_sq);
    ct = std::max(ct, std::sqrt(std::max(0.0, nrm_sq)));
  }
  return {std::sqrt(std::max(0.0, trapezoid(times, diff_sq))), ct};
}

std::vector<double> weak_pairing_probe(
    const std::vector<double>& times,
    const std::function<VelocityField(double)>& series,
    const std::vector<VelocityField>& test_fields) {
  if (times.size() < 2)
    throw InsufficientDataError("weak_pairing_probe: need >= 2 samples");

  bool uniform = true;
  const double dt0 = times[1] - times[0];
  for (size_t i = 1; i < times.size(); ++i)
    if (std::abs(times[i] - times[i - 1] - dt0) > 1e-9 * std::max(1.0, dt0))
      uniform = false;
  const bool simpson = uniform && times.size() % 2 == 1;

  std::vector<std::vector<double>> rows(test_fields.size(),
                                        std::vector<double>(times.size()));
  for (size_t i = 0; i < times.size(); ++i) {
    const VelocityField v = series(times[i]);
    for (size_t j = 0; j < test_fields.size(); ++j)
      rows[j][i] = inner_product_l2(v, test_fields[j]);
  }

  std::vector<double> out(test_fields.size());
  for (size_t j = 0; j < test_fields.size(); ++j) {
    if (simpson) {
      double s = rows[j].front() + rows[j].back();
      for (size_t i = 1; i + 1 < times.size(); ++i)
        s += rows[j][i] * (i % 2 == 1 ? 4.0 : 2.0);
      out[j] = s * dt0 / 3.0;
    } else {
      out[j] = trapezoid(times, rows[j]);
    }
  }
  return out;
}

std::vector<VelocityField> test_velocity_family(const GridSpec& grid) {
  const int n = grid.n;
  const double h = grid.h();
  std::vector<VelocityField> family;

  const std::vector<std::pair<int, int>> modes = {{1, 0}, {0, 1}, {1, 1},
                                                  {1, -1}};
  for (const auto& [kx, ky] : modes) {
    for (int phase = 0; phase < 2; ++phase) {
      std::vector<double> stream(grid.points());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double arg = kx * (i * h) + ky * (j * h);
          stream[i * n + j] = phase == 0 ? std::cos(arg) : std::sin(arg);
        }
      const SpectralField chi = SpectralField::from_values(grid, std::move(stream));
      family.push_back({derivative(chi, Axis::y).scaled(-1.0),
                        derivative(chi, Axis::x)});
    }
  }

  // Radial bump stream function supported in |x| < 1 around the origin of
  // the fundamental domain; covers the counterexample's support.
  std::vector<double> stream(grid.points(), 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = i * h < std::numbers::pi ? i * h : i * h - kTwoPi;
    for (int j = 0; j < n; ++j) {
      const double y = j * h < std::numbers::pi ? j * h : j * h - kTwoPi;
      stream[i * n + j] = bump(std::hypot(x, y));
    }
  }
  const SpectralField chi = SpectralField::from_values(grid, std::move(stream));
  family.push_back({derivative(chi, Axis::y).scaled(-1.0),
                    derivative(chi, Axis::x)});
  return family;
}

BalanceReport theorem_verdict(const SweepResult& sweep) {
  if (sweep.nus.size() < 3)
    throw ConfigError("theorem_verdict: need at least 3 viscosities, got " +
                      std::to_string(sweep.nus.size()));
  for (size_t i = 1; i < sweep.nus.size(); ++i)
    if (sweep.nus[i] >= sweep.nus[i - 1])
      throw ConfigError("theorem_verdict: nus must be strictly decreasing");

  BalanceReport rep;
  rep.nus = sweep.nus;
  rep.forcing_mode = sweep.forcing_mode;
  for (const RunLedger& led : sweep.ledgers) {
    rep.zeta_T.push_back(led.dissipation_cum.back());
    const std::vector<double> r = balance_residual(led);
    rep.balance_residual_final.push_back(std::abs(r.back()));
  }
  for (size_t i = 0; i + 1 < sweep.nus.size(); ++i) {
    const TrajectoryDistance d = convergence_metrics(
        sweep.sample_times, sweep.u_samples[i], sweep.sample_times,
        sweep.u_samples[i + 1]);
    rep.l2l2_gaps.push_back(d.l2t_l2x);
    rep.ctl2_gaps.push_back(d.ct_l2x);
  }

  // Dissipation must drop by >= 1.5x per nu-halving (scaled to the actual
  // nu ratio) or the sweep is flagged anomalous.
  bool decays = true;
  for (size_t i = 0; i + 1 < rep.zeta_T.size(); ++i) {
    const double halvings = std::log2(sweep.nus[i] / sweep.nus[i + 1]);
    const double required = std::pow(1.5, halvings);
    if (!(rep.zeta_T[i] >= required * rep.zeta_T[i + 1])) decays = false;
  }
  rep.flags.anomalous_dissipation = !decays;

  bool cauchy = true;
  for (size_t i = 0; i + 1 < rep.l2l2_gaps.size(); ++i)
    if (!(rep.l2l2_gaps[i + 1] <= 0.7 * rep.l2l2_gaps[i])) cauchy = false;
  rep.flags.strong_convergence = cauchy;

  // Theorem cross-check, meaningful only under strongly convergent forcing:
  // strong convergence should coincide with the finest balance residual
  // decreasing toward zero.
  bool residual_to_zero = true;
  for (size_t i = 0; i + 1 < rep.balance_residual_final.size(); ++i)
    if (!(rep.balance_residual_final[i + 1] <=
          rep.balance_residual_final[i] + 1e-12))
      residual_to_zero = false;
  if (sweep.forcing_mode == "strong-limit")
    rep.flags.equivalence_consistent =
        rep.flags.strong_convergence == residual_to_zero;
  else
    rep.flags.equivalence_consistent = true;
  return rep;
}

namespace {
void append_array(std::string& out, const std::string& key,
                  const std::vector<double>& v) {
  out += "\"" + key + "\": [";
  for (size_t i = 0; i < v.size(); ++i) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v[i]);
    out.append(buf, p);
    if (i + 1 < v.size()) out += ", ";
  }
  out += "]";
}
}  // namespace

std::string balance_report_json(const BalanceReport& rep) {
  std::string out = "{";
  append_array(out, "nus", rep.nus);
  out += ", ";
  append_array(out, "zeta_T", rep.zeta_T);
  out += ", ";
  append_array(out, "l2l2_gaps", rep.l2l2_gaps);
  out += ", ";
  append_array(out, "ctl2_gaps", rep.ctl2_gaps);
  out += ", ";
  append_array(out, "balance_residual_final", rep.balance_residual_final);
  out += ", \"flags\": {\"anomalous_dissipation\": ";
  out += rep.flags.anomalous_dissipation ? "true" : "false";
  out += ", \"strong_convergence\": ";
  out += rep.flags.strong_convergence ? "true" : "false";
  out += ", \"equivalence_consistent\": ";
  out += rep.flags.equivalence_consistent ? "true" : "false";
  out += "}, \"forcing_mode\": \"" + rep.forcing_mode + "\"}";
  return out;
}

}  // namespace vvl
