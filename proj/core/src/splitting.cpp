#include "vvl/splitting.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "vvl/errors.hpp"
#include "vvl/quadrature.hpp"
#include "vvl/spectral.hpp"

namespace vvl {

namespace {

using Cv = std::vector<std::complex<double>>;

Cv apply_heat(const GridSpec& g, double nu_t, const Cv& c) {
  const int n = g.n;
  Cv out(c.size());
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      out[i * n + j] = c[i * n + j] * std::exp(-nu_t * (kx * kx + ky * ky));
    }
  }
  return out;
}

}  // namespace

SpectralField heat_step(const SpectralField& beta0, double t0, double t,
                        const ScalarProvider& g, double nu) {
  if (t < t0)
    throw StepSizeError("heat_step: t must not precede t0", 0.0);
  const GridSpec& grid = beta0.grid();
  Cv acc = apply_heat(grid, nu * (t - t0), beta0.coeffs());
  if (g && t > t0) {
    for (int i = 0; i < 4; ++i) {
      const double tau = GaussLegendre4::node(i, t0, t);
      const double w = GaussLegendre4::weight(i, t0, t);
      const Cv gk = apply_heat(grid, nu * (t - tau), g(tau).coeffs());
      for (size_t m = 0; m < acc.size(); ++m) acc[m] += w * gk[m];
    }
  }
  return SpectralField::from_coeffs_trusted(grid, std::move(acc));
}

SpectralField transport_step(const SpectralField& beta0, double t0, double t,
                             const VelocityProvider& U, double inner_dt,
                             double cfl_limit) {
  if (t < t0)
    throw StepSizeError("transport_step: t must not precede t0", 0.0);
  if (t == t0) return beta0;
  const GridSpec& grid = beta0.grid();
  if (inner_dt <= 0.0)
    throw StepSizeError("transport_step: inner_dt must be positive", 0.0);

  const int substeps =
      std::max(1, static_cast<int>(std::ceil((t - t0) / inner_dt - 1e-12)));
  const double dt = (t - t0) / substeps;

  Cv w = beta0.coeffs();
  double tau = t0;
  for (int s = 0; s < substeps; ++s) {
    const VelocityField u0 = U(tau);
    const double speed = u0.max_speed();
    if (dt * speed / grid.h() > cfl_limit)
      throw StepSizeError(
          "transport_step: CFL violated; inner_dt <= " +
              std::to_string(cfl_limit * grid.h() / speed) + " complies",
          cfl_limit * grid.h() / speed);
    const auto rhs = [&](const Cv& c, double tt) {
      SpectralField b = SpectralField::from_coeffs_trusted(grid, c);
      return advection_term(U(tt), b).scaled(-1.0).coeffs();
    };
    const Cv k1 = rhs(w, tau);
    Cv tmp(w.size());
    for (size_t m = 0; m < w.size(); ++m) tmp[m] = w[m] + 0.5 * dt * k1[m];
    const Cv k2 = rhs(tmp, tau + 0.5 * dt);
    for (size_t m = 0; m < w.size(); ++m) tmp[m] = w[m] + 0.5 * dt * k2[m];
    const Cv k3 = rhs(tmp, tau + 0.5 * dt);
    for (size_t m = 0; m < w.size(); ++m) tmp[m] = w[m] + dt * k3[m];
    const Cv k4 = rhs(tmp, tau + dt);
    for (size_t m = 0; m < w.size(); ++m)
      w[m] += dt / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
    tau += dt;
  }
  return SpectralField::from_coeffs_trusted(grid, std::move(w));
}

std::vector<SplitSample> split_run(const SplitConfig& config) {
  if (config.nu <= 0.0) throw DomainError("split_run: nu must be positive");
  if (config.Dt <= 0.0 || config.T <= 0.0)
    throw DomainError("split_run: Dt and T must be positive");
  const double inner =
      config.inner_dt > 0.0 ? config.inner_dt : config.Dt / 20.0;
  const int steps =
      std::max(1, static_cast<int>(std::llround(config.T / config.Dt)));
  if (std::abs(steps * config.Dt - config.T) > 1e-9 * config.T)
    throw DomainError("split_run: T must be an integer multiple of Dt");
  const int samples = std::max(1, config.samples_per_step);

  std::vector<SplitSample> out;
  out.push_back({0.0, config.beta0});
  SpectralField state = config.beta0;  // beta^Delta_n(t_n)
  for (int nstep = 0; nstep < steps; ++nstep) {
    const double tn = nstep * config.Dt;
    SpectralField transported = state;  // E(tau; t_n) state, advanced in tau
    double tau = tn;
    for (int s = 1; s <= samples; ++s) {
      const double ts = tn + config.Dt * s / samples;
      transported = transport_step(transported, tau, ts, config.U, inner);
      tau = ts;
      SpectralField heated = heat_step(transported, tn, ts, config.g, config.nu);
      out.push_back({ts, heated});
      if (s == samples) state = std::move(heated);
    }
  }
  return out;
}

std::vector<SplitSample> advdiff_reference(
    const SplitConfig& config, double dt,
    const std::vector<double>& sample_times) {
  const GridSpec& grid = config.grid;
  const int steps =
      std::max(1, static_cast<int>(std::llround(config.T / dt)));
  const double dt_eff = config.T / steps;

  const auto rhs = [&](const Cv& c, double tt) {
    SpectralField b = SpectralField::from_coeffs_trusted(grid, c);
    Cv out = advection_term(config.U(tt), b).scaled(-1.0).coeffs();
    if (config.g) {
      const Cv gk = config.g(tt).coeffs();
      for (size_t m = 0; m < out.size(); ++m) out[m] += gk[m];
    }
    return out;
  };

  std::vector<SplitSample> out;
  size_t next_sample = 0;
  const auto maybe_emit = [&](double t, const Cv& w) {
    while (next_sample < sample_times.size() &&
           sample_times[next_sample] <= t + 1e-9 * std::max(1.0, config.T)) {
      out.push_back({sample_times[next_sample],
                     SpectralField::from_coeffs_trusted(grid, w)});
      ++next_sample;
    }
  };

  Cv w = config.beta0.coeffs();
  maybe_emit(0.0, w);
  const double half = 0.5 * dt_eff;
  for (int s = 0; s < steps; ++s) {
    const double t = s * dt_eff;
    const Cv a = rhs(w, t);
    Cv tmp(w.size());
    const Cv e2w = apply_heat(grid, config.nu * half, w);
    for (size_t m = 0; m < w.size(); ++m) tmp[m] = w[m] + half * a[m];
    const Cv b = rhs(apply_heat(grid, config.nu * half, tmp), t + half);
    for (size_t m = 0; m < w.size(); ++m) tmp[m] = e2w[m] + half * b[m];
    const Cv c = rhs(tmp, t + half);
    const Cv e1w = apply_heat(grid, config.nu * half, e2w);
    const Cv e2c = apply_heat(grid, config.nu * half, c);
    for (size_t m = 0; m < w.size(); ++m) tmp[m] = e1w[m] + dt_eff * e2c[m];
    const Cv d = rhs(tmp, t + dt_eff);
    const Cv e1a = apply_heat(grid, config.nu * dt_eff, a);
    Cv bc(w.size());
    for (size_t m = 0; m < w.size(); ++m) bc[m] = b[m] + c[m];
    const Cv e2bc = apply_heat(grid, config.nu * half, bc);
    for (size_t m = 0; m < w.size(); ++m)
      w[m] = e1w[m] + dt_eff / 6.0 * (e1a[m] + 2.0 * e2bc[m] + d[m]);
    maybe_emit(t + dt_eff, w);
  }
  return out;
}

RateTable convergence_study(const SplitConfig& config,
                            const std::vector<double>& Dt_list) {
  if (Dt_list.size() < 3)
    throw DomainError("convergence_study: need >= 3 outer steps");
  for (size_t i = 2; i < Dt_list.size(); ++i) {
    const double r0 = Dt_list[i - 1] / Dt_list[i - 2];
    const double r1 = Dt_list[i] / Dt_list[i - 1];
    if (std::abs(r1 - r0) > 1e-9)
      throw DomainError("convergence_study: Dt_list must be geometric");
  }
  double dt_min = Dt_list[0];
  for (double d : Dt_list) dt_min = std::min(dt_min, d);

  // One reference pass sampled at every breakpoint of the finest level; all
  // coarser breakpoints are a subset because the list is geometric.
  std::vector<double> ref_times;
  const int fine_steps = static_cast<int>(std::llround(config.T / dt_min));
  ref_times.reserve(fine_steps + 1);
  for (int i = 0; i <= fine_steps; ++i)
    ref_times.push_back(config.T * i / fine_steps);
  const std::vector<SplitSample> ref =
      advdiff_reference(config, dt_min / 100.0, ref_times);

  const auto ref_at = [&](double t) -> const SpectralField& {
    const auto idx = static_cast<size_t>(
        std::llround(t / config.T * fine_steps));
    return ref[idx].beta;
  };

  RateTable table;
  for (double Dt : Dt_list) {
    SplitConfig level = config;
    level.Dt = Dt;
    level.samples_per_step = 1;
    const std::vector<SplitSample> traj = split_run(level);
    double err = 0.0;
    for (const SplitSample& s : traj)
      err = std::max(err, l2_norm(s.beta.axpy(-1.0, ref_at(s.t))));
    table.rows.push_back({Dt, err, std::numeric_limits<double>::quiet_NaN()});
  }

  double floor_all = 0.0;
  for (const auto& r : table.rows) floor_all = std::max(floor_all, r.error);
  if (floor_all < 1e-9) {
    table.regime = "exact";
    table.order_global = std::numeric_limits<double>::quiet_NaN();
    return table;
  }

  bool monotone = true;
  for (size_t i = 1; i < table.rows.size(); ++i) {
    // Dt_list is expected coarse-to-fine or fine-to-coarse; normalize on Dt.
    const bool coarser =
        table.rows[i - 1].Dt > table.rows[i].Dt;
    const double e_coarse =
        coarser ? table.rows[i - 1].error : table.rows[i].error;
    const double e_fine =
        coarser ? table.rows[i].error : table.rows[i - 1].error;
    if (e_fine > e_coarse) monotone = false;
    table.rows[i].order_local =
        std::log(table.rows[i - 1].error / table.rows[i].error) /
        std::log(table.rows[i - 1].Dt / table.rows[i].Dt);
  }

  // Least-squares slope of log(err) against log(Dt).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(table.rows.size());
  for (const auto& r : table.rows) {
    const double x = std::log(r.Dt), y = std::log(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  table.order_global = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  table.regime = monotone ? "rate" : "rate-failure";
  return table;
}

DefectSeries defect_norm(const std::vector<SplitSample>& traj,
                         const VelocityProvider& U, const ScalarProvider& g,
                         double nu, double Dt) {
  if (traj.size() < 3)
    throw InsufficientDataError(
        "defect_norm: need at least 3 samples for centered differences");
  DefectSeries out;
  const auto interval_of = [&](double t) {
    return static_cast<long>(std::floor(t / Dt + 1e-9));
  };
  for (size_t i = 1; i + 1 < traj.size(); ++i) {
    const double tl = traj[i - 1].t, tc = traj[i].t, tr = traj[i + 1].t;
    if (interval_of(tl) != interval_of(tr - 2e-9 * Dt)) continue;
    const double spacing = 0.5 * (tr - tl);
    SpectralField dtb =
        traj[i + 1].beta.axpy(-1.0, traj[i - 1].beta).scaled(1.0 /
                                                             (2.0 * spacing));
    SpectralField r = dtb.axpy(1.0, advection_term(U(tc), traj[i].beta));
    r = r.axpy(-nu, laplacian(traj[i].beta));
    if (g) r = r.axpy(-1.0, g(tc));
    const double d = l2_norm(r);
    out.times.push_back(tc);
    out.defect.push_back(d);
    out.max_defect = std::max(out.max_defect, d);
  }
  if (out.times.empty())
    throw InsufficientDataError(
        "defect_norm: no interior triplets clear of the break-points");
  return out;
}

namespace {
std::string fmt(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}
}  // namespace

std::string rate_table_csv(const RateTable& table) {
  std::string out = "dt,error,order_local\n";
  for (const auto& r : table.rows) {
    out += fmt(r.Dt) + ',' + fmt(r.error) + ',';
    out += std::isnan(r.order_local) ? "" : fmt(r.order_local);
    out += '\n';
  }
  return out;
}

std::string rate_table_json(const RateTable& table) {
  std::string out = "{\"order_global\": ";
  out += std::isnan(table.order_global) ? "null" : fmt(table.order_global);
  out += ", \"regime\": \"" + table.regime + "\"}";
  return out;
}

}  // namespace vvl
