#include "vvl/ns_solver.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "vvl/quadrature.hpp"
#include "vvl/spectral.hpp"

namespace vvl {

double RunLedger::max_identity_residual() const {
  double m = 0.0;
  for (double r : identity_residual) m = std::max(m, std::abs(r));
  return m;
}

SpectralField nonlinear_term(const SpectralField& omega) {
  return advection_term(biot_savart(omega), omega).scaled(-1.0);
}

namespace {

using Cv = std::vector<std::complex<double>>;

// e^{-nu |k|^2 dt} applied per mode.
Cv heat_factor_apply(const GridSpec& g, double nu_dt, const Cv& c) {
  const int n = g.n;
  Cv out(c.size());
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      out[i * n + j] = c[i * n + j] * std::exp(-nu_dt * (kx * kx + ky * ky));
    }
  }
  return out;
}

Cv axpy(const Cv& a, double c, const Cv& b) {
  Cv out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
  return out;
}

// Full right-hand side in spectral space (advection + forcing, no viscosity).
struct Rhs {
  const Forcing& forcing;
  double nu;
  bool advection;
  const GridSpec& grid;

  Cv operator()(const Cv& wc, double t) const {
    SpectralField w = SpectralField::from_coeffs_trusted(grid, wc);
    Cv out(wc.size(), {0.0, 0.0});
    if (advection) out = nonlinear_term(w).coeffs();
    if (!forcing.is_zero) {
      const Cv gc = forcing.g(t).coeffs();
      for (size_t i = 0; i < out.size(); ++i) out[i] += gc[i];
    }
    return out;
  }
};

// One integrating-factor RK4 step on dw/dt = L w + N(w, t), L = -nu |k|^2:
//   A = N(w_n, t)
//   B = N(E2 (w_n + dt/2 A), t + dt/2)
//   C = N(E2 w_n + dt/2 B,   t + dt/2)
//   D = N(E1 w_n + dt E2 C,  t + dt)
//   w_{n+1} = E1 w_n + dt/6 (E1 A + 2 E2 B + 2 E2 C + D),
// with E1 = e^{L dt}, E2 = e^{L dt/2} applied exactly per mode.
Cv ifrk4_step(const GridSpec& grid, double nu, double dt, double t,
              const Cv& w, const Rhs& rhs) {
  const double half = 0.5 * dt;
  const Cv a = rhs(w, t);
  const Cv b =
      rhs(heat_factor_apply(grid, nu * half, axpy(w, half, a)), t + half);
  const Cv e2w = heat_factor_apply(grid, nu * half, w);
  const Cv c = rhs(axpy(e2w, half, b), t + half);
  const Cv e1w = heat_factor_apply(grid, nu * half, e2w);
  const Cv d = rhs(axpy(e1w, dt, heat_factor_apply(grid, nu * half, c)),
                   t + dt);
  Cv e1a = heat_factor_apply(grid, nu * dt, a);
  Cv e2bc = heat_factor_apply(grid, nu * half, axpy(b, 1.0, c));
  Cv out(w.size());
  for (size_t i = 0; i < w.size(); ++i)
    out[i] = e1w[i] + dt / 6.0 * (e1a[i] + 2.0 * e2bc[i] + d[i]);
  return out;
}

}  // namespace

TrajectorySample step(const TrajectorySample& state, double dt,
                      const Forcing& forcing, double nu, bool advection,
                      double cfl_limit) {
  const GridSpec& grid = state.omega.grid();
  if (dt < 0.0) throw StepSizeError("step: dt must be non-negative", 0.0);
  if (dt == 0.0) return state;
  if (advection) {
    const double speed = state.u.max_speed();
    if (dt * speed / grid.h() > cfl_limit) {
      const double suggested = cfl_limit * grid.h() / speed;
      throw StepSizeError(
          "step: advective CFL violated (dt max|u|/h = " +
              std::to_string(dt * speed / grid.h()) + " > " +
              std::to_string(cfl_limit) + "); dt <= " +
              std::to_string(suggested) + " complies",
          suggested);
    }
  }
  Rhs rhs{forcing, nu, advection, grid};
  Cv next = ifrk4_step(grid, nu, dt, state.t, state.omega.coeffs(), rhs);
  TrajectorySample out;
  out.t = state.t + dt;
  out.omega = SpectralField::from_coeffs_trusted(grid, std::move(next));
  out.u = biot_savart(out.omega);
  return out;
}

RunResult run(const SimulationConfig& config) {
  if (config.dt <= 0.0 || config.T <= 0.0 || config.dt > config.T)
    throw ConfigError("run: need 0 < dt <= T");
  const GridSpec& grid = config.grid;
  const Forcing forcing = make_forcing(grid, config.forcing, config.nu);

  TrajectorySample state;
  state.t = 0.0;
  state.omega = initial_vorticity(grid, config.initial);
  state.u = biot_savart(state.omega);

  RunResult res;
  res.ledger.nu = config.nu;
  res.trajectory.push_back(state);

  const auto record = [&](const TrajectorySample& s) {
    RunLedger& led = res.ledger;
    const double en = 0.5 * inner_product_l2(s.u, s.u);
    const double ens = inner_product_l2(s.omega, s.omega);
    double work_rate = 0.0;
    if (!forcing.is_zero) work_rate = inner_product_l2(forcing.f(s.t), s.u);
    if (led.times.empty()) {
      led.times.push_back(s.t);
      led.energy.push_back(en);
      led.enstrophy.push_back(ens);
      led.dissipation_cum.push_back(0.0);
      led.work_cum.push_back(0.0);
      led.identity_residual.push_back(0.0);
      return work_rate;
    }
    const double dt = s.t - led.times.back();
    led.dissipation_cum.push_back(
        led.dissipation_cum.back() +
        0.5 * dt * config.nu * (led.enstrophy.back() + ens));
    led.times.push_back(s.t);
    led.energy.push_back(en);
    led.enstrophy.push_back(ens);
    return work_rate;
  };

  std::vector<double> work_rate{record(state)};

  double dt = config.dt;
  int halvings = 0;
  int step_index = 0;
  const double t_end = config.T;
  while (state.t < t_end - 1e-12 * t_end) {
    const double dt_step = std::min(dt, t_end - state.t);
    TrajectorySample next;
    for (;;) {
      try {
        next = step(state, std::min(dt, t_end - state.t), forcing, config.nu,
                    config.advection, config.cfl_limit);
        break;
      } catch (const StepSizeError&) {
        if (halvings >= config.max_dt_halvings) {
          // finalize what we have
          res.ledger.work_cum =
              cumulative_trapezoid(res.ledger.times, work_rate);
          res.ledger.identity_residual.assign(res.ledger.times.size(), 0.0);
          throw RunFailure(
              "run: CFL still violated after " +
                  std::to_string(config.max_dt_halvings) +
                  " dt halvings at t = " + std::to_string(state.t),
              std::move(res));
        }
        dt *= 0.5;
        ++halvings;
      }
    }
    (void)dt_step;
    state = std::move(next);
    ++step_index;
    work_rate.push_back(record(state));
    if (step_index % config.snapshot_stride == 0 ||
        state.t >= t_end - 1e-12 * t_end)
      res.trajectory.push_back(state);
  }

  RunLedger& led = res.ledger;
  led.work_cum = cumulative_trapezoid(led.times, work_rate);
  led.identity_residual.resize(led.times.size());
  for (size_t i = 0; i < led.times.size(); ++i)
    led.identity_residual[i] = led.energy[i] - led.energy[0] +
                               led.dissipation_cum[i] - led.work_cum[i];
  return res;
}

std::vector<double> pde_residual(const std::vector<TrajectorySample>& traj,
                                 const Forcing& forcing, double nu) {
  if (traj.size() < 3)
    throw InsufficientDataError(
        "pde_residual: need at least 3 snapshots for centered differences");
  const double spacing = traj[1].t - traj[0].t;
  for (size_t i = 1; i < traj.size(); ++i) {
    const double d = traj[i].t - traj[i - 1].t;
    if (std::abs(d - spacing) > 1e-9 * std::max(1.0, std::abs(spacing)))
      throw InsufficientDataError("pde_residual: snapshots must be uniform");
  }
  std::vector<double> out;
  out.reserve(traj.size() - 2);
  for (size_t i = 1; i + 1 < traj.size(); ++i) {
    SpectralField dtw =
        traj[i + 1].omega.axpy(-1.0, traj[i - 1].omega).scaled(1.0 /
                                                               (2.0 * spacing));
    SpectralField r = dtw.axpy(1.0, advection_term(traj[i].u, traj[i].omega));
    r = r.axpy(-nu, laplacian(traj[i].omega));
    if (!forcing.is_zero) r = r.axpy(-1.0, forcing.g(traj[i].t));
    out.push_back(l2_norm(r));
  }
  return out;
}

namespace {
std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}
}  // namespace

std::string ledger_csv(const RunLedger& led) {
  std::string out =
      "t,energy,enstrophy,dissipation_cum,work_cum,identity_residual\n";
  for (size_t i = 0; i < led.times.size(); ++i) {
    out += format_double(led.times[i]) + ',' + format_double(led.energy[i]) +
           ',' + format_double(led.enstrophy[i]) + ',' +
           format_double(led.dissipation_cum[i]) + ',' +
           format_double(led.work_cum[i]) + ',' +
           format_double(led.identity_residual[i]) + '\n';
  }
  return out;
}

RunLedger ledger_from_csv(const std::string& text, double nu) {
  RunLedger led;
  led.nu = nu;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 6> v{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int col = 0; col < 6; ++col) {
      auto [next, ec] = std::from_chars(p, end, v[col]);
      if (ec != std::errc()) throw Error("ledger_from_csv: bad row: " + line);
      p = next;
      if (col < 5 && p < end && *p == ',') ++p;
    }
    led.times.push_back(v[0]);
    led.energy.push_back(v[1]);
    led.enstrophy.push_back(v[2]);
    led.dissipation_cum.push_back(v[3]);
    led.work_cum.push_back(v[4]);
    led.identity_residual.push_back(v[5]);
  }
  return led;
}

}  // namespace vvl
