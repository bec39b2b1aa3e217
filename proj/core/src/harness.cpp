#include "vvl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <thread>

#include "vvl/field_io.hpp"
#include "vvl/quadrature.hpp"
#include "vvl/rearrangement.hpp"
#include "vvl/report.hpp"
#include "vvl/spectral.hpp"
#include "vvl/version.hpp"

namespace vvl::harness {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

SimulationConfig sim_config(const ExperimentConfig& cfg, double nu) {
  SimulationConfig sc;
  sc.grid = cfg.grid();
  sc.nu = nu;
  sc.dt = cfg.dt;
  sc.T = cfg.T;
  sc.initial = cfg.scenario;
  sc.forcing = cfg.forcing;
  sc.snapshot_stride = cfg.snapshot_stride;
  sc.advection = cfg.advection;
  return sc;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void write_manifest(const fs::path& dir, const std::string& command,
                    const ExperimentConfig& cfg, double wall_s) {
  RunManifest m;
  m.command = command;
  m.version = kVersion;
  m.config_echo = cfg.echo();
  m.wall_time_s = wall_s;
  for (auto it = fs::recursive_directory_iterator(dir);
       it != fs::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file()) continue;
    if (it->path().filename() == "manifest.json") continue;
    m.add_file(dir, it->path());
  }
  write_text_file(dir / "manifest.json", m.json());
}

void write_run_files(const fs::path& dir, const ExperimentConfig& cfg,
                     const RunResult& res) {
  fs::create_directories(dir);
  write_text_file(dir / "ledger.csv", ledger_csv(res.ledger));
  if (!cfg.write_snapshots) return;
  // snapshot files are named by step index on the original step grid
  for (size_t i = 0; i < res.trajectory.size(); ++i) {
    const long step = std::lround(res.trajectory[i].t / cfg.dt);
    write_field(dir / ("omega_" + std::to_string(step) + ".vvl"),
                res.trajectory[i].omega);
  }
}

}  // namespace

int thread_budget(size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("VVL_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<size_t>(hw, std::max<size_t>(jobs, 1)));
}

RunResult simulate(const ExperimentConfig& cfg, double nu) {
  return run(sim_config(cfg, nu));
}

SweepOutput run_sweep(const ExperimentConfig& cfg) {
  if (cfg.nus.empty()) throw ConfigError("run_sweep: physics.nu list is empty");
  std::vector<double> nus = cfg.nus;
  std::sort(nus.begin(), nus.end(), std::greater<double>());
  for (size_t i = 1; i < nus.size(); ++i)
    if (nus[i] == nus[i - 1])
      throw ConfigError("run_sweep: duplicate viscosity " + fmt(nus[i]));

  SweepOutput out;
  out.sweep.nus = nus;
  out.runs.resize(nus.size());
  std::vector<std::string> errors(nus.size());

  const int threads = thread_budget(nus.size());
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= nus.size()) return;
      try {
        out.runs[i] = simulate(cfg, nus[i]);
      } catch (const RunFailure& f) {
        out.runs[i].ledger = f.partial().ledger;
        out.runs[i].trajectory = f.partial().trajectory;
        errors[i] = f.what();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (size_t i = 0; i < nus.size(); ++i)
    if (!errors[i].empty()) out.failures.emplace_back(nus[i], errors[i]);

  // Deterministic merge ordered by nu; restrict every trajectory to the
  // common snapshot times.
  std::vector<double> common;
  bool first = true;
  for (size_t i = 0; i < nus.size(); ++i) {
    if (!errors[i].empty()) continue;
    std::vector<double> times;
    for (const auto& s : out.runs[i].trajectory) times.push_back(s.t);
    if (first) {
      common = times;
      first = false;
      continue;
    }
    std::vector<double> merged;
    size_t a = 0, b = 0;
    while (a < common.size() && b < times.size()) {
      if (std::abs(common[a] - times[b]) <= 1e-9) {
        merged.push_back(common[a]);
        ++a;
        ++b;
      } else if (common[a] < times[b]) {
        ++a;
      } else {
        ++b;
      }
    }
    common = std::move(merged);
  }
  out.sweep.sample_times = common;

  for (size_t i = 0; i < nus.size(); ++i) {
    out.sweep.ledgers.push_back(out.runs[i].ledger);
    std::vector<VelocityField> us;
    std::vector<SpectralField> ws;
    if (errors[i].empty()) {
      size_t k = 0;
      for (const auto& s : out.runs[i].trajectory) {
        if (k < common.size() && std::abs(s.t - common[k]) <= 1e-9) {
          us.push_back(s.u);
          ws.push_back(s.omega);
          ++k;
        }
      }
    }
    out.sweep.u_samples.push_back(std::move(us));
    out.sweep.omega_samples.push_back(std::move(ws));
  }
  out.sweep.forcing_mode =
      make_forcing(cfg.grid(), cfg.forcing, nus.front()).mode;

  if (out.failures.empty() && nus.size() >= 3)
    out.report = theorem_verdict(out.sweep);
  return out;
}

SplitConfig make_split_config(const ExperimentConfig& cfg, double nu) {
  SplitConfig sc;
  sc.grid = cfg.grid();
  sc.nu = nu;
  sc.T = cfg.T;
  sc.Dt = cfg.split_dt0 > 0.0 ? cfg.split_dt0 : cfg.T / 8.0;
  sc.inner_dt = cfg.split_inner_dt;
  sc.samples_per_step = cfg.split_samples_per_step;
  sc.beta0 = initial_vorticity(cfg.grid(), cfg.scenario);
  auto u0 = std::make_shared<VelocityField>(biot_savart(sc.beta0));
  sc.U = [u0](double) { return *u0; };
  const Forcing forcing = make_forcing(cfg.grid(), cfg.forcing, nu);
  if (!forcing.is_zero) sc.g = forcing.g;
  return sc;
}

void emit_plots(const fs::path& dir, const BalanceReport& report,
                const std::vector<RunLedger>& ledgers) {
  try {
    std::vector<PlotSeries> energy;
    for (size_t i = 0; i < ledgers.size(); ++i) {
      PlotSeries s;
      s.label = "nu=" + (i < report.nus.size() ? fmt(report.nus[i]) : fmt(ledgers[i].nu));
      s.xs = ledgers[i].times;
      s.ys = ledgers[i].energy;
      energy.push_back(std::move(s));
    }
    write_text_file(dir / "energy_vs_t.svg",
                    svg_line_chart("kinetic energy", "t", "E(t)", energy));

    if (!report.nus.empty()) {
      PlotSeries z{"zeta_nu(T)", report.nus, report.zeta_T};
      write_text_file(dir / "zeta_vs_nu.svg",
                      svg_line_chart("dissipation at T", "nu", "zeta_nu(T)",
                                     {z}, true, true));
    }
    if (report.l2l2_gaps.size() >= 1) {
      std::vector<double> pair_nu(report.l2l2_gaps.size());
      for (size_t i = 0; i < pair_nu.size(); ++i) pair_nu[i] = report.nus[i + 1];
      PlotSeries g1{"L2tL2x gap", pair_nu, report.l2l2_gaps};
      PlotSeries g2{"CtL2x gap", pair_nu, report.ctl2_gaps};
      write_text_file(dir / "gaps_vs_nu.svg",
                      svg_line_chart("pairwise gaps", "nu", "gap", {g1, g2},
                                     true, true));
    }
  } catch (const std::exception& e) {
    std::cerr << "warning: plot emission failed: " << e.what() << "\n";
  }
}

int cmd_simulate(const ExperimentConfig& cfg) {
  Timer timer;
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  int rc = 0;
  try {
    const RunResult res = simulate(cfg, cfg.nus.front());
    write_run_files(dir, cfg, res);
  } catch (const RunFailure& f) {
    std::cerr << "error: " << f.what() << "\n";
    write_run_files(dir, cfg, f.partial());
    rc = 1;
  }
  write_manifest(dir, "simulate", cfg, timer.seconds());
  return rc;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  Timer timer;
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  SweepOutput out = run_sweep(cfg);

  for (size_t i = 0; i < out.sweep.nus.size(); ++i)
    write_run_files(dir / ("nu_" + fmt(out.sweep.nus[i])), cfg, out.runs[i]);

  if (out.failures.empty() && out.sweep.nus.size() >= 3)
    write_text_file(dir / "report.json", balance_report_json(out.report));

  if (out.sweep.forcing_mode == "weak-oscillatory" && out.failures.empty()) {
    // time-integrated pairing table of the forcing against the test family
    const GridSpec grid = cfg.grid();
    const std::vector<VelocityField> family = test_velocity_family(grid);
    std::string csv = "nu,psi,pairing\n";
    for (double nu : out.sweep.nus) {
      const Forcing forcing = make_forcing(grid, cfg.forcing, nu);
      const int samples = 401;
      std::vector<double> times(samples);
      for (int i = 0; i < samples; ++i) times[i] = cfg.T * i / (samples - 1);
      const std::vector<double> pairing =
          weak_pairing_probe(times, forcing.f, family);
      for (size_t j = 0; j < pairing.size(); ++j)
        csv += fmt(nu) + "," + std::to_string(j) + "," + fmt(pairing[j]) + "\n";
    }
    write_text_file(dir / "pairings.csv", csv);
  }

  if (cfg.write_plots) emit_plots(dir, out.report, out.sweep.ledgers);
  write_manifest(dir, "sweep", cfg, timer.seconds());

  for (const auto& [nu, msg] : out.failures)
    std::cerr << "error: run nu=" << nu << " failed: " << msg << "\n";
  return out.failures.empty() ? 0 : 1;
}

int cmd_split(const ExperimentConfig& cfg) {
  Timer timer;
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  int rc = 0;
  try {
    SplitConfig sc = make_split_config(cfg, cfg.nus.front());
    std::vector<double> levels;
    const double dt0 = sc.Dt;
    for (int l = 0; l < std::max(3, cfg.split_levels); ++l)
      levels.push_back(dt0 / std::pow(2.0, l));
    const RateTable table = convergence_study(sc, levels);
    write_text_file(dir / "rates.csv", rate_table_csv(table));
    write_text_file(dir / "rates.json", rate_table_json(table));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 1;
  }
  write_manifest(dir, "split", cfg, timer.seconds());
  return rc;
}

int cmd_diagnose(const ExperimentConfig& cfg) {
  Timer timer;
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  int rc = 0;
  try {
    const double nu = cfg.nus.front();
    const GridSpec grid = cfg.grid();
    const RunResult res = simulate(cfg, nu);
    write_text_file(dir / "ledger.csv", ledger_csv(res.ledger));

    const SpectralField omega0 = res.trajectory.front().omega;
    const RearrangementProfile p0 = profile(omega0);
    std::string norms = "{\"l1\": " + fmt(p0.l1());
    norms += ", \"lorentz\": {\"" + fmt(cfg.diag_lorentz_q) +
             "\": " + fmt(lorentz_norm(p0, cfg.diag_lorentz_q)) + "}";
    norms += ", \"llogl\": {\"" + fmt(cfg.diag_llogl_alpha) +
             "\": " + fmt(llogl_norm(omega0, cfg.diag_llogl_alpha)) + "}";
    norms += ", \"decay\": {\"" + fmt(cfg.diag_delta) +
             "\": " + fmt(decay_functional(p0, cfg.diag_delta)) + "}}";
    write_text_file(dir / "norm_report.json", norms + "\n");

    const Forcing forcing = make_forcing(grid, cfg.forcing, nu);
    std::vector<double> times;
    std::vector<RearrangementProfile> omega_profiles, g_profiles;
    for (const auto& s : res.trajectory) {
      times.push_back(s.t);
      omega_profiles.push_back(profile(s.omega));
      g_profiles.push_back(profile(forcing.g(s.t)));
    }
    const double violation = apriori_violation(
        omega_profiles, g_profiles, times,
        log_spaced_measures(grid, cfg.diag_s_samples));

    double f_l2tl2x = 0.0;
    {
      std::vector<double> fsq(times.size());
      for (size_t i = 0; i < times.size(); ++i) {
        const VelocityField fv = forcing.f(times[i]);
        fsq[i] = inner_product_l2(fv, fv);
      }
      f_l2tl2x = std::sqrt(std::max(0.0, trapezoid(times, fsq)));
    }
    const double slack = gronwall_probe(res.ledger, f_l2tl2x);
    const auto& last = res.trajectory.back();
    const double s2 = structure_function(last.u, cfg.diag_r);
    const InterpolationProbe ip =
        interpolation_probe(last.u, last.omega, cfg.diag_r);

    std::string diag = "{\"apriori_violation\": " + fmt(violation);
    diag += ", \"gronwall_slack\": " + fmt(slack);
    diag += ", \"f_l2t_l2x\": " + fmt(f_l2tl2x);
    diag += ", \"s2\": {\"r\": " + fmt(cfg.diag_r) + ", \"value\": " + fmt(s2) + "}";
    diag += ", \"interpolation\": {\"omega_l2\": " + fmt(ip.omega_l2) +
            ", \"r_grad_omega_l2\": " + fmt(ip.r_grad_omega_l2) +
            ", \"s2_over_r\": " + fmt(ip.s2_over_r) +
            ", \"ratio\": " + fmt(ip.ratio) + "}";
    if (nu > 0.0) {
      const std::vector<double> z = zeta(res.ledger);
      diag += ", \"zeta_T\": " + fmt(z.back());
    }
    diag += "}\n";
    write_text_file(dir / "diagnostics.json", diag);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 1;
  }
  write_manifest(dir, "diagnose", cfg, timer.seconds());
  return rc;
}

int cmd_scenario_dump(const ExperimentConfig& cfg) {
  Timer timer;
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  int rc = 0;
  try {
    const GridSpec grid = cfg.grid();
    const double nu = cfg.nus.front();
    const SpectralField omega0 = initial_vorticity(grid, cfg.scenario);
    write_field(dir / "omega0.vvl", omega0);
    write_field(dir / "u0.vvl", biot_savart(omega0));
    const Forcing forcing = make_forcing(grid, cfg.forcing, nu);
    write_field(dir / "g0.vvl", forcing.g(0.0));
    write_field(dir / "f0.vvl", forcing.f(0.0));

    const RearrangementProfile p0 = profile(omega0);
    std::string norms = "{\"l1\": " + fmt(p0.l1());
    norms += ", \"lorentz\": {\"" + fmt(cfg.diag_lorentz_q) +
             "\": " + fmt(lorentz_norm(p0, cfg.diag_lorentz_q)) + "}";
    norms += ", \"llogl\": {\"" + fmt(cfg.diag_llogl_alpha) +
             "\": " + fmt(llogl_norm(omega0, cfg.diag_llogl_alpha)) + "}";
    norms += ", \"decay\": {\"" + fmt(cfg.diag_delta) +
             "\": " + fmt(decay_functional(p0, cfg.diag_delta)) + "}}";
    write_text_file(dir / "norm_report.json", norms + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 1;
  }
  write_manifest(dir, "scenario-dump", cfg, timer.seconds());
  return rc;
}

int dispatch(const std::string& command, const ExperimentConfig& cfg) {
  if (command == "simulate") return cmd_simulate(cfg);
  if (command == "sweep") return cmd_sweep(cfg);
  if (command == "split") return cmd_split(cfg);
  if (command == "diagnose") return cmd_diagnose(cfg);
  if (command == "scenario-dump") return cmd_scenario_dump(cfg);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace vvl::harness
