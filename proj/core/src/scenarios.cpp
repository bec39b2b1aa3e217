#include "vvl/scenarios.hpp"

#include <cmath>
#include <random>

#include "vvl/errors.hpp"
#include "vvl/spectral.hpp"

namespace vvl {

TaylorGreen taylor_green(const GridSpec& grid, double nu, double t) {
  const int n = grid.n;
  const double h = grid.h();
  const double decay = std::exp(-2.0 * nu * t);
  std::vector<double> ux(grid.points()), uy(grid.points()), w(grid.points());
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    for (int j = 0; j < n; ++j) {
      const double y = j * h;
      ux[i * n + j] = decay * std::sin(x) * std::cos(y);
      uy[i * n + j] = -decay * std::cos(x) * std::sin(y);
      w[i * n + j] = 2.0 * decay * std::sin(x) * std::sin(y);
    }
  }
  TaylorGreen tg;
  tg.u = {SpectralField::from_values(grid, std::move(ux)),
          SpectralField::from_values(grid, std::move(uy))};
  tg.omega = SpectralField::from_values(grid, std::move(w));
  const double pi2 = std::numbers::pi * std::numbers::pi;
  tg.energy = pi2 * decay * decay;
  tg.enstrophy = 4.0 * pi2 * decay * decay;
  return tg;
}

// b(z) = exp(1 - 1/(1-z^2)) on |z| < 1. With a(z) = 1/(1-z^2):
//   b'   = -a' b,   b'' = (a'^2 - a'') b,   b''' = (3 a' a'' - a'^3 - a''') b,
//   a'   = 2 z a^2, a'' = 2 a^2 + 8 z^2 a^3, a''' = 24 z a^3 + 48 z^3 a^4.
namespace {
struct BumpTerms {
  double b, a1, a2, a3;
};
BumpTerms bump_terms(double z) {
  const double a = 1.0 / (1.0 - z * z);
  BumpTerms t;
  t.b = std::exp(1.0 - a);
  t.a1 = 2.0 * z * a * a;
  t.a2 = 2.0 * a * a + 8.0 * z * z * a * a * a;
  t.a3 = 24.0 * z * a * a * a + 48.0 * z * z * z * a * a * a * a;
  return t;
}
bool outside(double z) { return std::abs(z) >= 1.0; }
}  // namespace

double bump(double z) { return outside(z) ? 0.0 : bump_terms(z).b; }
double bump_d1(double z) {
  if (outside(z)) return 0.0;
  const auto t = bump_terms(z);
  return -t.a1 * t.b;
}
double bump_d2(double z) {
  if (outside(z)) return 0.0;
  const auto t = bump_terms(z);
  return (t.a1 * t.a1 - t.a2) * t.b;
}
double bump_d3(double z) {
  if (outside(z)) return 0.0;
  const auto t = bump_terms(z);
  return (3.0 * t.a1 * t.a2 - t.a1 * t.a1 * t.a1 - t.a3) * t.b;
}

double cutoff(double r) { return bump(4.0 * (r - 0.75)); }
double cutoff_d1(double r) { return 4.0 * bump_d1(4.0 * (r - 0.75)); }

int CounterexampleScenario::required_n(double nu) {
  const double needed = 16.0 * std::pow(nu, -1.0 / 3.0);
  int n = static_cast<int>(std::ceil(needed));
  if (n % 2 != 0) ++n;
  return n;
}

CounterexampleScenario::CounterexampleScenario(const GridSpec& grid, double nu)
    : grid_(grid), nu_(nu) {
  if (nu <= 0.0)
    throw DomainError("CounterexampleScenario: nu must be positive");
  const int need = required_n(nu);
  if (grid.n < need)
    throw ResolutionError(
        "CounterexampleScenario: oscillation wavelength 2 pi nu^{1/3} needs n >= " +
            std::to_string(need) + ", got n = " + std::to_string(grid.n),
        need);

  const int n = grid.n;
  const double h = grid.h();
  const double eps = std::pow(nu, 1.0 / 3.0);
  std::vector<double> ux(grid.points(), 0.0), uy(grid.points(), 0.0);
  for (int i = 0; i < n; ++i) {
    // fundamental domain [-pi, pi): the support |x| <= 1 < pi stays interior,
    // so the periodic extension is smooth and never samples the 1/|x| core.
    const double x = i * h < std::numbers::pi ? i * h : i * h - kTwoPi;
    for (int j = 0; j < n; ++j) {
      const double y = j * h < std::numbers::pi ? j * h : j * h - kTwoPi;
      const double r = std::hypot(x, y);
      if (r <= 0.5 || r >= 1.0) continue;
      const double amp = std::sin(r / eps) * cutoff(r) / (r * r);
      ux[i * n + j] = -y * amp;
      uy[i * n + j] = x * amp;
    }
  }
  u_profile_ = leray_project({SpectralField::from_values(grid, std::move(ux)),
                              SpectralField::from_values(grid, std::move(uy))});
  lap_u_profile_ = {laplacian(u_profile_.x), laplacian(u_profile_.y)};
  w_profile_ = curl(u_profile_);
  lap_w_profile_ = laplacian(w_profile_);
}

VelocityField CounterexampleScenario::u(double t) const {
  return u_profile_.scaled(cutoff(t));
}

VelocityField CounterexampleScenario::f(double t) const {
  return u_profile_.scaled(cutoff_d1(t))
      .axpy(-nu_ * cutoff(t), lap_u_profile_);
}

SpectralField CounterexampleScenario::omega(double t) const {
  return w_profile_.scaled(cutoff(t));
}

SpectralField CounterexampleScenario::g(double t) const {
  return w_profile_.scaled(cutoff_d1(t))
      .axpy(-nu_ * cutoff(t), lap_w_profile_);
}

std::pair<VelocityField, VelocityField> counterexample_family(
    const GridSpec& grid, double nu, double t) {
  CounterexampleScenario s(grid, nu);
  return {s.u(t), s.f(t)};
}

std::pair<double, double> family_measure_range(const GridSpec& grid) {
  const double r_max = 3.0;
  return {grid.cell_measure(), std::numbers::pi * r_max * r_max};
}

double family_envelope(FamilyKind kind, double shape_param, double amplitude,
                       double s) {
  switch (kind) {
    case FamilyKind::lp: {
      const double p = shape_param;
      const double inv_p_prime = 1.0 - 1.0 / p;
      return amplitude * std::pow(s, -inv_p_prime);
    }
    case FamilyKind::lorentz: {
      const double q = shape_param;
      const double r_max = 3.0;
      const double S = std::numbers::pi * r_max * r_max;
      const double b = 1.0 + 2.0 / q;
      return amplitude * std::pow(std::log(std::numbers::e * S / s), -b) / s;
    }
    case FamilyKind::llogl: {
      const double alpha = shape_param;
      const double r_max = 3.0;
      const double S = std::numbers::pi * r_max * r_max;
      return amplitude *
             std::pow(std::log(std::numbers::e * S / s), -(alpha + 2.0)) / s;
    }
  }
  return 0.0;
}

SpectralField vorticity_family(const GridSpec& grid, FamilyKind kind,
                               double shape_param, double amplitude,
                               uint64_t seed) {
  switch (kind) {
    case FamilyKind::lp:
      if (shape_param <= 1.0)
        throw DomainError("vorticity_family: lp requires p > 1");
      break;
    case FamilyKind::lorentz:
      if (shape_param < 1.0 || shape_param > 2.0)
        throw DomainError("vorticity_family: lorentz requires q in [1, 2]");
      break;
    case FamilyKind::llogl:
      if (shape_param <= 0.5)
        throw DomainError("vorticity_family: llogl requires alpha > 1/2");
      break;
  }
  if (amplitude == 0.0) return SpectralField::zero(grid);

  const auto [s_min, s_max] = family_measure_range(grid);
  const int layers =
      std::max(2, static_cast<int>(std::ceil(std::log2(s_max / s_min))));

  // Alternating dyadic annuli; the seed flips pairs jointly so each pair
  // stays opposite-signed.
  std::vector<int> sign(layers);
  std::mt19937_64 rng(seed);
  for (int l = 0; l < layers; l += 2) {
    const int flip = (rng() & 1u) ? -1 : 1;
    sign[l] = flip;
    if (l + 1 < layers) sign[l + 1] = -flip;
  }

  const int n = grid.n;
  const double h = grid.h();
  const double cx = std::numbers::pi, cy = std::numbers::pi;
  std::vector<double> v(grid.points(), 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = i * h - cx;
    for (int j = 0; j < n; ++j) {
      const double y = j * h - cy;
      const double s = std::numbers::pi * (x * x + y * y);
      if (s > s_max) continue;
      const double sc = std::max(s, s_min);
      int layer = static_cast<int>(std::floor(std::log2(s_max / sc)));
      layer = std::clamp(layer, 0, layers - 1);
      v[i * n + j] =
          sign[layer] * family_envelope(kind, shape_param, amplitude, sc);
    }
  }

  // Exact zero mean: rescale the negative layers to cancel the positive mass.
  double pos = 0.0, neg = 0.0;
  for (double x : v) (x > 0.0 ? pos : neg) += x;
  neg = -neg;
  if (pos == 0.0 || neg == 0.0)
    throw DomainError("vorticity_family: degenerate sign pattern");
  const double c = pos / neg;
  for (double& x : v)
    if (x < 0.0) x *= c;

  SpectralField f = SpectralField::from_values(grid, std::move(v));
  // Remove the round-off mean left after rebalancing.
  const double m = f.mean();
  std::vector<double> v2 = f.values();
  for (double& x : v2) x -= m;
  return SpectralField::from_values(grid, std::move(v2));
}

SpectralField random_smooth_field(const GridSpec& grid, uint64_t seed,
                                  double slope, int k_max, double amplitude) {
  if (k_max < 1 || 3 * k_max > grid.n)
    throw DomainError(
        "random_smooth_field: k_max must satisfy 1 <= k_max <= n/3 "
        "(dealias band), got k_max = " +
        std::to_string(k_max) + " for n = " + std::to_string(grid.n));
  const int n = grid.n;
  std::vector<std::complex<double>> c(grid.points(), {0.0, 0.0});
  std::mt19937_64 rng(seed);
  const auto unit_phase = [&rng]() {
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return std::polar(1.0, kTwoPi * u);
  };
  // Fill one half-plane, mirror the conjugate; k_max <= n/3 keeps Nyquist
  // modes out entirely.
  for (int kx = -k_max; kx <= k_max; ++kx) {
    for (int ky = -k_max; ky <= k_max; ++ky) {
      const bool upper = ky > 0 || (ky == 0 && kx > 0);
      if (!upper) continue;
      const double kk = std::hypot(kx, ky);
      const std::complex<double> a =
          amplitude * std::pow(kk, -slope) * unit_phase();
      c[grid.index_of(kx) * n + grid.index_of(ky)] = a;
      c[grid.index_of(-kx) * n + grid.index_of(-ky)] = std::conj(a);
    }
  }
  return SpectralField::from_coeffs_trusted(grid, std::move(c));
}

namespace {

FamilyKind family_kind_of(const std::string& kind) {
  if (kind == "lp_family") return FamilyKind::lp;
  if (kind == "lorentz_family") return FamilyKind::lorentz;
  return FamilyKind::llogl;
}

double family_shape_param(const ScenarioRef& ref) {
  if (ref.kind == "lp_family") return ref.param("p", 2.0);
  if (ref.kind == "lorentz_family") return ref.param("q", 1.5);
  return ref.param("alpha", 1.0);
}

}  // namespace

SpectralField initial_vorticity(const GridSpec& grid, const ScenarioRef& ref) {
  const double amplitude = ref.param("amplitude", 1.0);
  if (ref.kind == "zero") return SpectralField::zero(grid);
  if (ref.kind == "taylor_green")
    return taylor_green(grid, 0.0, 0.0).omega.scaled(amplitude);
  if (ref.kind == "counterexample")
    return SpectralField::zero(grid);  // gamma(0) = 0
  if (ref.kind == "random_smooth") {
    const int k_max = static_cast<int>(ref.param("k_max", grid.n / 4.0));
    return random_smooth_field(grid, static_cast<uint64_t>(ref.param("seed", 1)),
                               ref.param("slope", 2.0), k_max, amplitude);
  }
  if (ref.kind == "lp_family" || ref.kind == "lorentz_family" ||
      ref.kind == "llogl_family")
    return vorticity_family(grid, family_kind_of(ref.kind),
                            family_shape_param(ref), amplitude,
                            static_cast<uint64_t>(ref.param("seed", 1)));
  throw ConfigError("unknown scenario kind '" + ref.kind + "'");
}

Forcing make_forcing(const GridSpec& grid, const ScenarioRef& ref, double nu) {
  Forcing out;
  if (ref.kind == "zero" || ref.kind == "taylor_green") {
    out.is_zero = true;
    out.mode = "strong-limit";
    out.g = [grid](double) { return SpectralField::zero(grid); };
    out.f = [grid](double) {
      return VelocityField{SpectralField::zero(grid), SpectralField::zero(grid)};
    };
    return out;
  }
  if (ref.kind == "random_smooth") {
    const int k_max = static_cast<int>(ref.param("k_max", grid.n / 4.0));
    auto g0 = std::make_shared<SpectralField>(random_smooth_field(
        grid, static_cast<uint64_t>(ref.param("seed", 2)),
        ref.param("slope", 2.0), k_max, ref.param("amplitude", 1.0)));
    auto f0 = std::make_shared<VelocityField>(biot_savart(*g0));
    out.mode = "strong-limit";
    out.g = [g0](double) { return *g0; };
    out.f = [f0](double) { return *f0; };
    return out;
  }
  if (ref.kind == "counterexample") {
    auto sc = std::make_shared<CounterexampleScenario>(grid, nu);
    out.mode = "weak-oscillatory";
    out.g = [sc](double t) { return sc->g(t); };
    out.f = [sc](double t) { return sc->f(t); };
    return out;
  }
  throw ConfigError("unknown forcing kind '" + ref.kind + "'");
}

}  // namespace vvl
