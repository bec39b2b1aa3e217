#include "vvl/spectral.hpp"

#include <cmath>

#include "vvl/errors.hpp"

namespace vvl {

namespace {

using Cv = std::vector<std::complex<double>>;

// (i k)^order for one axis, Nyquist zeroed on odd orders.
std::complex<double> ik_power(int k, bool is_nyquist, int order) {
  if (order % 2 == 1 && is_nyquist) return {0.0, 0.0};
  std::complex<double> ik(0.0, static_cast<double>(k));
  std::complex<double> r(1.0, 0.0);
  for (int p = 0; p < order; ++p) r *= ik;
  return r;
}

}  // namespace

SpectralField derivative(const SpectralField& f, Axis axis, int order) {
  if (order < 1 || order > 4)
    throw DomainError("derivative: order must be in [1, 4], got " +
                      std::to_string(order));
  const GridSpec& g = f.grid();
  const int n = g.n;
  Cv c = f.coeffs();
  for (int i = 0; i < n; ++i) {
    const int kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int ky = g.wavenumber(j);
      const int k = axis == Axis::x ? kx : ky;
      const bool nyq = (axis == Axis::x ? i : j) == n / 2;
      c[i * n + j] *= ik_power(k, nyq, order);
    }
  }
  return SpectralField::from_coeffs_trusted(g, std::move(c));
}

SpectralField laplacian(const SpectralField& f) {
  const GridSpec& g = f.grid();
  const int n = g.n;
  Cv c = f.coeffs();
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      c[i * n + j] *= -(kx * kx + ky * ky);
    }
  }
  return SpectralField::from_coeffs_trusted(g, std::move(c));
}

SpectralField invert_laplacian(const SpectralField& f) {
  const double m = f.mean();
  if (std::abs(m) > 1e-10)
    throw MeanViolationError(
        "invert_laplacian: input mean " + std::to_string(m) +
            " exceeds the 1e-10 zero-mean tolerance",
        m);
  const GridSpec& g = f.grid();
  const int n = g.n;
  Cv c = f.coeffs();
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      c[i * n + j] = k2 == 0.0 ? std::complex<double>(0.0, 0.0)
                               : c[i * n + j] / (-k2);
    }
  }
  return SpectralField::from_coeffs_trusted(g, std::move(c));
}

VelocityField biot_savart(const SpectralField& omega) {
  const double m = omega.mean();
  if (std::abs(m) > 1e-10)
    throw MeanViolationError(
        "biot_savart: vorticity mean " + std::to_string(m) +
            " exceeds the 1e-10 zero-mean tolerance",
        m);
  const GridSpec& g = omega.grid();
  const int n = g.n;
  // u = grad^perp psi with psi = Lap^{-1} omega:
  //   u_x(k) =  i ky omega(k) / |k|^2
  //   u_y(k) = -i kx omega(k) / |k|^2
  Cv cx(omega.coeffs().size()), cy(omega.coeffs().size());
  for (int i = 0; i < n; ++i) {
    const double kx = i == n / 2 ? 0.0 : g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = j == n / 2 ? 0.0 : g.wavenumber(j);
      const double kx2 = g.wavenumber(i), ky2 = g.wavenumber(j);
      const double k2 = kx2 * kx2 + ky2 * ky2;
      const std::complex<double> w = omega.coeffs()[i * n + j];
      if (k2 == 0.0) {
        cx[i * n + j] = cy[i * n + j] = {0.0, 0.0};
      } else {
        cx[i * n + j] = std::complex<double>(0.0, ky / k2) * w;
        cy[i * n + j] = std::complex<double>(0.0, -kx / k2) * w;
      }
    }
  }
  return {SpectralField::from_coeffs_trusted(g, std::move(cx)),
          SpectralField::from_coeffs_trusted(g, std::move(cy))};
}

SpectralField curl(const VelocityField& u) {
  SpectralField dvdx = derivative(u.y, Axis::x);
  SpectralField dudy = derivative(u.x, Axis::y);
  return dvdx.axpy(-1.0, dudy);
}

SpectralField dealias(const SpectralField& f) {
  const GridSpec& g = f.grid();
  const int n = g.n;
  Cv c = f.coeffs();
  for (int i = 0; i < n; ++i) {
    const int kx = std::abs(g.wavenumber(i));
    for (int j = 0; j < n; ++j) {
      const int ky = std::abs(g.wavenumber(j));
      if (3 * std::max(kx, ky) > n) c[i * n + j] = {0.0, 0.0};
    }
  }
  return SpectralField::from_coeffs_trusted(g, std::move(c));
}

double divergence_max(const VelocityField& u) {
  const GridSpec& g = u.grid();
  const int n = g.n;
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      m = std::max(m, std::abs(kx * u.x.coeffs()[i * n + j] +
                               ky * u.y.coeffs()[i * n + j]));
    }
  }
  return m;
}

VelocityField leray_project(const VelocityField& u) {
  const GridSpec& g = u.grid();
  const int n = g.n;
  Cv cx = u.x.coeffs(), cy = u.y.coeffs();
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) {
        cx[i * n + j] = cy[i * n + j] = {0.0, 0.0};
        continue;
      }
      const std::complex<double> dot = kx * cx[i * n + j] + ky * cy[i * n + j];
      cx[i * n + j] -= kx * dot / k2;
      cy[i * n + j] -= ky * dot / k2;
    }
  }
  return {SpectralField::from_coeffs_trusted(g, std::move(cx)),
          SpectralField::from_coeffs_trusted(g, std::move(cy))};
}

double inner_product_l2(const SpectralField& f, const SpectralField& g) {
  if (f.grid() != g.grid())
    throw DimensionError("inner_product_l2: grid mismatch");
  const auto& a = f.values();
  const auto& b = g.values();
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * f.grid().cell_measure();
}

double inner_product_l2(const VelocityField& f, const VelocityField& g) {
  return inner_product_l2(f.x, g.x) + inner_product_l2(f.y, g.y);
}

double l2_norm(const SpectralField& f) {
  return std::sqrt(std::max(0.0, inner_product_l2(f, f)));
}

double l2_norm(const VelocityField& f) {
  return std::sqrt(std::max(0.0, inner_product_l2(f, f)));
}

double h_sigma_norm(const SpectralField& f, double sigma) {
  const GridSpec& g = f.grid();
  const int n = g.n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      const double w = std::pow(1.0 + kx * kx + ky * ky, sigma);
      s += w * std::norm(f.coeffs()[i * n + j]);
    }
  }
  return std::sqrt(GridSpec::domain_measure() * s);
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  if (f.grid() != g.grid()) throw DimensionError("multiply: grid mismatch");
  std::vector<double> v(f.values().size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = f.values()[i] * g.values()[i];
  return SpectralField::from_values(f.grid(), std::move(v));
}

SpectralField advection_term(const VelocityField& u, const SpectralField& f) {
  if (u.grid() != f.grid())
    throw DimensionError("advection_term: grid mismatch");
  SpectralField fx = derivative(f, Axis::x);
  SpectralField fy = derivative(f, Axis::y);
  std::vector<double> v(f.values().size());
  for (size_t i = 0; i < v.size(); ++i)
    v[i] = u.x.values()[i] * fx.values()[i] + u.y.values()[i] * fy.values()[i];
  SpectralField prod = dealias(SpectralField::from_values(f.grid(), std::move(v)));
  // Project out the k = 0 mode: div(u f) integrates to zero for div u = 0.
  Cv c = prod.coeffs();
  c[0] = {0.0, 0.0};
  return SpectralField::from_coeffs_trusted(f.grid(), std::move(c));
}

SpectralField truncate_to(const SpectralField& f, const GridSpec& coarse) {
  const GridSpec& fine = f.grid();
  if (coarse.n > fine.n)
    throw ResampleError("truncate_to: target grid is finer than the source");
  if (coarse.n == fine.n) return f;
  const int nc = coarse.n, nf = fine.n;
  Cv c(static_cast<size_t>(nc) * nc, {0.0, 0.0});
  for (int ki = -nc / 2 + 1; ki < nc / 2; ++ki) {
    for (int kj = -nc / 2 + 1; kj < nc / 2; ++kj) {
      c[coarse.index_of(ki) * nc + coarse.index_of(kj)] =
          f.coeffs()[fine.index_of(ki) * nf + fine.index_of(kj)];
    }
  }
  return SpectralField::from_coeffs_trusted(coarse, std::move(c));
}

VelocityField truncate_to(const VelocityField& u, const GridSpec& coarse) {
  return {truncate_to(u.x, coarse), truncate_to(u.y, coarse)};
}

}  // namespace vvl
