#pragma once

#include <complex>
#include <vector>

#include "vvl/grid.hpp"

namespace vvl {

/// Real scalar field on the torus, carried simultaneously as point samples
/// and as Fourier coefficients.
///
/// Samples live at x_ij = (i*h, j*h), stored row-major as values[i*n + j].
/// Coefficients use the same index layout; entry (i, j) belongs to the
/// wavenumber pair (kx(i), ky(j)) with k in {-n/2+1, ..., n/2}. The DFT is
/// normalized so that coeff(k) = (1/n^2) sum_x values(x) e^{-i k.x}, i.e.
/// coefficients equal the continuum Fourier coefficients of the band-limited
/// interpolant. Fields are immutable after construction.
class SpectralField {
 public:
  SpectralField() = default;

  /// Forward transform of point samples (values.size() must equal n*n).
  static SpectralField from_values(const GridSpec& grid,
                                   std::vector<double> values);

  /// Inverse transform; rejects coefficient arrays whose conjugate-symmetry
  /// defect exceeds 1e-8.
  static SpectralField from_coeffs(const GridSpec& grid,
                                   std::vector<std::complex<double>> coeffs);

  /// Inverse transform without the symmetry check, for coefficients produced
  /// by operations that preserve symmetry structurally.
  static SpectralField from_coeffs_trusted(
      const GridSpec& grid, std::vector<std::complex<double>> coeffs);

  static SpectralField zero(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int n() const { return grid_.n; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

  double value(int i, int j) const { return values_[i * grid_.n + j]; }
  /// Coefficient at wavenumbers (kx, ky).
  std::complex<double> coeff(int kx, int ky) const {
    return coeffs_[grid_.index_of(kx) * grid_.n + grid_.index_of(ky)];
  }
  /// Spatial mean, the k = 0 coefficient.
  double mean() const { return coeffs_[0].real(); }

  double max_abs() const;

  /// this + c*other (linear in both representations, no transform).
  SpectralField axpy(double c, const SpectralField& other) const;
  SpectralField scaled(double c) const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
  std::vector<std::complex<double>> coeffs_;
};

/// Divergence-free two-component velocity field.
struct VelocityField {
  SpectralField x;
  SpectralField y;

  const GridSpec& grid() const { return x.grid(); }
  VelocityField axpy(double c, const VelocityField& o) const {
    return {x.axpy(c, o.x), y.axpy(c, o.y)};
  }
  VelocityField scaled(double c) const { return {x.scaled(c), y.scaled(c)}; }
  double max_speed() const;
};

}  // namespace vvl
