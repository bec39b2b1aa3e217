#include "vvl/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "vvl/errors.hpp"

namespace vvl {

namespace {

// One forward and one backward c2c plan per grid size. Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they are deterministic and can be executed
// on any caller-owned buffer via the new-array interface, which is safe to use
// from several threads at once. Plan creation itself is serialized.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PlanPair& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> a(static_cast<size_t>(n) * n);
  std::vector<std::complex<double>> b(a.size());
  auto* ap = reinterpret_cast<fftw_complex*>(a.data());
  auto* bp = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  p.forward = fftw_plan_dft_2d(n, n, ap, bp, FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_2d(n, n, ap, bp, FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(n, p).first->second;
}

std::vector<std::complex<double>> forward_dft(const GridSpec& grid,
                                              const std::vector<double>& v) {
  const int n = grid.n;
  std::vector<std::complex<double>> in(v.begin(), v.end());
  std::vector<std::complex<double>> out(in.size());
  PlanPair& p = plans_for(n);
  fftw_execute_dft(p.forward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<double> backward_dft(const GridSpec& grid,
                                 const std::vector<std::complex<double>>& c) {
  const int n = grid.n;
  std::vector<std::complex<double>> in(c);
  std::vector<std::complex<double>> out(in.size());
  PlanPair& p = plans_for(n);
  fftw_execute_dft(p.backward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> v(out.size());
  for (size_t i = 0; i < out.size(); ++i) v[i] = out[i].real();
  return v;
}

void check_sizes(const GridSpec& grid, size_t size) {
  if (grid.n < 8 || grid.n % 2 != 0)
    throw DimensionError("SpectralField: n must be even and >= 8");
  if (size != static_cast<size_t>(grid.n) * grid.n)
    throw DimensionError("SpectralField: array size " + std::to_string(size) +
                         " does not match " + std::to_string(grid.n) + "x" +
                         std::to_string(grid.n) + " grid");
}

}  // namespace

SpectralField SpectralField::from_values(const GridSpec& grid,
                                         std::vector<double> values) {
  check_sizes(grid, values.size());
  SpectralField f;
  f.grid_ = grid;
  f.coeffs_ = forward_dft(grid, values);
  f.values_ = std::move(values);
  return f;
}

SpectralField SpectralField::from_coeffs(
    const GridSpec& grid, std::vector<std::complex<double>> coeffs) {
  check_sizes(grid, coeffs.size());
  const int n = grid.n;
  double defect = 0.0;
  for (int i = 0; i < n; ++i) {
    const int in = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int jn = (n - j) % n;
      defect = std::max(defect, std::abs(coeffs[i * n + j] -
                                         std::conj(coeffs[in * n + jn])));
    }
  }
  if (defect > 1e-8)
    throw ConsistencyError(
        "SpectralField: conjugate-symmetry defect " + std::to_string(defect) +
        " exceeds 1e-8; coefficients do not describe a real field");
  // Symmetrize so the inverse transform is exactly real.
  for (int i = 0; i < n; ++i) {
    const int in = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int jn = (n - j) % n;
      if (i * n + j <= in * n + jn) {
        auto avg = 0.5 * (coeffs[i * n + j] + std::conj(coeffs[in * n + jn]));
        coeffs[i * n + j] = avg;
        coeffs[in * n + jn] = std::conj(avg);
      }
    }
  }
  return from_coeffs_trusted(grid, std::move(coeffs));
}

SpectralField SpectralField::from_coeffs_trusted(
    const GridSpec& grid, std::vector<std::complex<double>> coeffs) {
  check_sizes(grid, coeffs.size());
  SpectralField f;
  f.grid_ = grid;
  f.values_ = backward_dft(grid, coeffs);
  f.coeffs_ = std::move(coeffs);
  return f;
}

SpectralField SpectralField::zero(const GridSpec& grid) {
  SpectralField f;
  f.grid_ = grid;
  f.values_.assign(static_cast<size_t>(grid.n) * grid.n, 0.0);
  f.coeffs_.assign(f.values_.size(), {0.0, 0.0});
  return f;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SpectralField SpectralField::axpy(double c, const SpectralField& other) const {
  if (grid_ != other.grid_)
    throw DimensionError("SpectralField::axpy: grid mismatch");
  SpectralField f;
  f.grid_ = grid_;
  f.values_.resize(values_.size());
  f.coeffs_.resize(coeffs_.size());
  for (size_t i = 0; i < values_.size(); ++i) {
    f.values_[i] = values_[i] + c * other.values_[i];
    f.coeffs_[i] = coeffs_[i] + c * other.coeffs_[i];
  }
  return f;
}

SpectralField SpectralField::scaled(double c) const {
  SpectralField f;
  f.grid_ = grid_;
  f.values_.resize(values_.size());
  f.coeffs_.resize(coeffs_.size());
  for (size_t i = 0; i < values_.size(); ++i) {
    f.values_[i] = c * values_[i];
    f.coeffs_[i] = c * coeffs_[i];
  }
  return f;
}

double VelocityField::max_speed() const {
  const auto& vx = x.values();
  const auto& vy = y.values();
  double m = 0.0;
  for (size_t i = 0; i < vx.size(); ++i)
    m = std::max(m, std::hypot(vx[i], vy[i]));
  return m;
}

}  // namespace vvl
