#pragma once

#include <numbers>

#include "vvl/errors.hpp"

namespace vvl {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform n-by-n grid on the periodic square [0, 2*pi)^2.
struct GridSpec {
  int n = 0;

  GridSpec() = default;
  explicit GridSpec(int n_) : n(n_) {
    if (n < 8 || n % 2 != 0)
      throw DimensionError("GridSpec: n must be even and >= 8, got n=" +
                           std::to_string(n));
  }

  double h() const { return kTwoPi / n; }
  double cell_measure() const { return h() * h(); }
  int points() const { return n * n; }

  /// |T^2| = (2*pi)^2, fixed by the domain.
  static constexpr double domain_measure() {
    return kTwoPi * kTwoPi;
  }

  /// Wavenumber of DFT index m, in {-n/2+1, ..., n/2}.
  int wavenumber(int m) const { return m <= n / 2 ? m : m - n; }
  /// DFT index of wavenumber k.
  int index_of(int k) const { return k >= 0 ? k : k + n; }

  bool operator==(const GridSpec& o) const { return n == o.n; }
  bool operator!=(const GridSpec& o) const { return n != o.n; }
};

}  // namespace vvl
