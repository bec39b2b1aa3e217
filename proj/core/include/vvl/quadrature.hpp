#pragma once

#include <array>
#include <functional>
#include <vector>

namespace vvl {

/// 4-node Gauss-Legendre rule on [a, b].
struct GaussLegendre4 {
  static constexpr std::array<double, 4> nodes = {
      -0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
      0.8611363115940526};
  static constexpr std::array<double, 4> weights = {
      0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
      0.3478548451374538};

  static double node(int i, double a, double b) {
    return 0.5 * (a + b) + 0.5 * (b - a) * nodes[i];
  }
  static double weight(int i, double a, double b) {
    return 0.5 * (b - a) * weights[i];
  }
};

/// Adaptive Gauss quadrature (15-point Legendre with bisection refinement)
/// to a relative tolerance.
double adaptive_gauss(const std::function<double(double)>& f, double a,
                      double b, double rel_tol = 1e-11);

/// Composite trapezoid on an arbitrary sample grid.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

/// Running trapezoid integral; result[i] = int_{t0}^{t_i}.
std::vector<double> cumulative_trapezoid(const std::vector<double>& t,
                                         const std::vector<double>& y);

}  // namespace vvl
