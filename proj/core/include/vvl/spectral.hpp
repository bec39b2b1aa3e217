#pragma once

#include "vvl/field.hpp"

namespace vvl {

enum class Axis { x, y };

/// d^order/d(axis)^order via multiplication by (i k)^order.
/// The Nyquist mode k = n/2 is zeroed for odd orders.
SpectralField derivative(const SpectralField& f, Axis axis, int order = 1);

/// Spectral Laplacian.
SpectralField laplacian(const SpectralField& f);

/// Solves  Laplacian(psi) = f  for the zero-mean psi.
/// Requires |mean(f)| <= 1e-10.
SpectralField invert_laplacian(const SpectralField& f);

/// u = grad^perp Laplacian^{-1} omega with grad^perp = (-d/dy, d/dx).
/// The result is divergence-free with zero mean and curl(u) = omega.
VelocityField biot_savart(const SpectralField& omega);

/// curl u = d(u_y)/dx - d(u_x)/dy.
SpectralField curl(const VelocityField& u);

/// 2/3-rule: zeroes all coefficients with max(|kx|, |ky|) > n/3.
SpectralField dealias(const SpectralField& f);

/// Max over modes of |k . u_hat(k)|, the spectral divergence defect.
double divergence_max(const VelocityField& u);

/// Removes any gradient part: u_hat -> u_hat - k (k.u_hat)/|k|^2, and zeroes
/// the mean. Identity on fields that are already divergence-free.
VelocityField leray_project(const VelocityField& u);

/// L2 inner product by the trapezoidal-exact quadrature h^2 sum f g.
double inner_product_l2(const SpectralField& f, const SpectralField& g);
double inner_product_l2(const VelocityField& f, const VelocityField& g);

double l2_norm(const SpectralField& f);
double l2_norm(const VelocityField& f);

/// Sobolev norm (4 pi^2 sum_k (1+|k|^2)^sigma |f_hat(k)|^2)^{1/2}.
double h_sigma_norm(const SpectralField& f, double sigma);

/// Pointwise product, formed on the grid.
SpectralField multiply(const SpectralField& f, const SpectralField& g);

/// dealias(U . grad f) with the products formed on the grid and the
/// derivatives spectral; the k = 0 mode of the result is projected out
/// (the continuum advection term has zero mean for divergence-free U).
SpectralField advection_term(const VelocityField& u, const SpectralField& f);

/// Spectral truncation of f onto a coarser grid (coarse.n <= f.n).
/// Modes touching or beyond the coarse Nyquist band are dropped.
SpectralField truncate_to(const SpectralField& f, const GridSpec& coarse);
VelocityField truncate_to(const VelocityField& u, const GridSpec& coarse);

}  // namespace vvl
