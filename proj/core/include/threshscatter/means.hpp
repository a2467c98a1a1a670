// Spherical means, radial/sector Fourier transforms, and the spectral
// pairing <v, (G0(lambda) - G0(-lambda)) u> in its three computable forms:
// the spectral-measure form (product of radial transforms on the sphere of
// radius lambda), the odd-dimension representation (a finite sum of 1D
// oscillatory integrals of r^{1+j} M(r)), and the even-dimension
// representation through the weighted half-line functionals.
//
// Here M(r) is always the spherical mean of the convolution conj(v) * u-check
// with u-check(x) = u(-x); for sector data f(r) Y_ell the mean of the
// convolution reduces to one radial integral against moment differences of
// the partner profile (the P_ell-weighted angular integral collapses to
// polynomial moments of the chord variable), which is what makes the m = 3
// machinery fast enough to drive the singular-part pipeline.
#ifndef THRESHSCATTER_MEANS_HPP
#define THRESHSCATTER_MEANS_HPP

#include <functional>
#include <vector>

#include "threshscatter/grid.hpp"
#include "threshscatter/numeric.hpp"

namespace ts {

// ---------------------------------------------------------------------------
// Spherical means of callables
// ---------------------------------------------------------------------------

/// Mean over the sphere of radius r of an axisymmetric function given as
/// F(|x|, cos angle to the symmetry axis); valid for every m >= 3.
complex spherical_mean_axisym(const std::function<complex(double, double)>& F,
                              int m, double r, int order = 128);

/// Mean over the sphere of radius r in R^3 of a general callable F(x, y, z),
/// by a product rule (Gauss in the polar angle, trapezoid in the azimuth).
complex spherical_mean_point(
    const std::function<complex(double, double, double)>& F, double r,
    int polar_order = 64, int azimuth_order = 64);

// ---------------------------------------------------------------------------
// Means of sector convolutions
// ---------------------------------------------------------------------------

/// M(r) = spherical mean of (conj(f) * g-check)(x) for profiles f, g in the
/// same sector and dimension.  Sector ell <= 2 requires m = 3; ell = 0 works
/// for every m.  Returns a radial (ell = 0) profile on r_out.
RadialProfile convolution_mean(const RadialProfile& f, const RadialProfile& g,
                               const std::vector<double>& r_out,
                               int theta_order = 96);

/// M-tilde(rho) = int_rho^inf r M(r) dr, on the grid of M.
RadialProfile tilde_mean(const RadialProfile& M);

// ---------------------------------------------------------------------------
// Radial / sector Fourier transforms
// ---------------------------------------------------------------------------

/// Scalar Bessel transform (2pi)^{m/2} rho^{1-m/2} int_0^inf
/// J_{ell+m/2-1}(rho r) u(r) r^{m/2} dr.  The full transform of u(r) Y_ell is
/// (-i)^ell * sector_transform * Y_ell(xi-hat); the inverse radial factor is
/// (2pi)^{-m} times the same transform.  rho >= 0.
complex sector_transform(const RadialProfile& u, double rho);

/// Applies the radial Fourier multiplier F(|xi|): returns the profile of
/// F(|D|) u on u's grid, computed through forward transform on rho_grid,
/// multiplication, and inverse transform.
RadialProfile apply_fourier_multiplier(const RadialProfile& u,
                                       const std::function<double(double)>& F,
                                       const std::vector<double>& rho_grid);

// ---------------------------------------------------------------------------
// The pairing in its three forms
// ---------------------------------------------------------------------------

/// Spectral-measure form, valid for every m >= 3 and sector.
complex pairing_spectral(const RadialProfile& v, const RadialProfile& u,
                         double lambda);

/// Odd-m representation: sum_j c_j (-1)^{j+1} lambda^j
///   int_R e^{-i lambda r} r^{1+j} M(r) dr,  c_j = omega_{m-1} C_j.
complex pairing_representation_odd(const RadialProfile& v,
                                   const RadialProfile& u, double lambda);

/// Even-m representation through the superposition functionals; with
/// tilde_j0 set, the j = 0 term is evaluated through M-tilde instead
/// (integrated-by-parts variant), which must agree with the default.
complex pairing_representation_even(const RadialProfile& v,
                                    const RadialProfile& u, double lambda,
                                    bool tilde_j0 = false);

/// Mean M(r) of conj(v) * u-check packaged for reuse by the singular-part
/// pipeline: r_out defaults to a uniform grid sized from the two supports.
RadialProfile pairing_mean(const RadialProfile& v, const RadialProfile& u,
                           int n_out = 1200, double rmax = 0.0);

}  // namespace ts

#endif  // THRESHSCATTER_MEANS_HPP
