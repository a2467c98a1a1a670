// One-dimensional harmonic-analysis primitives on uniformly sampled line
// signals: Fourier multipliers (Hilbert transform, half-line frequency
// projection and its low-pass-smoothed variant), the uncentered maximal
// function, Muckenhoupt characteristics of power weights, and pointwise
// majorant checks |K * u| <= ||G||_1 M u for kernels dominated by an
// integrable radial majorant.
//
// Multipliers are applied through zero-padded FFTs (default 8x padding), so
// the slowly decaying convolution tails of the Hilbert kernel do not wrap
// around the periodic domain at the accuracy level the tests require.
#ifndef THRESHSCATTER_HARMONIC_HPP
#define THRESHSCATTER_HARMONIC_HPP

#include <functional>
#include <vector>

#include "threshscatter/numeric.hpp"

namespace ts {

/// Uniform complex samples v_i at x_i = x0 + i * dx.
struct LineSignal {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<complex> v;

  std::size_t size() const { return v.size(); }
  double x(std::size_t i) const { return x0 + dx * double(i); }

  static LineSignal sample(double x0, double dx, std::size_t n,
                           const std::function<complex(double)>& f);
};

/// F^{-1}[ mult(xi) * F u ].  The multiplier is evaluated on the padded
/// frequency grid; at the Nyquist frequency the average of mult(+-xi) is used
/// so real signals stay real for symmetric multipliers.
LineSignal apply_line_multiplier(const LineSignal& u,
                                 const std::function<complex(double)>& mult,
                                 int pad_factor = 8);

/// Classical Hilbert transform, multiplier -i sgn(xi); real to real, and
/// applying it twice negates the (mean-free part of the) signal.
LineSignal hilbert_transform(const LineSignal& u, int pad_factor = 8);

/// Projection onto nonnegative frequencies, multiplier 1_{xi >= 0}; equals
/// (u + i H u) / 2 with the classical Hilbert transform.
LineSignal half_projection(const LineSignal& u, int pad_factor = 8);

/// Projection onto nonnegative frequencies composed with the low-pass filter
/// given by its (real, even) frequency profile.
LineSignal smoothed_half_projection(
    const LineSignal& u, const std::function<double(double)>& low_pass_hat,
    int pad_factor = 8);

/// Discrete convolution (K * u)(x_i) = dx * sum_k K(k dx) u_{i-k}, with the
/// kernel sampled on [-reach, reach] and u extended by zero.
LineSignal convolve_line(const LineSignal& u,
                         const std::function<complex(double)>& kernel,
                         double reach, int pad_factor = 8);

/// Uncentered Hardy-Littlewood maximal function: at each sample, the largest
/// average of |u| over grid windows containing the sample.  Window lengths
/// run over 1..16 samples and then a geometric net with the given ratio, so
/// the supremum over lengths is resolved to within that ratio.
std::vector<double> maximal_function(const LineSignal& u,
                                     double length_ratio = 1.15);

/// Muckenhoupt data for the power weight |x|^a on the line.  The interval
/// averages are exact power integrals, so divergence at the endpoints of the
/// admissible range is detected exactly, not by overflow.  truncated_sups
/// holds the characteristic of [-1,1] with [-eps, eps] removed for
/// eps = 2^{-k}; in the divergent cases it grows geometrically.
struct ApResult {
  bool finite = false;
  double characteristic = 0.0;
  std::vector<double> truncated_sups;
};

ApResult ap_characteristic_power(double a, double p, int truncation_levels = 24);

/// Largest pointwise ratio |K * u| / M u against the L^1 mass of the radial
/// majorant; dominated is max_ratio <= (1 + tol) * majorant_l1.
struct MajorantCheck {
  double max_ratio = 0.0;
  double majorant_l1 = 0.0;
  bool dominated = false;
};

MajorantCheck majorant_check(const LineSignal& u,
                             const std::function<complex(double)>& kernel,
                             const std::function<double(double)>& majorant,
                             double reach, double tol = 0.25);

/// ( dx * sum w(x_i) |u_i|^p )^{1/p}.
double weighted_lp_norm(const LineSignal& u,
                        const std::function<double(double)>& w, double p);

}  // namespace ts

#endif  // THRESHSCATTER_HARMONIC_HPP
