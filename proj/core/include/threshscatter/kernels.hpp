// Free-particle resolvent kernels at spectral parameter z = lambda^2 with
// lambda in the closed upper half-plane, dimension m >= 3.
//
// Three evaluation routes are provided and cross-checked in the tests:
//  * the general one-parameter integral representation (any m >= 3), reduced
//    to a generalized Gauss-Laguerre sum with weight t^{(m-3)/2} e^{-t};
//  * the closed form for odd m (a finite polynomial in lambda*r times
//    e^{i lambda r} / r^{m-2}), whose coefficients are exact rationals times
//    pi^{-(m-1)/2} and powers of -i;
//  * for even m, a superposition of half-line phases e^{i lambda r (1+2a)}
//    weighted by (1+a)^{-(2nu-j+1/2)} a^{-1/2}, nu = (m-2)/2.
#ifndef THRESHSCATTER_KERNELS_HPP
#define THRESHSCATTER_KERNELS_HPP

#include <functional>
#include <vector>

#include "threshscatter/numeric.hpp"

namespace ts {

struct KernelOptions {
  int laguerre_nodes = 200;  //!< order of the Laguerre rule for the t-integral
  double rel_tol = 1e-9;     //!< accepted mismatch between n and n/2 node sums
  double osc_cap = 1e3;      //!< |lambda|*r above which the even route refuses
};

/// Coefficients C_j of the odd-dimension closed form
///   G0(lambda, r) = sum_j C_j (lambda r)^j e^{i lambda r} / r^{m-2}.
std::vector<complex> odd_kernel_coefficients(int m);

/// The same coefficients as exact data: C_j = (-i)^j * q_j * pi^{-(m-1)/2}.
std::vector<Rational> odd_kernel_rationals(int m);

/// General integral route (any m >= 3, lambda in the closed upper half-plane).
complex eval_kernel_general(int m, complex lambda, double r,
                            const KernelOptions& opts = {});

/// Closed form for odd m.
complex eval_kernel_odd(int m, complex lambda, double r);

/// Superposition route for even m.
complex eval_kernel_even(int m, complex lambda, double r,
                         const KernelOptions& opts = {});

/// Zero-energy kernel constant: G0(0, r) = C0 / r^{m-2} with
/// C0 = 1 / ((m-2) * omega_{m-1}).
double zero_energy_constant(int m);

// ---------------------------------------------------------------------------
// Weighted half-line functionals behind the even superposition
// ---------------------------------------------------------------------------

/// Quadrature table for T_j^{(a)}[f] = pref * int_0^inf (1+a)^{-(2nu-j+1/2)}
/// f(a) da / sqrt(a), compactified so the sqrt singularity disappears and the
/// pure weight is integrated exactly.
struct SuperpositionRule {
  int m = 4;
  int j = 0;
  complex prefactor;       //!< (-2i)^j Gamma(2nu-j+1/2) binom(nu,j) / ((m-2)! sqrt(pi))
  std::vector<double> a;   //!< nodes in the original a variable
  std::vector<double> w;   //!< weights absorbing (1+a)^{-(2nu-j+1/2)} a^{-1/2}

  /// sum_i w_i, to be compared with sqrt(pi) Gamma(s-1/2) / Gamma(s).
  double weight_integral() const;
};

SuperpositionRule make_superposition_rule(int m, int j, int n_nodes = 64);

/// Applies the functional to a payload of at most polynomial growth of degree
/// < 2nu - j (otherwise the weighted integral diverges).
complex superposition_functional(const SuperpositionRule& rule,
                                 const std::function<complex(double)>& f);

/// Reference value of the weight moment: T_j^{(a)}[1] divided by the
/// elementary factor (-2i)^j binom(nu, j), which equals (m-3-j)!/(m-2)!.
double superposition_moment_reference(int m, int j);

/// Closed form for T_j^{(a)}[(1+2a)^{-k}], k >= 1 integer, via the
/// one-dimensional integral int_1^inf (x^2-1)^{k-1} (x^2+1)^{-(2nu-j+k)} dx.
complex superposition_power_reference(int m, int j, int k);

}  // namespace ts

#endif  // THRESHSCATTER_KERNELS_HPP
