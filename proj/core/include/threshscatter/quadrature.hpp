// One-dimensional quadrature rules used throughout the library:
//  * Gauss-Legendre on [-1,1] (arbitrary order, cached),
//  * generalized Gauss-Laguerre for weights t^alpha e^{-t} on (0,inf),
//  * composite/adaptive panel integration for real and complex integrands.
#ifndef THRESHSCATTER_QUADRATURE_HPP
#define THRESHSCATTER_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "threshscatter/numeric.hpp"

namespace ts {

struct QuadRule {
  std::vector<double> x;  //!< nodes
  std::vector<double> w;  //!< weights
};

/// Gauss-Legendre rule on [-1,1].  Results are cached per order.
const QuadRule& gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a,b].
QuadRule gauss_legendre_ab(int n, double a, double b);

/// Generalized Gauss-Laguerre rule: sum w_i f(x_i) ~ int_0^inf f(t) t^alpha e^{-t} dt.
/// Cached per (n, alpha).  Requires alpha > -1.
const QuadRule& gauss_laguerre(int n, double alpha);

/// Integrate a callable over [a,b] with a fixed-order Gauss rule.
template <typename F>
auto integrate_gl(F&& f, double a, double b, int n = 32) {
  const QuadRule& q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), hl = 0.5 * (b - a);
  decltype(f(a)) s{};
  for (std::size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * f(mid + hl * q.x[i]);
  return s * hl;
}

/// Adaptive panel integration: bisects until the GL(n) vs GL(2n) difference on
/// each panel is below tol (relative to the accumulated magnitude).  Works for
/// real or complex-valued integrands.  Throws accuracy_error on failure.
complex integrate_adaptive(const std::function<complex(double)>& f, double a,
                           double b, double rel_tol = 1e-10,
                           double abs_floor = 0.0, int max_depth = 18);

/// Integrate f over [a, infinity) by geometric panels [a, 2a], [2a, 4a], ...
/// until the last panel contributes less than tail_tol of the running total.
complex integrate_to_infinity(const std::function<complex(double)>& f, double a,
                              double rel_tol = 1e-10, double tail_tol = 1e-12,
                              int max_panels = 80);

}  // namespace ts

#endif  // THRESHSCATTER_QUADRATURE_HPP
