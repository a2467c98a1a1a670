// Filon-type quadrature for oscillatory integrals int f(x) e^{i omega x} dx.
//
// The smooth factor f is represented by a local cubic on every grid panel
// (fitted through the four nearest samples), and the cubic-times-exponential
// moments are integrated exactly.  The committed error is the cubic
// interpolation error O(h^4 f'''') per panel, *independent of omega* -- plain
// Gauss quadrature instead loses accuracy once omega * h is no longer small.
// With omega = 0 the same machinery degenerates to a composite cubic
// integrator, which the library also uses for non-oscillatory grid integrals.
#ifndef THRESHSCATTER_FILON_HPP
#define THRESHSCATTER_FILON_HPP

#include <array>
#include <vector>

#include "threshscatter/numeric.hpp"

namespace ts {

/// Piecewise-cubic model of sampled data, precomputed once so that the
/// oscillatory integral can be evaluated cheaply for many frequencies.
class PiecewiseCubic {
 public:
  PiecewiseCubic() = default;
  /// xs must be strictly increasing with at least two entries.
  PiecewiseCubic(std::vector<double> xs, std::vector<complex> fs);

  /// int_{xs.front()}^{xs.back()} f(x) e^{i omega x} dx  (omega may be 0 or negative).
  complex integrate_exp(double omega) const;

  /// Plain integral of f over the sampled range.
  complex integrate() const { return integrate_exp(0.0); }

  /// int f(x) cos(omega x) dx and int f(x) sin(omega x) dx.
  complex integrate_cos(double omega) const;
  complex integrate_sin(double omega) const;

  /// Cumulative integrals int_{xs.front()}^{xs_i} f, one entry per node
  /// (the first entry is 0).
  std::vector<complex> prefix_integrals() const;

  const std::vector<double>& nodes() const { return xs_; }

 private:
  std::vector<double> xs_;
  // Monomial coefficients of the panel cubic in t = x - xs_[k], panel k.
  std::vector<std::array<complex, 4>> coeff_;
};

/// One-shot helpers.
complex filon_integrate_exp(const std::vector<double>& xs,
                            const std::vector<complex>& fs, double omega);
complex filon_integrate(const std::vector<double>& xs,
                        const std::vector<complex>& fs);

}  // namespace ts

#endif  // THRESHSCATTER_FILON_HPP
