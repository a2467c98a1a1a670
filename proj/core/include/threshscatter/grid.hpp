// Radial grids and sampled radial/sector profiles.
//
// The workhorse discretization is a log-uniform grid on [rmin, rmax]
// (default 2048 points on [1e-3, 1e3], overridable via THRESHSCATTER_GRID_N).
// A RadialProfile stores the radial factor f(r) of a function f(r) Y_ell on
// R^m together with the sector index and a decay exponent used for tail
// checks.  Evaluation between samples is natural-cubic-spline interpolation;
// below the first sample a quadratic fit is used (the grid starts at a tiny
// but nonzero radius), and beyond the last sample the profile is treated as
// zero.
#ifndef THRESHSCATTER_GRID_HPP
#define THRESHSCATTER_GRID_HPP

#include <functional>
#include <string>
#include <vector>

#include "threshscatter/numeric.hpp"

namespace ts {

struct GridSpec {
  double rmin = 1e-3;
  double rmax = 1e3;
  int n = 2048;
};

/// Reads THRESHSCATTER_GRID_N (if set) into spec.n.
GridSpec default_grid_spec();

/// Log-uniform points rmin * (rmax/rmin)^{i/(n-1)}.
std::vector<double> log_grid(const GridSpec& spec);

/// Natural cubic spline through (x_i, y_i) with complex values.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> xs, std::vector<complex> ys);
  complex operator()(double x) const;

 private:
  std::vector<double> xs_;
  std::vector<complex> ys_;
  std::vector<complex> y2_;  // second derivatives at the nodes
};

class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(int m, int ell, double delta, std::vector<double> r,
                std::vector<complex> f);

  /// Sample a callable radial factor on the given grid.
  static RadialProfile sample(int m, int ell, double delta,
                              const std::vector<double>& r,
                              const std::function<complex(double)>& f);

  int dimension() const { return m_; }
  int sector() const { return ell_; }
  double decay_exponent() const { return delta_; }
  const std::vector<double>& radii() const { return r_; }
  const std::vector<complex>& values() const { return f_; }
  std::vector<complex>& values() { return f_; }

  /// Spline evaluation with the extension rules described in the header.
  complex eval(double s) const;

  /// True when every imaginary part vanishes to near machine precision.
  bool is_real(double tol = 1e-13) const;

  /// |f(rmax)| <= tol * max |f| ?  (used to detect insufficient grid reach)
  bool tail_below(double tol = 1e-8) const;

  /// Rebuilds the interpolation spline after values() was mutated.
  void refresh();

 private:
  int m_ = 3;
  int ell_ = 0;
  double delta_ = 0.0;
  std::vector<double> r_;
  std::vector<complex> f_;
  CubicSpline spline_;
};

/// int_0^rmax f(r) r^{m-1} dr using cubic panels; the [0, rmin] head is
/// included via the profile's small-radius extension.
complex integrate_radial(const RadialProfile& p);

/// Angular factor int_{S^{m-1}} |Y_ell|^p domega for the unnormalized sector
/// harmonics used here (Y_0 = 1, Y_1 = x_1/r, Y_2 = (3(x_1/r)^2 - 1)/2; m=3
/// for ell > 0).
double angular_p_factor(int m, int ell, double p);

/// L^p norm of f(r) Y_ell over R^m restricted to the grid support.
double norm_lp(const RadialProfile& p, double pexp);

/// Hermitian inner product <f, g> = int conj(f) g dx (antilinear first slot),
/// for two profiles in the same sector/dimension.
complex inner_product(const RadialProfile& f, const RadialProfile& g);

/// Pointwise product on a's grid; at most one factor may carry ell > 0 and
/// the result inherits the sum of the sector indices.
RadialProfile multiply_profiles(const RadialProfile& a, const RadialProfile& b);

// --- profile file format -----------------------------------------------
// Header line:  # threshscatter profile m=<int> ell=<int> delta=<float>
// Data lines:   <radius> <value>        (real profiles)
//               <radius> <re> <im>      (complex profiles)
// Values are printed with 17 significant digits so a write/read cycle is
// bit-exact for doubles.

void write_profile(const RadialProfile& p, const std::string& path);
RadialProfile read_profile(const std::string& path);

}  // namespace ts

#endif  // THRESHSCATTER_GRID_HPP
