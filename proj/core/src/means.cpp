#include "threshscatter/means.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "threshscatter/filon.hpp"
#include "threshscatter/kernels.hpp"
#include "threshscatter/quadrature.hpp"

namespace ts {

namespace {

// Largest grid radius still carrying |f| > tol * max |f|.
double support_radius(const RadialProfile& p, double tol = 1e-13) {
  const auto& r = p.radii();
  const auto& f = p.values();
  double fmax = 0.0;
  for (const complex& v : f) fmax = std::max(fmax, std::abs(v));
  if (fmax == 0.0) return r.front();
  for (std::size_t i = r.size(); i-- > 0;)
    if (std::abs(f[i]) > tol * fmax) return r[i];
  return r.front();
}

// Cumulative moments Q_k(w) = int_0^w v^k g(v) dv of a radial factor,
// splined so that the chord-variable integrals K_ell(r, t) become O(1)
// lookups.  Only the k actually requested are built.
class MomentTable {
 public:
  MomentTable(const RadialProfile& g, const std::vector<int>& ks, double wmax) {
    const double wmin = 0.1 * g.radii().front();
    const int nw = 2500;
    std::vector<double> w(nw);
    const double ratio = wmax / wmin;
    for (int i = 0; i < nw; ++i)
      w[i] = wmin * std::pow(ratio, double(i) / (nw - 1));
    std::vector<double> xs;
    xs.reserve(nw + 1);
    xs.push_back(0.0);
    xs.insert(xs.end(), w.begin(), w.end());
    for (int k : ks) {
      std::vector<complex> vals(nw);
      for (int i = 0; i < nw; ++i) vals[i] = g.eval(w[i]) * std::pow(w[i], k);
      PiecewiseCubic pc(w, vals);
      std::vector<complex> P = pc.prefix_integrals();
      // Head [0, wmin]; for k = -1 the caller guarantees g ~ w^2 near 0.
      complex head = integrate_gl(
          [&](double v) { return g.eval(v) * std::pow(v, k); }, 0.0, wmin, 16);
      std::vector<complex> Q(nw + 1);
      Q[0] = complex{0.0, 0.0};
      for (int i = 0; i < nw; ++i) Q[i + 1] = head + P[i];
      wend_ = w.back();
      splines_[k] = CubicSpline(xs, Q);
      ends_[k] = Q.back();
    }
  }

  complex delta(int k, double lo, double hi) const {
    return value(k, hi) - value(k, lo);
  }

 private:
  complex value(int k, double w) const {
    auto it = splines_.find(k);
    if (w >= wend_) return ends_.at(k);
    if (w <= 0.0) return complex{0.0, 0.0};
    return it->second(w);
  }

  double wend_ = 0.0;
  std::map<int, CubicSpline> splines_;
  std::map<int, complex> ends_;
};

// Coefficients in x of [(a - x)(x - b)]^n (x stands for w^2).
std::vector<double> chord_weight_poly(double a, double b, int n) {
  std::vector<double> poly{1.0};
  const double base[3] = {-a * b, a + b, -1.0};
  for (int it = 0; it < n; ++it) {
    std::vector<double> next(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (int j = 0; j < 3; ++j) next[i + j] += poly[i] * base[j];
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

complex spherical_mean_axisym(const std::function<complex(double, double)>& F,
                              int m, double r, int order) {
  if (m < 3) throw domain_error("spherical_mean_axisym: need m >= 3");
  if (r < 0.0) throw domain_error("spherical_mean_axisym: need r >= 0");
  const QuadRule gl = gauss_legendre_ab(order, 0.0, pi);
  complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < gl.x.size(); ++i)
    sum += gl.w[i] * F(r, std::cos(gl.x[i])) *
           std::pow(std::sin(gl.x[i]), m - 2);
  return (sphere_area(m - 1) / sphere_area(m)) * sum;
}

complex spherical_mean_point(
    const std::function<complex(double, double, double)>& F, double r,
    int polar_order, int azimuth_order) {
  if (r < 0.0) throw domain_error("spherical_mean_point: need r >= 0");
  const QuadRule gl = gauss_legendre_ab(polar_order, 0.0, pi);
  complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    const double st = std::sin(gl.x[i]);
    const double ct = std::cos(gl.x[i]);
    complex ring{0.0, 0.0};
    for (int q = 0; q < azimuth_order; ++q) {
      const double phi = 2.0 * pi * q / azimuth_order;
      ring += F(r * st * std::cos(phi), r * st * std::sin(phi), r * ct);
    }
    sum += gl.w[i] * st * ring * (2.0 * pi / azimuth_order);
  }
  return sum / (4.0 * pi);
}

RadialProfile convolution_mean(const RadialProfile& f, const RadialProfile& g,
                               const std::vector<double>& r_out,
                               int theta_order) {
  if (f.dimension() != g.dimension() || f.sector() != g.sector())
    throw domain_error("convolution_mean: mismatched dimension or sector");
  const int m = f.dimension();
  const int ell = f.sector();
  if (ell != 0 && m != 3)
    throw domain_error("convolution_mean: ell > 0 requires m = 3");
  if (r_out.empty()) throw domain_error("convolution_mean: empty output grid");

  const double tmax = support_radius(f);
  const double t0 = f.radii().front();
  const double All = angular_p_factor(m, ell, 2.0);
  const double sector_sign = (ell % 2 == 0) ? 1.0 : -1.0;  // from g-check

  // Nodes of the t-integral: the part of f's grid inside its support.
  std::vector<double> tn;
  std::vector<complex> fbar;
  for (std::size_t i = 0; i < f.radii().size(); ++i) {
    if (f.radii()[i] > tmax * (1.0 + 1e-12)) break;
    tn.push_back(f.radii()[i]);
    fbar.push_back(std::conj(f.values()[i]));
  }
  if (tn.size() < 4)
    throw domain_error("convolution_mean: profile support too small");

  std::vector<complex> out(r_out.size());

  if (m % 2 == 1) {
    // Odd dimension: the angular weight is a polynomial in the chord length,
    // so K reduces to differences of cumulative moments of g.
    const int n = (m - 3) / 2;
    std::vector<int> ks;
    if (ell == 0)
      for (int k = 0; k <= 2 * n; ++k) ks.push_back(1 + 2 * k);
    else if (ell == 1)
      ks = {0, 2};
    else
      ks = {-1, 1, 3};
    const double wmax = r_out.back() + tmax;
    MomentTable Q(g, ks, wmax);
    const double angular_ratio = sphere_area(m - 1) / sphere_area(m);

    auto chord_K = [&](double r, double t) -> complex {
      const double lo = std::abs(r - t);
      const double hi = r + t;
      if (ell == 1) {
        const double A = r * r - t * t;
        return (A * Q.delta(0, lo, hi) - Q.delta(2, lo, hi)) /
               (4.0 * r * t * t);
      }
      if (ell == 2) {
        const double A = r * r - t * t;
        return 3.0 / (16.0 * r * t * t * t) *
                   (A * A * Q.delta(-1, lo, hi) - 2.0 * A * Q.delta(1, lo, hi) +
                    Q.delta(3, lo, hi)) -
               Q.delta(1, lo, hi) / (4.0 * r * t);
      }
      const std::vector<double> poly = chord_weight_poly(hi * hi, lo * lo, n);
      complex s{0.0, 0.0};
      for (std::size_t k = 0; k < poly.size(); ++k)
        s += poly[k] * Q.delta(1 + 2 * int(k), lo, hi);
      return angular_ratio * s / (std::pow(2.0 * r * t, 2 * n) * r * t);
    };

    for (std::size_t ir = 0; ir < r_out.size(); ++ir) {
      const double r = r_out[ir];
      std::vector<complex> fs(tn.size());
      for (std::size_t i = 0; i < tn.size(); ++i)
        fs[i] = fbar[i] * std::pow(tn[i], m - 1) * chord_K(r, tn[i]);
      complex body = PiecewiseCubic(tn, fs).integrate();
      complex head = integrate_gl(
          [&](double t) {
            return std::conj(f.eval(t)) * std::pow(t, m - 1) * chord_K(r, t);
          },
          0.0, t0, 8);
      out[ir] = All * sector_sign * (head + body);
    }
  } else {
    // Even dimension (ell = 0): half-integer angular weight, quadrature in
    // the polar angle.  The t-grid is thinned; the integrand is smooth.
    std::vector<double> ts;
    std::vector<complex> fb;
    const std::size_t stride = std::max<std::size_t>(1, tn.size() / 400);
    for (std::size_t i = 0; i < tn.size(); i += stride) {
      ts.push_back(tn[i]);
      fb.push_back(fbar[i]);
    }
    if (ts.back() != tn.back()) {
      ts.push_back(tn.back());
      fb.push_back(fbar.back());
    }
    const QuadRule th = gauss_legendre_ab(theta_order, 0.0, pi);
    std::vector<double> sin_half(th.x.size()), weight(th.x.size());
    for (std::size_t q = 0; q < th.x.size(); ++q) {
      sin_half[q] = std::sin(0.5 * th.x[q]);
      weight[q] = th.w[q] * std::pow(std::sin(th.x[q]), m - 2);
    }
    auto theta_K = [&](double r, double t) -> complex {
      const double d2 = (r - t) * (r - t);
      complex s{0.0, 0.0};
      for (std::size_t q = 0; q < th.x.size(); ++q) {
        const double w =
            std::sqrt(d2 + 4.0 * r * t * sin_half[q] * sin_half[q]);
        s += weight[q] * g.eval(w);
      }
      return s;
    };
    for (std::size_t ir = 0; ir < r_out.size(); ++ir) {
      const double r = r_out[ir];
      std::vector<complex> fs(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i)
        fs[i] = fb[i] * std::pow(ts[i], m - 1) * theta_K(r, ts[i]);
      complex body = PiecewiseCubic(ts, fs).integrate();
      complex head = integrate_gl(
          [&](double t) {
            return std::conj(f.eval(t)) * std::pow(t, m - 1) * theta_K(r, t);
          },
          0.0, ts.front(), 6);
      out[ir] = sphere_area(m - 1) * (head + body);
    }
  }

  const double delta = std::min(f.decay_exponent(), g.decay_exponent());
  return RadialProfile(m, 0, delta, r_out, out);
}

RadialProfile tilde_mean(const RadialProfile& M) {
  const auto& r = M.radii();
  std::vector<double> xs;
  xs.reserve(r.size() + 1);
  xs.push_back(0.0);
  xs.insert(xs.end(), r.begin(), r.end());
  std::vector<complex> h(xs.size());
  h[0] = complex{0.0, 0.0};
  for (std::size_t i = 0; i < r.size(); ++i) h[i + 1] = r[i] * M.values()[i];
  PiecewiseCubic pc(xs, h);
  std::vector<complex> P = pc.prefix_integrals();
  const complex total = P.back();
  std::vector<complex> Mt(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) Mt[i] = total - P[i + 1];
  return RadialProfile(M.dimension(), 0, M.decay_exponent() + 1.0, r, Mt);
}

namespace {

// m = 3: 4 pi int_0^inf j_ell(rho r) u(r) r^2 dr.  Below rho * r = 1/2 the
// spherical Bessel factor is evaluated directly (no oscillation there); above,
// j_ell is split into sin/cos components with slowly varying amplitudes and
// each piece is integrated by the Filon rule, so accuracy is independent of
// how many wavelengths fit between grid nodes.
complex transform_m3(const RadialProfile& u, double rho) {
  const int ell = u.sector();
  const auto& r = u.radii();
  const double rmax = support_radius(u, 1e-15);
  const double rstar = std::min(0.5 / rho, rmax);

  complex head = integrate_gl(
      [&](double t) {
        return u.eval(t) * t * t * gsl_sf_bessel_jl(ell, rho * t);
      },
      0.0, r.front(), 8);

  complex partA{0.0, 0.0};
  std::vector<double> xs;
  std::vector<complex> fs;
  for (std::size_t i = 0; i < r.size() && r[i] < rstar; ++i) {
    xs.push_back(r[i]);
    fs.push_back(u.values()[i] * r[i] * r[i] *
                 gsl_sf_bessel_jl(ell, rho * r[i]));
  }
  if (xs.size() >= 4) {
    partA = PiecewiseCubic(xs, fs).integrate();
  } else {
    xs.clear();
    partA = integrate_adaptive(
        [&](double t) {
          return u.eval(t) * t * t * gsl_sf_bessel_jl(ell, rho * t);
        },
        r.front(), rstar, 1e-11);
  }
  const double cut = xs.empty() ? rstar : xs.back();
  if (cut >= rmax * (1.0 - 1e-14)) return 4.0 * pi * (head + partA);

  // Amplitudes of j_ell(x) = S(x) sin x + C(x) cos x.
  auto S_amp = [&](double x) -> double {
    if (ell == 0) return 1.0 / x;
    if (ell == 1) return 1.0 / (x * x);
    return 3.0 / (x * x * x) - 1.0 / x;
  };
  auto C_amp = [&](double x) -> double {
    if (ell == 0) return 0.0;
    if (ell == 1) return -1.0 / x;
    return -3.0 / (x * x);
  };

  std::vector<double> xb{cut};
  for (double ri : r)
    if (ri > cut && ri <= rmax * (1.0 + 1e-12)) xb.push_back(ri);
  std::vector<complex> fsin(xb.size()), fcos(xb.size());
  for (std::size_t i = 0; i < xb.size(); ++i) {
    const complex ui = u.eval(xb[i]);
    fsin[i] = ui * xb[i] * xb[i] * S_amp(rho * xb[i]);
    fcos[i] = ui * xb[i] * xb[i] * C_amp(rho * xb[i]);
  }
  complex partB = PiecewiseCubic(xb, fsin).integrate_sin(rho);
  if (ell > 0) partB += PiecewiseCubic(xb, fcos).integrate_cos(rho);
  return 4.0 * pi * (head + partA + partB);
}

// m >= 4: panelized Gauss quadrature against J_{ell+m/2-1}; one panel spans
// about half a wavelength, so the order-12 rule resolves the oscillation.
complex transform_bessel(const RadialProfile& u, double rho) {
  const int m = u.dimension();
  const int ell = u.sector();
  const double nu = ell + 0.5 * m - 1.0;
  const bool integer_nu = (std::abs(nu - std::round(nu)) < 1e-12);
  auto bessel = [&](double x) {
    return integer_nu ? gsl_sf_bessel_Jn(int(std::round(nu)), x)
                      : gsl_sf_bessel_Jnu(nu, x);
  };
  const auto& r = u.radii();
  const double rmax = support_radius(u, 1e-15);
  const double Z = rho * rmax;
  if (Z > 1e4 * pi)
    throw range_error("sector_transform: rho * support too oscillatory");
  auto f = [&](double t) {
    return u.eval(t) * std::pow(t, 0.5 * m) * bessel(rho * t);
  };
  complex head = integrate_gl(f, 0.0, r.front(), 8);
  const int panels = std::max(16, int(2.0 * Z / pi) + 1);
  complex body{0.0, 0.0};
  for (int k = 0; k < panels; ++k) {
    const double a = r.front() + (rmax - r.front()) * k / panels;
    const double b = r.front() + (rmax - r.front()) * (k + 1) / panels;
    body += integrate_gl(f, a, b, 12);
  }
  return std::pow(2.0 * pi, 0.5 * m) * std::pow(rho, 1.0 - 0.5 * m) *
         (head + body);
}

}  // namespace

complex sector_transform(const RadialProfile& u, double rho) {
  if (rho < 0.0) throw domain_error("sector_transform: need rho >= 0");
  if (rho == 0.0) {
    if (u.sector() > 0) return complex{0.0, 0.0};
    return sphere_area(u.dimension()) * integrate_radial(u);
  }
  if (u.dimension() == 3) return transform_m3(u, rho);
  return transform_bessel(u, rho);
}

RadialProfile apply_fourier_multiplier(const RadialProfile& u,
                                       const std::function<double(double)>& F,
                                       const std::vector<double>& rho_grid) {
  std::vector<complex> uh(rho_grid.size());
  for (std::size_t i = 0; i < rho_grid.size(); ++i)
    uh[i] = F(rho_grid[i]) * sector_transform(u, rho_grid[i]);
  RadialProfile mult(u.dimension(), u.sector(), 0.0, rho_grid, uh);
  const double inv_norm = std::pow(2.0 * pi, -u.dimension());
  std::vector<complex> w(u.radii().size());
  for (std::size_t i = 0; i < u.radii().size(); ++i)
    w[i] = inv_norm * sector_transform(mult, u.radii()[i]);
  return RadialProfile(u.dimension(), u.sector(), u.decay_exponent(),
                       u.radii(), w);
}

complex pairing_spectral(const RadialProfile& v, const RadialProfile& u,
                         double lambda) {
  if (v.dimension() != u.dimension() || v.sector() != u.sector())
    throw domain_error("pairing_spectral: mismatched dimension or sector");
  if (lambda <= 0.0) throw domain_error("pairing_spectral: need lambda > 0");
  const int m = v.dimension();
  const complex tv = sector_transform(v, lambda);
  const complex tu = sector_transform(u, lambda);
  const complex pref = std::pow(lambda, m - 2) * iu /
                       (2.0 * std::pow(2.0 * pi, m - 1));
  return pref * angular_p_factor(m, v.sector(), 2.0) * std::conj(tv) * tu;
}

RadialProfile pairing_mean(const RadialProfile& v, const RadialProfile& u,
                           int n_out, double rmax) {
  double R = rmax;
  if (R <= 0.0) R = support_radius(v) + support_radius(u);
  std::vector<double> r_out(n_out);
  for (int i = 0; i < n_out; ++i) r_out[i] = R * (i + 1.0) / n_out;
  return convolution_mean(v, u, r_out);
}

complex pairing_representation_odd(const RadialProfile& v,
                                   const RadialProfile& u, double lambda) {
  const int m = v.dimension();
  if (m % 2 == 0)
    throw domain_error("pairing_representation_odd: need odd dimension");
  if (lambda <= 0.0)
    throw domain_error("pairing_representation_odd: need lambda > 0");
  const RadialProfile M = pairing_mean(v, u);
  const std::vector<complex> C = odd_kernel_coefficients(m);

  std::vector<double> xs;
  xs.reserve(M.radii().size() + 1);
  xs.push_back(0.0);
  xs.insert(xs.end(), M.radii().begin(), M.radii().end());

  complex total{0.0, 0.0};
  double lam_pow = 1.0;
  for (std::size_t j = 0; j < C.size(); ++j) {
    std::vector<complex> fs(xs.size());
    fs[0] = complex{0.0, 0.0};
    for (std::size_t i = 1; i < xs.size(); ++i)
      fs[i] = std::pow(xs[i], 1.0 + j) * M.values()[i - 1];
    PiecewiseCubic pc(xs, fs);
    const complex Gj = (j % 2 == 0) ? -2.0 * iu * pc.integrate_sin(lambda)
                                    : 2.0 * pc.integrate_cos(lambda);
    const double sgn = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^{j+1}
    total += sgn * sphere_area(m) * C[j] * lam_pow * Gj;
    lam_pow *= lambda;
  }
  return total;
}

complex pairing_representation_even(const RadialProfile& v,
                                    const RadialProfile& u, double lambda,
                                    bool tilde_j0) {
  const int m = v.dimension();
  if (m % 2 != 0)
    throw domain_error("pairing_representation_even: need even dimension");
  if (lambda <= 0.0)
    throw domain_error("pairing_representation_even: need lambda > 0");
  const RadialProfile M = pairing_mean(v, u);
  const int nu = (m - 2) / 2;

  std::vector<double> xs;
  xs.reserve(M.radii().size() + 1);
  xs.push_back(0.0);
  xs.insert(xs.end(), M.radii().begin(), M.radii().end());

  complex total{0.0, 0.0};
  double lam_pow = 1.0;
  for (int j = 0; j <= nu; ++j) {
    const SuperpositionRule rule = make_superposition_rule(m, j);
    const double sgn = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^{j+1}
    if (j == 0 && tilde_j0) {
      const RadialProfile Mt = tilde_mean(M);
      std::vector<complex> fs(xs.size());
      fs[0] = Mt.eval(0.0);
      for (std::size_t i = 1; i < xs.size(); ++i) fs[i] = Mt.values()[i - 1];
      PiecewiseCubic pc(xs, fs);
      total += iu * superposition_functional(rule, [&](double a) {
                 const double mu = lambda * (1.0 + 2.0 * a);
                 return mu * 2.0 * pc.integrate_cos(mu);
               });
    } else {
      std::vector<complex> fs(xs.size());
      fs[0] = complex{0.0, 0.0};
      for (std::size_t i = 1; i < xs.size(); ++i)
        fs[i] = std::pow(xs[i], 1.0 + j) * M.values()[i - 1];
      PiecewiseCubic pc(xs, fs);
      total += sgn * superposition_functional(rule, [&](double a) {
                 const double mu = lambda * (1.0 + 2.0 * a);
                 const complex G = (j % 2 == 0)
                                       ? -2.0 * iu * pc.integrate_sin(mu)
                                       : 2.0 * pc.integrate_cos(mu);
                 return lam_pow * G;
               });
    }
    lam_pow *= lambda;
  }
  return total;
}

}  // namespace ts
