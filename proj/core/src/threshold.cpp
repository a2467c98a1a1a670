#include "threshscatter/threshold.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "threshscatter/filon.hpp"
#include "threshscatter/quadrature.hpp"

namespace ts {

namespace {

// Zero-energy sector kernel of (-Delta)^{-1} on R^3.
double sector_green(int ell, double r, double s) {
  const double lo = std::min(r, s), hi = std::max(r, s);
  double ratio = 1.0;
  for (int k = 0; k < ell; ++k) ratio *= lo / hi;
  return ratio / ((2.0 * ell + 1.0) * hi);
}

std::vector<double> trapezoid_weights(const std::vector<double>& r) {
  const std::size_t n = r.size();
  std::vector<double> w(n);
  w[0] = 0.5 * (r[1] - r[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (r[i + 1] - r[i - 1]);
  w[n - 1] = 0.5 * (r[n - 1] - r[n - 2]);
  return w;
}

void require_radial_real_potential(const RadialProfile& V) {
  if (V.dimension() != 3)
    throw domain_error("threshold analysis: potentials live on R^3 here");
  if (V.sector() != 0)
    throw domain_error("threshold analysis: potential must be radial");
  if (!V.is_real(1e-10))
    throw domain_error("threshold analysis: potential must be real");
}

// Closed inverse pair used to calibrate the null threshold on a given grid:
// phi = r^ell (1+r^2)^{-(2ell+1)/2} solves the sector zero-energy equation
// with V = -(2ell+1)(2ell+3) / (1+r^2)^2.
double calibration_potential(int ell, double r) {
  const double p = 2.0 * ell + 1.0;
  return -p * (p + 2.0) / ((1.0 + r * r) * (1.0 + r * r));
}

double calibration_null_function(int ell, double r) {
  return std::pow(r, ell) * std::pow(1.0 + r * r, -(2.0 * ell + 1.0) / 2.0);
}

// Sum of a profile against V phi r^{k} dr over the grid plus the small-radius
// head; used by the moment functionals.
double moment_integral(const RadialProfile& V, const RadialProfile& phi,
                       int k, bool absolute) {
  const auto& r = phi.radii();
  std::vector<complex> f(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    complex val = V.eval(r[i]) * phi.values()[i] * std::pow(r[i], k);
    f[i] = absolute ? complex{std::abs(val), 0.0} : val;
  }
  complex head = integrate_gl(
      [&](double s) {
        complex val = V.eval(s) * phi.eval(s) * std::pow(s, k);
        return absolute ? complex{std::abs(val), 0.0} : val;
      },
      0.0, r.front(), 8);
  return (head + filon_integrate(r, f)).real();
}

RadialProfile add_scaled(const RadialProfile& a, const RadialProfile& b,
                         complex coef) {
  if (a.radii().size() != b.radii().size())
    throw domain_error("profile addition: grids differ");
  std::vector<complex> v(a.radii().size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = a.values()[i] + coef * b.values()[i];
  return RadialProfile(a.dimension(), a.sector(),
                       std::min(a.decay_exponent(), b.decay_exponent()),
                       a.radii(), std::move(v));
}

}  // namespace

double threshold_residual(const RadialProfile& V, const RadialProfile& phi) {
  require_radial_real_potential(V);
  const int ell = phi.sector();
  const auto& r = phi.radii();
  const std::size_t n = r.size();
  const std::vector<double> w = trapezoid_weights(r);
  std::vector<double> d(n), Vf(n);
  std::vector<complex> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = w[i] * r[i] * r[i];
    Vf[i] = V.eval(r[i]).real();
    u[i] = phi.values()[i];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    complex y = u[i];
    for (std::size_t j = 0; j < n; ++j)
      y += sector_green(ell, r[i], r[j]) * Vf[j] * d[j] * u[j];
    num += d[i] * std::norm(y);
    den += d[i] * std::norm(u[i]);
  }
  if (den == 0.0) throw domain_error("threshold_residual: zero candidate");
  return std::sqrt(num / den);
}

SectorNullSpace threshold_null_space(const RadialProfile& V, int ell,
                                     const ThresholdOptions& opts) {
  require_radial_real_potential(V);
  if (ell < 0 || ell > 2)
    throw domain_error("threshold_null_space: ell <= 2 supported");
  const std::vector<double> r = log_grid(opts.grid);
  const std::size_t n = r.size();
  const std::vector<double> w = trapezoid_weights(r);
  std::vector<double> d(n), sq(n), Vf(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = w[i] * r[i] * r[i];
    sq[i] = std::sqrt(d[i]);
    Vf[i] = V.eval(r[i]).real();
  }

  // Weight-symmetrized discretization S = D^{1/2} (I + G_ell V) D^{-1/2}.
  Eigen::MatrixXd S(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      S(i, j) = (i == j ? 1.0 : 0.0) +
                sector_green(ell, r[i], r[j]) * Vf[j] * sq[i] * sq[j];

  // Calibration: residual of the exact closed pair on this very grid.
  double cal_num = 0.0, cal_den = 0.0;
  {
    std::vector<double> vc(n), Vc(n);
    for (std::size_t i = 0; i < n; ++i) {
      vc[i] = calibration_null_function(ell, r[i]);
      Vc[i] = calibration_potential(ell, r[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double y = vc[i];
      for (std::size_t j = 0; j < n; ++j)
        y += sector_green(ell, r[i], r[j]) * Vc[j] * d[j] * vc[j];
      cal_num += d[i] * y * y;
      cal_den += d[i] * vc[i] * vc[i];
    }
  }
  SectorNullSpace out;
  out.ell = ell;
  out.calibration_residual = std::sqrt(cal_num / cal_den);
  out.tol = opts.tol_factor * std::max(out.calibration_residual, 1e-14);

  Eigen::MatrixXd StS = S.transpose() * S;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(StS);
  if (es.info() != Eigen::Success)
    throw accuracy_error("threshold_null_space: eigensolve failed", 1.0);

  const int keep = std::min<int>(8, int(n));
  for (int k = 0; k < keep; ++k)
    out.smallest_singular_values.push_back(
        std::sqrt(std::max(0.0, es.eigenvalues()(k))));

  for (int k = 0; k < int(n); ++k) {
    const double sigma = std::sqrt(std::max(0.0, es.eigenvalues()(k)));
    if (sigma >= opts.ambiguity_factor * out.tol) break;
    if (sigma >= out.tol)
      throw ambiguity_error(
          "threshold_null_space: singular value in the gray zone; refine the "
          "grid or adjust tolerances");
    if (int(out.vectors.size()) >= opts.max_vectors) break;
    Eigen::VectorXd v = es.eigenvectors().col(k);
    // Undo the symmetrization and fix the sign at the first large sample.
    std::vector<complex> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = complex{v(int(i)) / sq[i], 0.0};
    double smax = 0.0;
    for (const complex& x : phi) smax = std::max(smax, std::abs(x.real()));
    for (const complex& x : phi)
      if (std::abs(x.real()) > 0.5 * smax) {
        if (x.real() < 0.0)
          for (complex& y : phi) y = -y;
        break;
      }
    out.vectors.emplace_back(3, ell, double(ell + 1), r, std::move(phi));
  }
  return out;
}

NullVectorMoments null_vector_moments(const RadialProfile& V,
                                      const RadialProfile& phi) {
  require_radial_real_potential(V);
  NullVectorMoments mom;
  if (phi.sector() == 0) {
    mom.zeroth = 4.0 * pi * moment_integral(V, phi, 2, false);
    mom.zeroth_scale = 4.0 * pi * moment_integral(V, phi, 2, true);
  } else if (phi.sector() == 1) {
    mom.dipole = (4.0 * pi / 3.0) * moment_integral(V, phi, 3, false);
    mom.dipole_scale = (4.0 * pi / 3.0) * moment_integral(V, phi, 3, true);
  }
  return mom;
}

int moment_grade(const NullVectorMoments& mom, double rel_tol) {
  if (mom.zeroth_scale > 0.0 &&
      std::abs(mom.zeroth) > rel_tol * mom.zeroth_scale)
    return 0;
  if (mom.dipole_scale > 0.0 &&
      std::abs(mom.dipole) > rel_tol * mom.dipole_scale)
    return 1;
  return 2;
}

ThresholdClassification classify_threshold(const RadialProfile& V, int max_ell,
                                           const ThresholdOptions& opts) {
  ThresholdClassification cls;
  bool resonance = false, bound = false;
  for (int ell = 0; ell <= max_ell; ++ell) {
    SectorNullSpace ns = threshold_null_space(V, ell, opts);
    std::vector<NullVectorMoments> moms;
    for (const RadialProfile& phi : ns.vectors) {
      NullVectorMoments mom = null_vector_moments(V, phi);
      const int grade = moment_grade(mom, opts.moment_rel_tol);
      if (ell == 0 && grade == 0)
        resonance = true;
      else
        bound = true;
      moms.push_back(mom);
    }
    cls.sectors.push_back(std::move(ns));
    cls.moments.push_back(std::move(moms));
  }
  if (resonance && bound)
    cls.kind = ThresholdKind::third_kind;
  else if (resonance)
    cls.kind = ThresholdKind::first_kind;
  else if (bound)
    cls.kind = ThresholdKind::second_kind;
  else
    cls.kind = ThresholdKind::regular;
  return cls;
}

CanonicalResonance canonical_resonance(const RadialProfile& V,
                                       const SectorNullSpace& s_wave,
                                       double rel_tol) {
  require_radial_real_potential(V);
  if (s_wave.ell != 0)
    throw domain_error("canonical_resonance: needs the ell = 0 null space");
  int res_idx = -1;
  double res_strength = 0.0;
  std::vector<const RadialProfile*> bound;
  for (std::size_t k = 0; k < s_wave.vectors.size(); ++k) {
    NullVectorMoments mom = null_vector_moments(V, s_wave.vectors[k]);
    if (moment_grade(mom, rel_tol) == 0) {
      const double strength = std::abs(mom.zeroth) / mom.zeroth_scale;
      if (strength > res_strength) {
        res_strength = strength;
        res_idx = int(k);
      }
    } else {
      bound.push_back(&s_wave.vectors[k]);
    }
  }
  if (res_idx < 0)
    throw domain_error("canonical_resonance: no resonance direction present");
  const RadialProfile& phi = s_wave.vectors[res_idx];

  const RadialProfile Vphi = multiply_profiles(phi, V);
  const double q = -inner_product(Vphi, phi).real();  // -(V phi, phi)
  if (!(q > 0.0))
    throw domain_error("canonical_resonance: -(V phi, phi) must be positive");
  CanonicalResonance out{add_scaled(phi, phi, complex{1.0 / std::sqrt(q) - 1.0, 0.0}),
                         phi, complex{0.0, 0.0}, 0.0};

  // Bound-state projection of V D_2 V psi (L^2-orthonormalized directions).
  std::vector<RadialProfile> ortho;
  for (const RadialProfile* b : bound) {
    RadialProfile e = *b;
    for (const RadialProfile& prev : ortho)
      e = add_scaled(e, prev, -inner_product(prev, e));
    const double nn = std::sqrt(inner_product(e, e).real());
    if (nn < 1e-12) continue;
    e = add_scaled(e, e, complex{1.0 / nn - 1.0, 0.0});
    ortho.push_back(std::move(e));
  }
  const RadialProfile Vpsi = multiply_profiles(out.psi, V);
  const RadialProfile D2Vpsi = dj_operator(Vpsi, 2);
  const RadialProfile VD2Vpsi = multiply_profiles(D2Vpsi, V);
  out.phi_c = out.psi;
  for (const RadialProfile& e : ortho)
    out.phi_c = add_scaled(out.phi_c, e, inner_product(e, VD2Vpsi));
  const complex vdot = inner_product(V, out.phi_c);
  out.transmission = 4.0 * pi * iu / std::norm(vdot);
  out.tail_coefficient = fit_power_tail(out.psi).inverse_r;
  return out;
}

RadialProfile dj_operator(const RadialProfile& u, int j) {
  if (u.dimension() != 3 || u.sector() != 0)
    throw domain_error("dj_operator: radial profiles on R^3 only");
  if (j < 0 || j > 3) throw domain_error("dj_operator: j = 0..3");
  const auto& r = u.radii();
  const std::size_t n = r.size();

  // Prefix moments P_q(r_i) = int_0^{r_i} u s^q ds and tails for the q that
  // appear in the binomial split of (r+s)^{j+1} - |r-s|^{j+1}.
  std::map<int, std::pair<std::vector<complex>, complex>> tables;
  auto build = [&](int q) {
    if (tables.count(q)) return;
    std::vector<complex> f(n);
    for (std::size_t i = 0; i < n; ++i)
      f[i] = u.values()[i] * std::pow(r[i], q);
    std::vector<complex> P = PiecewiseCubic(r, f).prefix_integrals();
    complex head = integrate_gl(
        [&](double s) { return u.eval(s) * std::pow(s, q); }, 0.0, r.front(),
        8);
    for (complex& x : P) x += head;
    complex total = P.back();
    tables[q] = {std::move(P), total};
  };
  for (int k = 1; k <= j + 1; k += 2) {
    build(k + 1);
    build(j + 2 - k);
  }

  const double fact = factorial(j + 1);
  std::vector<complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    complex s{0.0, 0.0};
    for (int k = 1; k <= j + 1; k += 2) {
      const auto& pre = tables[k + 1];
      const auto& tail = tables[j + 2 - k];
      const complex P = pre.first[i];
      const complex T = tail.second - tail.first[i];
      s += binomial(j + 1, k) *
           (std::pow(r[i], j + 1 - k) * P + std::pow(r[i], k) * T);
    }
    out[i] = s / (fact * r[i]);
  }
  return RadialProfile(3, 0, 1.0 - j, r, std::move(out));
}

RadialProfile fractional_integral(const RadialProfile& u, double s) {
  if (u.dimension() != 3 || u.sector() > 1)
    throw domain_error("fractional_integral: sectors 0 and 1 on R^3 only");
  if (!(s > 0.0 && s < 3.0))
    throw domain_error("fractional_integral: need 0 < s < 3");
  const int ell = u.sector();
  const auto& r = u.radii();
  const std::size_t n = r.size();
  const double c3s = gamma_fn(0.5 * (3.0 - s)) /
                     (std::pow(2.0, s) * std::pow(pi, 1.5) * gamma_fn(0.5 * s));
  const double pref = 2.0 * pi * c3s;
  const bool log_case = std::abs(s - 1.0) < 1e-13;

  // k1 = int w^{s-2} dw over the chord range; for ell = 1 the P_1-weighted
  // angular average adds the w^s moment k2 and the polynomial (r^2 + t^2).
  auto k1_fn = [&](double sum, double dif) -> double {
    if (log_case) return std::log(sum / dif);
    return (std::pow(sum, s - 1.0) - std::pow(dif, s - 1.0)) / (s - 1.0);
  };
  auto kernel = [&](double rr, double t) -> double {
    const double sum = rr + t, dif = std::abs(rr - t);
    const double k1 = k1_fn(sum, dif);
    if (ell == 0) return k1;
    const double k2 =
        (std::pow(sum, s + 1.0) - std::pow(dif, s + 1.0)) / (s + 1.0);
    return ((rr * rr + t * t) * k1 - k2) / (2.0 * rr * t);
  };

  const double logstep = std::log(r.back() / r.front()) / double(n - 1);
  std::vector<complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rr = r[i];
    // Window of ~4 grid spacings around the kernel singularity: wide enough
    // for the local cubic fit of u, narrow enough that the fit stays sharp
    // where u varies on an O(1) scale.
    const double h = std::min(0.9 * rr, 4.0 * logstep * rr);
    const double wlo = rr - h, whi = rr + h;
    complex acc{0.0, 0.0};

    // [0, wlo], split into the sub-grid part and the small-radius head.
    if (wlo > r.front()) {
      std::vector<double> xs;
      std::vector<complex> fs;
      for (std::size_t k2 = 0; k2 < n && r[k2] < wlo; ++k2) {
        xs.push_back(r[k2]);
        fs.push_back(u.values()[k2] * r[k2] * kernel(rr, r[k2]));
      }
      xs.push_back(wlo);
      fs.push_back(u.eval(wlo) * wlo * kernel(rr, wlo));
      if (xs.size() >= 2) acc += PiecewiseCubic(xs, fs).integrate();
      acc += integrate_gl(
          [&](double t) { return u.eval(t) * t * kernel(rr, t); }, 0.0,
          r.front(), 8);
    } else {
      acc += integrate_gl(
          [&](double t) { return u.eval(t) * t * kernel(rr, t); }, 0.0,
          std::max(wlo, 0.0), 8);
    }

    // [whi, rmax].
    if (whi < r.back()) {
      std::vector<double> xs{whi};
      std::vector<complex> fs{u.eval(whi) * whi * kernel(rr, whi)};
      for (std::size_t k2 = 0; k2 < n; ++k2)
        if (r[k2] > whi) {
          xs.push_back(r[k2]);
          fs.push_back(u.values()[k2] * r[k2] * kernel(rr, r[k2]));
        }
      if (xs.size() >= 2) acc += PiecewiseCubic(xs, fs).integrate();
    }

    // Window [rr-h, rr+h]: local cubic of u times the kernel, with the
    // singular chord-power factors integrated by exact moments.
    {
      std::array<double, 4> tau{-h, -h / 3.0, h / 3.0, h};
      std::array<complex, 4> qv;
      for (int a = 0; a < 4; ++a) qv[a] = u.eval(rr + tau[a]);
      // Divided differences -> monomial coefficients of the cubic in tau.
      std::array<complex, 4> dd = qv;
      for (int level = 1; level < 4; ++level)
        for (int a = 3; a >= level; --a)
          dd[a] = (dd[a] - dd[a - 1]) / (tau[a] - tau[a - level]);
      std::array<complex, 4> ct{dd[0], 0.0, 0.0, 0.0};
      std::array<double, 4> prod{1.0, 0.0, 0.0, 0.0};
      for (int a = 1; a < 4; ++a) {
        std::array<double, 4> next{};
        for (int b = 0; b < a; ++b) {
          next[b + 1] += prod[b];
          next[b] -= prod[b] * tau[a - 1];
        }
        prod = next;
        for (int b = 0; b <= a; ++b) ct[b] += dd[a] * prod[b];
      }
      auto qpoly = [&](double t) {
        return ct[0] + t * (ct[1] + t * (ct[2] + t * ct[3]));
      };
      auto smooth1 = [&](double x) {
        return log_case ? std::log(x) : std::pow(x, s - 1.0) / (s - 1.0);
      };
      // Moments of tau^b against |tau|^{expo} over the window (odd b vanish).
      auto power_mom = [&](int b, double expo) {
        return 2.0 * std::pow(h, expo + b + 1) / (expo + b + 1);
      };
      auto log_mom = [&](int b) {
        return 2.0 * std::pow(h, b + 1) * (std::log(h) - 1.0 / (b + 1)) /
               (b + 1);
      };
      if (ell == 0) {
        // integrand u(t) t k1(rr, t) with t = rr + tau.
        std::array<complex, 5> e{};
        for (int b = 0; b < 4; ++b) {
          e[b] += ct[b] * rr;
          e[b + 1] += ct[b];
        }
        acc += integrate_gl(
            [&](double t) {
              return qpoly(t) * (rr + t) * smooth1(2.0 * rr + t);
            },
            -h, h, 8);
        for (int b = 0; b < 5; b += 2)
          acc -= e[b] * (log_case ? log_mom(b)
                                  : power_mom(b, s - 1.0) / (s - 1.0));
      } else {
        // integrand u(t) [(rr^2+t^2) k1 - k2] / (2 rr), t = rr + tau, where
        // k2 = ((2rr+tau)^{s+1} - |tau|^{s+1}) / (s+1).
        std::array<complex, 6> e{};
        for (int b = 0; b < 4; ++b) {
          e[b] += ct[b] * 2.0 * rr * rr;
          e[b + 1] += ct[b] * 2.0 * rr;
          e[b + 2] += ct[b];
        }
        acc += integrate_gl(
                   [&](double t) {
                     const double tt = rr + t;
                     return qpoly(t) *
                            ((rr * rr + tt * tt) * smooth1(2.0 * rr + t) -
                             std::pow(2.0 * rr + t, s + 1.0) / (s + 1.0));
                   },
                   -h, h, 8) /
               (2.0 * rr);
        for (int b = 0; b < 6; b += 2)
          acc -= e[b] *
                 (log_case ? log_mom(b) : power_mom(b, s - 1.0) / (s - 1.0)) /
                 (2.0 * rr);
        for (int b = 0; b < 4; b += 2)
          acc += ct[b] * power_mom(b, s + 1.0) / (s + 1.0) / (2.0 * rr);
      }
    }

    out[i] = pref * acc / rr;
  }
  return RadialProfile(3, ell, 3.0 - s, r, std::move(out));
}

TailFit fit_power_tail(const RadialProfile& f, double r_lo, double r_hi) {
  const auto& r = f.radii();
  if (r_lo <= 0.0) r_lo = 0.1 * r.back();
  if (r_hi <= 0.0) r_hi = 0.8 * r.back();
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, ss = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < r_lo || r[i] > r_hi) continue;
    const double x1 = 1.0 / r[i], x2 = x1 * x1;
    const double y = f.values()[i].real();
    a11 += x1 * x1;
    a12 += x1 * x2;
    a22 += x2 * x2;
    b1 += x1 * y;
    b2 += x2 * y;
    ss += y * y;
    ++count;
  }
  if (count < 4) throw domain_error("fit_power_tail: window has too few nodes");
  const double det = a11 * a22 - a12 * a12;
  if (std::abs(det) < 1e-30 * a11 * a22)
    throw accuracy_error("fit_power_tail: degenerate normal equations", 1.0);
  TailFit fit;
  fit.inverse_r = (b1 * a22 - b2 * a12) / det;
  fit.inverse_r2 = (a11 * b2 - a12 * b1) / det;
  double misfit = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < r_lo || r[i] > r_hi) continue;
    const double model = fit.inverse_r / r[i] + fit.inverse_r2 / (r[i] * r[i]);
    misfit += (f.values()[i].real() - model) * (f.values()[i].real() - model);
  }
  fit.residual = (ss > 0.0) ? std::sqrt(misfit / ss) : 0.0;
  return fit;
}

ManufacturedPair manufacture_potential(int ell, const GridSpec& grid,
                                       double blend_lo, double blend_hi) {
  if (ell < 0 || ell > 2) throw domain_error("manufacture_potential: ell <= 2");
  if (!(grid.rmin < blend_lo && blend_lo < blend_hi && blend_hi < grid.rmax))
    throw domain_error("manufacture_potential: blend window outside the grid");
  const double p = 2.0 * ell + 1.0;  // inner decay of h, also the tail power
  const double w1 = std::log(blend_lo), w2 = std::log(blend_hi);
  const double L = w2 - w1;

  auto inner_H = [&](double w, double& H, double& H1, double& H2) {
    const double r2 = std::exp(2.0 * w);
    const double sig = r2 / (1.0 + r2);
    H = -(p / 2.0) * std::log1p(r2);
    H1 = -p * sig;
    H2 = -2.0 * p * sig * (1.0 - sig);
  };
  double H1v, H1d, H1dd;
  inner_H(w1, H1v, H1d, H1dd);
  const double A = H1v + p * w1;  // outer line H = A - p w through (w1, H(w1))

  // Quintic Hermite coefficients in xi = (w - w1)/L.
  const double a0 = H1v, a1 = L * H1d, a2 = 0.5 * L * L * H1dd;
  const double y1 = A - p * w2, y1p = -p, y1pp = 0.0;
  const double b0 = y1 - a0 - a1 - a2;
  const double b1 = L * y1p - a1 - 2.0 * a2;
  const double b2 = L * L * y1pp - 2.0 * a2;
  const double a3 = 10.0 * b0 - 4.0 * b1 + 0.5 * b2;
  const double a4 = -15.0 * b0 + 7.0 * b1 - b2;
  const double a5 = 6.0 * b0 - 3.0 * b1 + 0.5 * b2;

  auto eval_H = [&](double w, double& H, double& Hp, double& Hpp) {
    if (w <= w1) {
      inner_H(w, H, Hp, Hpp);
    } else if (w >= w2) {
      H = A - p * w;
      Hp = -p;
      Hpp = 0.0;
    } else {
      const double xi = (w - w1) / L;
      H = a0 + xi * (a1 + xi * (a2 + xi * (a3 + xi * (a4 + xi * a5))));
      Hp = (a1 + xi * (2.0 * a2 +
                       xi * (3.0 * a3 + xi * (4.0 * a4 + xi * 5.0 * a5)))) /
           L;
      Hpp = (2.0 * a2 +
             xi * (6.0 * a3 + xi * (12.0 * a4 + xi * 20.0 * a5))) /
            (L * L);
    }
  };

  const std::vector<double> r = log_grid(grid);
  std::vector<complex> phi(r.size()), V(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double w = std::log(r[i]);
    double H, Hp, Hpp;
    eval_H(w, H, Hp, Hpp);
    phi[i] = std::pow(r[i], ell) * std::exp(H);
    const double val =
        (w >= w2) ? 0.0 : (Hp * Hp + Hpp + (2.0 * ell + 1.0) * Hp) / (r[i] * r[i]);
    V[i] = complex{val, 0.0};
  }
  ManufacturedPair out{RadialProfile(3, 0, 4.0, r, std::move(V)),
                       RadialProfile(3, ell, double(ell + 1), r, std::move(phi)),
                       std::exp(A), ell};
  return out;
}

}  // namespace ts
