#include "threshscatter/waveop.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "threshscatter/means.hpp"
#include "threshscatter/quadrature.hpp"

namespace ts {

namespace {

/// Largest radius at which the profile is still non-negligible.
double support_radius(const RadialProfile& p) {
  const auto& r = p.radii();
  const auto& v = p.values();
  double vmax = 0.0;
  for (const complex& z : v) vmax = std::max(vmax, std::abs(z));
  if (vmax == 0.0) return r.front();
  std::size_t last = v.size() - 1;
  while (last > 0 && std::abs(v[last]) <= 1e-13 * vmax) --last;
  return r[last];
}

RadialProfile zero_like(const RadialProfile& shape) {
  return RadialProfile(shape.dimension(), shape.sector(),
                       shape.decay_exponent(), shape.radii(),
                       std::vector<complex>(shape.radii().size(),
                                            complex{0.0, 0.0}));
}

/// Grid of M with a prepended origin node, multiplied by r^k.
std::pair<std::vector<double>, std::vector<complex>> mean_times_power(
    const RadialProfile& M, int k) {
  const auto& rm = M.radii();
  std::vector<double> xs(rm.size() + 1);
  std::vector<complex> fs(rm.size() + 1);
  xs[0] = 0.0;
  fs[0] = (k == 0) ? M.eval(0.0) : complex{0.0, 0.0};
  for (std::size_t i = 0; i < rm.size(); ++i) {
    xs[i + 1] = rm[i];
    fs[i + 1] = std::pow(rm[i], k) * M.values()[i];
  }
  return {std::move(xs), std::move(fs)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Cutoff
// ---------------------------------------------------------------------------

double CutoffSpec::value(double lam) const {
  const double half = 0.5 * lambda0;
  if (lam <= half) return 1.0;
  if (lam >= lambda0) return 0.0;
  const double t = (lam - half) / half;
  const double t2 = t * t;
  return 1.0 - t2 * t2 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
}

double CutoffSpec::derivative(double lam) const {
  const double half = 0.5 * lambda0;
  if (lam <= half || lam >= lambda0) return 0.0;
  const double t = (lam - half) / half;
  const double omt = 1.0 - t;
  return -140.0 * t * t * t * omt * omt * omt / half;
}

// ---------------------------------------------------------------------------
// CutoffKernel
// ---------------------------------------------------------------------------

CutoffKernel::CutoffKernel(const RadialProfile& w, const RadialProfile& u,
                           const CutoffSpec& cutoff, K0Route route,
                           double rho_max, int lambda_nodes)
    : cutoff_(cutoff), route_(route), M_(pairing_mean(w, u)) {
  auto [x0, m0] = mean_times_power(M_, 0);
  auto [x1, m1] = mean_times_power(M_, 1);
  const PiecewiseCubic pc0(x0, m0);
  const PiecewiseCubic pc1(x1, m1);
  // (1/pi) int_R M dr; M is even, so this is twice the half-line integral
  // over pi.  The same parity makes int_R r M dr vanish identically, which
  // the sine-transform below encodes exactly: G(0) = 0 by construction.
  mass_ = (2.0 / pi) * pc0.integrate();

  const int nl = std::max(64, lambda_nodes);
  std::vector<double> lam(nl);
  std::vector<complex> fg(nl), dfg, fh, dfh;
  const bool need_parts = route_ == K0Route::parts;
  const bool need_sub = route_ == K0Route::subtracted;
  if (need_parts) dfg.resize(nl);
  if (need_sub) {
    fh.resize(nl);
    dfh.resize(nl);
  }
  PiecewiseCubic pc2;
  if (need_parts) {
    auto [x2, m2] = mean_times_power(M_, 2);
    pc2 = PiecewiseCubic(x2, m2);
  }
  for (int i = 0; i < nl; ++i) {
    const double la = cutoff_.lambda0 * double(i) / double(nl - 1);
    lam[i] = la;
    const double F = cutoff_.value(la);
    const double dF = cutoff_.derivative(la);
    const complex G = -2.0 * iu * pc1.integrate_sin(la);
    fg[i] = F * G;
    if (need_parts) {
      const complex dG = -2.0 * iu * pc2.integrate_cos(la);
      dfg[i] = dF * G + F * dG;
    }
    if (need_sub) {
      const complex H = 2.0 * pc0.integrate_cos(la);
      fh[i] = F * H;
      dfh[i] = dF * H;
    }
  }
  fg_ = PiecewiseCubic(lam, fg);
  if (need_parts) dfg_ = PiecewiseCubic(lam, dfg);
  if (need_sub) {
    fh_ = PiecewiseCubic(lam, fh);
    dfh_ = PiecewiseCubic(lam, dfh);
  }

  // Sample K0 on a uniform radius grid and tabulate the prefix integrals of
  // K0 and w^2 K0 consumed by the radial block application.
  rho_max_ = rho_max > 0.0 ? rho_max : x0.back() + 40.0;
  rho_max_ = std::max(rho_max_, 10.0);
  const double step =
      std::min(0.25, 2.0 * pi / (40.0 * std::max(cutoff_.lambda0, 1e-6)));
  const int nw = int(rho_max_ / step) + 2;
  std::vector<double> wg(nw);
  std::vector<complex> k0(nw), w2k0(nw);
  for (int k = 0; k < nw; ++k) {
    wg[k] = step * double(k);
    k0[k] = value(wg[k]);
    w2k0[k] = wg[k] * wg[k] * k0[k];
  }
  rho_max_ = wg.back();
  J0_ = CubicSpline(wg, PiecewiseCubic(wg, k0).prefix_integrals());
  J2_ = CubicSpline(wg, PiecewiseCubic(wg, w2k0).prefix_integrals());
}

complex CutoffKernel::direct_value(double rho) const {
  return fg_.integrate_exp(rho) / (2.0 * pi);
}

complex CutoffKernel::value(double rho) const {
  switch (route_) {
    case K0Route::direct:
      return direct_value(rho);
    case K0Route::parts:
      // Division by rho: fall back to the direct form near the origin.
      if (rho < 1.0) return direct_value(rho);
      return iu / (2.0 * pi * rho) * dfg_.integrate_exp(rho);
    case K0Route::subtracted: {
      const complex tail =
          iu * rho * fh_.integrate_exp(rho) + dfh_.integrate_exp(rho);
      return -0.5 * iu * mass_ - iu / (2.0 * pi) * tail;
    }
  }
  return complex{0.0, 0.0};
}

complex CutoffKernel::prefix0(double rho) const {
  return J0_(std::clamp(rho, 0.0, rho_max_));
}

complex CutoffKernel::prefix2(double rho) const {
  return J2_(std::clamp(rho, 0.0, rho_max_));
}

// ---------------------------------------------------------------------------
// Block application
// ---------------------------------------------------------------------------

RadialProfile apply_singular_block(const RadialProfile& chi, complex coef,
                                   const CutoffKernel& kernel,
                                   const std::vector<double>& s_out) {
  const int ell = chi.sector();
  if (ell > 1)
    throw domain_error("apply_singular_block: sectors 0 and 1 only");
  const auto& t = chi.radii();
  const auto& cv = chi.values();
  double cmax = 0.0;
  for (const complex& z : cv) cmax = std::max(cmax, std::abs(z));
  std::size_t nt = t.size();
  while (nt > 2 && std::abs(cv[nt - 1]) <= 1e-14 * cmax) --nt;
  const std::vector<double> ts(t.begin(), t.begin() + nt);

  auto chord = [&](double s, double tt) -> complex {
    const complex dj0 =
        kernel.prefix0(s + tt) - kernel.prefix0(std::abs(s - tt));
    if (ell == 0) return tt * dj0;
    const complex dj2 =
        kernel.prefix2(s + tt) - kernel.prefix2(std::abs(s - tt));
    return (s * s + tt * tt) * dj0 - dj2;
  };

  std::vector<complex> out(s_out.size());
  std::vector<complex> g(nt);
  for (std::size_t i = 0; i < s_out.size(); ++i) {
    const double s = s_out[i];
    for (std::size_t k = 0; k < nt; ++k) g[k] = cv[k] * chord(s, ts[k]);
    complex acc = PiecewiseCubic(ts, g).integrate();
    acc += integrate_gl(
        [&](double tt) { return chi.eval(tt) * chord(s, tt); }, 0.0,
        ts.front(), 8);
    out[i] = (ell == 0) ? coef * acc / s : coef * acc / (2.0 * s * s);
  }
  return RadialProfile(3, ell, 1.0, s_out, std::move(out));
}

// ---------------------------------------------------------------------------
// First kind
// ---------------------------------------------------------------------------

RadialProfile FirstKindOperator::apply(const RadialProfile& u) const {
  if (u.sector() != chi.sector()) return zero_like(chi);
  const CutoffKernel ker(chi, u, cutoff, K0Route::direct,
                         chi.radii().back() + support_radius(chi));
  return apply_singular_block(chi, a * iu, ker, chi.radii());
}

RadialProfile FirstKindOperator::apply_corrected(const RadialProfile& u) const {
  RadialProfile zs = apply(u);
  if (u.sector() != chi.sector()) return zs;
  const complex c = a * inner_product(psi, u);
  auto& vals = zs.values();
  const auto& pv = phi_c.values();
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += c * pv[i];
  zs.refresh();
  return zs;
}

complex FirstKindOperator::boundary_value(const RadialProfile& u) const {
  if (u.sector() != chi.sector()) return complex{0.0, 0.0};
  const RadialProfile M = pairing_mean(chi, u);
  auto [xs, fs] = mean_times_power(M, 0);
  return (2.0 / pi) * PiecewiseCubic(xs, fs).integrate();
}

complex FirstKindOperator::boundary_reference(const RadialProfile& u) const {
  if (u.sector() != psi.sector()) return complex{0.0, 0.0};
  return inner_product(psi, u);
}

FirstKindOperator make_first_kind_operator(const RadialProfile& V,
                                           const CanonicalResonance& canon,
                                           const CutoffSpec& cutoff) {
  FirstKindOperator op;
  op.V = V;
  op.phi_c = canon.phi_c;
  op.chi = multiply_profiles(canon.phi_c, V);
  op.psi = fractional_integral(op.chi, 1.0);
  op.a = canon.transmission;
  op.cutoff = cutoff;
  return op;
}

// ---------------------------------------------------------------------------
// Second kind
// ---------------------------------------------------------------------------

RadialProfile SecondKindOperator::apply(const RadialProfile& u) const {
  if (phi.empty())
    throw domain_error("second-kind operator needs bound directions");
  if (u.sector() != phi.front().sector()) return zero_like(chi.front());
  RadialProfile total = zero_like(chi.front());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const CutoffKernel ker(psi[j], u, cutoff, K0Route::direct,
                           chi[j].radii().back() + support_radius(chi[j]));
    const RadialProfile block =
        apply_singular_block(chi[j], -iu, ker, chi[j].radii());
    auto& vals = total.values();
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] += block.values()[i];
  }
  total.refresh();
  return total;
}

RadialProfile SecondKindOperator::apply_corrected(
    const RadialProfile& u) const {
  RadialProfile out = apply(u);
  if (u.sector() != phi.front().sector()) return out;
  auto& vals = out.values();
  for (const RadialProfile& pj : phi) {
    const complex c = inner_product(pj, u);
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] += c * pj.values()[i];
  }
  out.refresh();
  return out;
}

SecondKindOperator make_second_kind_operator(
    const RadialProfile& V, const std::vector<RadialProfile>& bound_states,
    const CutoffSpec& cutoff) {
  if (bound_states.empty())
    throw domain_error("second-kind operator needs bound directions");
  SecondKindOperator op;
  op.V = V;
  op.cutoff = cutoff;
  for (const RadialProfile& b : bound_states) {
    RadialProfile pn = b;
    const double nb = norm_lp(pn, 2.0);
    if (nb <= 0.0) throw domain_error("bound direction with zero norm");
    for (complex& z : pn.values()) z /= nb;
    pn.refresh();
    op.chi.push_back(multiply_profiles(pn, V));
    op.psi.push_back(fractional_integral(op.chi.back(), 1.0));
    op.phi.push_back(std::move(pn));
  }
  return op;
}

complex second_kind_weight(const RadialProfile& V, const RadialProfile& phi_j,
                           const RadialProfile& phi_k) {
  if (phi_j.sector() != 1 || phi_k.sector() != 1)
    throw domain_error("second_kind_weight: ell = 1 directions expected");
  auto dipole = [&](const RadialProfile& p) -> complex {
    const RadialProfile vp = multiply_profiles(p, V);
    const auto& r = vp.radii();
    std::vector<complex> f(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      f[i] = vp.values()[i] * r[i] * r[i] * r[i];
    complex acc = PiecewiseCubic(r, f).integrate();
    acc += integrate_gl(
        [&](double s) { return vp.eval(s) * s * s * s; }, 0.0, r.front(), 8);
    return acc;
  };
  // On the ell = 1 sector the quadratic-kernel smoothing operator is
  // rank-one, (D_3 g)(r) = -(r/9) int g(s) s^3 ds, so the weight collapses
  // to a product of dipole moments with the angular factor 4 pi / 3:
  // a_jk = -(4/27) [int V phi_j r^3 dr] [int V phi_k s^3 ds].
  return -(4.0 / 27.0) * std::conj(dipole(phi_j)) * dipole(phi_k);
}

RadialProfile apply_mixed_block(const RadialProfile& V,
                                const RadialProfile& phi_j,
                                const RadialProfile& phi_k,
                                const RadialProfile& u,
                                const CutoffSpec& cutoff) {
  const complex ajk = second_kind_weight(V, phi_j, phi_k);
  const RadialProfile chi_j = multiply_profiles(phi_j, V);
  const RadialProfile chi_k = multiply_profiles(phi_k, V);
  if (u.sector() != chi_k.sector()) return zero_like(chi_j);
  const CutoffKernel ker(chi_k, u, cutoff, K0Route::direct,
                         chi_j.radii().back() + support_radius(chi_j));
  return apply_singular_block(chi_j, -pi * ajk * iu, ker, chi_j.radii());
}

// ---------------------------------------------------------------------------
// Dilation probes
// ---------------------------------------------------------------------------

RadialProfile dilate_profile(const RadialProfile& u, double t) {
  if (!(t > 0.0)) throw domain_error("dilate_profile: scale must be positive");
  std::vector<double> r = u.radii();
  for (double& x : r) x *= t;
  return RadialProfile(u.dimension(), u.sector(), u.decay_exponent(),
                       std::move(r), u.values());
}

std::vector<double> default_probe_scales() {
  return {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
}

DilationProbe run_dilation_probe(
    const std::function<RadialProfile(const RadialProfile&)>& op,
    const RadialProfile& u, const std::vector<double>& scales) {
  DilationProbe probe;
  probe.scales = scales;
  for (double t : scales) {
    probe.inputs.push_back(dilate_profile(u, t));
    probe.outputs.push_back(op(probe.inputs.back()));
  }
  return probe;
}

ProbeResult assess_probe(const DilationProbe& probe, double p,
                         double slope_threshold) {
  if (probe.scales.size() < 2 || probe.scales.size() != probe.inputs.size() ||
      probe.scales.size() != probe.outputs.size())
    throw domain_error("assess_probe: need at least two matched scales");
  ProbeResult res;
  res.p = p;
  for (std::size_t i = 0; i < probe.scales.size(); ++i) {
    const double den = norm_lp(probe.inputs[i], p);
    res.ratios.push_back(norm_lp(probe.outputs[i], p) / den);
  }
  double lo = res.ratios[0], hi = res.ratios[0];
  for (double v : res.ratios) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  res.spread = lo > 0.0 ? hi / lo : 0.0;
  // Log-log slope over the top three scales (growth is asymptotic; the small
  // scales carry transient contributions from the kernel width).
  const std::size_t k0 = probe.scales.size() > 3 ? probe.scales.size() - 3 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (std::size_t i = k0; i < probe.scales.size(); ++i) {
    const double x = std::log(probe.scales[i]);
    const double y = std::log(std::max(res.ratios[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  res.growing = res.slope > slope_threshold;
  return res;
}

// ---------------------------------------------------------------------------
// Dimension-dependent constants
// ---------------------------------------------------------------------------

namespace {
double even_weight_integral(int m, int j) {
  return integrate_to_infinity(
             [&](double x) {
               return complex{std::pow(x * x - 1.0, j) *
                                  std::pow(x * x + 1.0, -double(m - 1)),
                              0.0};
             },
             1.0)
      .real();
}
}  // namespace

double dm_constant(int m) {
  if (m < 3) throw domain_error("dm_constant: m >= 3 required");
  if (m % 2 == 1)
    return gamma_fn(0.5 * (m - 2)) / (std::sqrt(pi) * gamma_fn(0.5 * (m - 1)));
  const double pref = std::pow(2.0, m) * gamma_fn(0.5 * m) /
                      (std::sqrt(pi) * gamma_fn(0.5 * (m - 1)));
  return pref * even_weight_integral(m, 0);
}

double shin_identity_residual(int m) {
  if (m < 4 || m % 2 == 1)
    throw domain_error("shin_identity_residual: even m >= 4 required");
  const double numeric = even_weight_integral(m, 0);
  double sum = 0.0;
  for (int j = 1; j <= m - 2; ++j)
    sum += gamma_fn(double(j)) * std::pow(2.0, 1 - j) / gamma_fn(j + 0.5);
  const double closed = gamma_fn(m - 1.5) / (4.0 * gamma_fn(double(m - 1))) *
                        (std::sqrt(pi) - sum);
  return std::abs(numeric - closed);
}

std::vector<double> dmj_constants(int m) {
  if (m < 4 || m % 2 == 1)
    throw domain_error("dmj_constants: even m >= 4 required");
  const int nu = (m - 2) / 2;
  const double pref = std::pow(2.0, m) * gamma_fn(0.5 * m) /
                      (std::sqrt(pi) * gamma_fn(0.5 * (m - 1)));
  std::vector<double> out(nu + 1);
  for (int j = 0; j <= nu; ++j)
    out[j] = pref * binomial(nu, j) * even_weight_integral(m, j);
  return out;
}

Rational tilde_dm_odd(int m) {
  if (m < 3 || m % 2 == 0)
    throw domain_error("tilde_dm_odd: odd m >= 3 required");
  const int n = (m - 3) / 2;
  Rational total(0);
  for (int k = 0; k <= n; ++k) {
    std::int64_t den = 1;
    for (int i = 0; i < n + k; ++i) den *= 2;
    total = total + rational_binomial(n + k, k) / Rational(den);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Singular expansion structure
// ---------------------------------------------------------------------------

SingularExpansion singular_expansion(int m, ThresholdKind kind,
                                     double phi_norm) {
  if (m < 3) throw domain_error("singular_expansion: m >= 3 required");
  SingularExpansion se;
  se.m = m;
  se.kind = kind;
  auto add = [&](int p, bool lg, const char* form, complex c, bool known) {
    se.terms.push_back(SingularTerm{p, lg, form, c, known});
  };
  if (kind == ThresholdKind::regular) {
    se.absorbable = true;
    add(0, false, "remainder", complex{0.0, 0.0}, false);
    return se;
  }
  if (m == 3) {
    se.absorbable = false;
    if (kind == ThresholdKind::second_kind || kind == ThresholdKind::third_kind)
      add(-2, false, "projector", complex{0.0, 0.0}, false);
    if (kind == ThresholdKind::first_kind || kind == ThresholdKind::third_kind)
      add(-1, false, "rank-one", complex{0.0, 0.0}, false);
    add(0, false, "remainder", complex{0.0, 0.0}, false);
    return se;
  }
  if (kind != ThresholdKind::second_kind)
    throw domain_error(
        "singular_expansion: only eigenvalue-type thresholds occur for m > 3");
  if (m == 4 || (m % 2 == 0 && m < 6))
    throw domain_error("singular_expansion: structure not tabulated for m = 4");
  se.absorbable = (m % 2 == 1) || m >= 12;
  add(-2, false, "projector", complex{0.0, 0.0}, false);
  if (m == 5) {
    // Coefficient of the order -1 rank-one piece, proportional to the
    // squared zero-energy coupling of the normalized eigenfunction.
    add(-1, false, "rank-one", iu / (24.0 * pi * pi) * phi_norm * phi_norm,
        true);
  } else if (m == 6) {
    const double c = sphere_area(6) * phi_norm / std::pow(2.0 * pi, 6);
    add(0, true, "rank-one", complex{c * c, 0.0}, true);
  } else if (m % 2 == 0) {
    add(m - 6, true, "rank-one", complex{0.0, 0.0}, false);
  }
  add(0, false, "remainder", complex{0.0, 0.0}, false);
  return se;
}

}  // namespace ts
