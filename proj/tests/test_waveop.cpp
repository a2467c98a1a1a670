// Cutoff kernel routes, singular-block application, rank-one corrections,
// dilation probes, kernel-weight constants, and the singular-expansion
// tables.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "threshscatter/grid.hpp"
#include "threshscatter/means.hpp"
#include "threshscatter/quadrature.hpp"
#include "threshscatter/threshold.hpp"
#include "threshscatter/waveop.hpp"

using namespace ts;

namespace {

RadialProfile gaussian3(int ell, double center, double width) {
  const GridSpec g{1e-3, 30.0, 600};
  return RadialProfile::sample(3, ell, 0.0, log_grid(g), [&](double r) {
    const double rad = (ell == 0 ? 1.0 : r / (1.0 + r));
    const double z = (r - center) / width;
    return complex{rad * std::exp(-0.5 * z * z), 0.0};
  });
}

// The manufactured data are expensive (a dense eigensolve each), so the
// cases share one instance per sector.
struct FirstKindData {
  ManufacturedPair mk;
  SectorNullSpace sec;
  CanonicalResonance canon;
  FirstKindOperator zs;
};

const FirstKindData& first_kind_data() {
  static const FirstKindData d = [] {
    ManufacturedPair mk = manufacture_potential(0);
    SectorNullSpace sec = threshold_null_space(mk.V, 0);
    CanonicalResonance canon = canonical_resonance(mk.V, sec);
    FirstKindOperator zs = make_first_kind_operator(mk.V, canon);
    return FirstKindData{std::move(mk), std::move(sec), std::move(canon),
                         std::move(zs)};
  }();
  return d;
}

struct SecondKindData {
  ManufacturedPair mk;
  SectorNullSpace sec;
  SecondKindOperator zs1;
};

const SecondKindData& second_kind_data() {
  static const SecondKindData d = [] {
    ManufacturedPair mk = manufacture_potential(1);
    SectorNullSpace sec = threshold_null_space(mk.V, 1);
    SecondKindOperator zs1 = make_second_kind_operator(mk.V, sec.vectors);
    return SecondKindData{std::move(mk), std::move(sec), std::move(zs1)};
  }();
  return d;
}

}  // namespace

TEST_CASE("cutoff profile: plateau, support, and derivative") {
  const CutoffSpec F;
  CHECK(F.value(0.0) == 1.0);
  CHECK(F.value(0.25) == 1.0);
  CHECK(F.value(0.5) == 0.0);
  CHECK(F.value(0.7) == 0.0);
  const double mid = F.value(0.375);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  // Smooth joins: the derivative vanishes at both plateau edges.
  CHECK(F.derivative(0.25) == doctest::Approx(0.0));
  CHECK(F.derivative(0.5) == doctest::Approx(0.0));
  // Analytic derivative against central differences.
  for (double lam : {0.28, 0.36, 0.44, 0.48}) {
    const double h = 1e-6;
    const double fd = (F.value(lam + h) - F.value(lam - h)) / (2.0 * h);
    CHECK(F.derivative(lam) == doctest::Approx(fd).epsilon(1e-7));
  }
  // Monotone decrease across the ramp.
  CHECK(F.value(0.3) > F.value(0.4));
  CHECK(F.value(0.4) > F.value(0.45));
}

TEST_CASE("dilation acts exactly on p-norms") {
  const RadialProfile u = gaussian3(0, 1.0, 0.6);
  for (double p : {1.5, 2.0, 4.0}) {
    const double n1 = norm_lp(u, p);
    for (double t : {2.0, 8.0}) {
      const RadialProfile ut = dilate_profile(u, t);
      CHECK(norm_lp(ut, p) ==
            doctest::Approx(std::pow(t, 3.0 / p) * n1).epsilon(1e-12));
    }
  }
}

TEST_CASE("the three kernel routes agree pointwise") {
  const RadialProfile w = gaussian3(0, 0.8, 0.7);
  const RadialProfile u = gaussian3(0, 1.5, 0.9);
  const CutoffKernel direct(w, u, {}, K0Route::direct);
  const CutoffKernel parts(w, u, {}, K0Route::parts);
  const CutoffKernel subtracted(w, u, {}, K0Route::subtracted);
  for (double rho : {0.5, 2.0, 5.0, 20.0, 60.0}) {
    const complex a = direct.value(rho);
    const complex b = parts.value(rho);
    const complex c = subtracted.value(rho);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    CHECK(std::abs(a - b) <= 1e-7 * scale);
    CHECK(std::abs(a - c) <= 1e-7 * scale);
  }
}

TEST_CASE("kernel mass equals the half-smoothed boundary pairing") {
  const RadialProfile w = gaussian3(0, 0.8, 0.7);
  const RadialProfile u = gaussian3(0, 1.5, 0.9);
  const CutoffKernel k(w, u);
  // (1/pi) int_R M = <|D|^{-1} w, u>.  Two independent oracles: the sharp one
  // goes through Plancherel, <|D|^{-1} w, u> =
  // (1/(2 pi^2)) int_0^inf lambda conj(Tw) Tu dlambda (measured agreement
  // 4.8e-8); the chord-kernel route |D|^{-1} w carries its own ~3e-6
  // quadrature floor on this grid, so it gets the coarser tolerance.
  const complex ref =
      integrate_adaptive(
          [&](double la) {
            return la * std::conj(sector_transform(w, la)) *
                   sector_transform(u, la);
          },
          1e-8, 40.0, 1e-12, 0.0, 30) /
      (2.0 * pi * pi);
  CHECK(std::abs(k.mass() - ref) <= 1e-6 * std::abs(ref));
  const RadialProfile iw = fractional_integral(w, 1.0);
  const complex want = inner_product(iw, u);
  CHECK(std::abs(k.mass() - want) <= 1e-5 * std::abs(want));
  // The mean of two real profiles is real, so its even extension makes the
  // first-moment integrand odd: reflected sample pairs cancel bitwise and
  // the full-line moment behind G(0) vanishes exactly.
  const RadialProfile& M = k.mean();
  CHECK(M.is_real());
  complex whole{0.0, 0.0};
  for (std::size_t i = 0; i < M.radii().size(); ++i) {
    const double r = M.radii()[i];
    whole += r * M.values()[i] + (-r) * M.values()[i];
  }
  CHECK(std::abs(whole) == 0.0);
}

TEST_CASE("prefix integrals of the kernel act as antiderivatives") {
  const RadialProfile w = gaussian3(0, 0.8, 0.7);
  const RadialProfile u = gaussian3(0, 1.2, 0.8);
  const CutoffKernel k(w, u);
  CHECK(std::abs(k.prefix0(0.0)) == 0.0);
  // prefix0(b) - prefix0(a) ~ int_a^b K0 by midpoint refinement.
  const double a = 1.0, b = 3.0;
  complex riemann{0.0, 0.0};
  const int n = 2000;
  for (int i = 0; i < n; ++i)
    riemann += k.value(a + (b - a) * (i + 0.5) / n) * ((b - a) / n);
  const complex diff = k.prefix0(b) - k.prefix0(a);
  CHECK(std::abs(diff - riemann) <= 2e-6 * std::abs(riemann));
  // Clamping beyond the sampled range.
  CHECK(std::abs(k.prefix0(1e9) - k.prefix0(k.rho_max())) == 0.0);
}

TEST_CASE("singular block application is linear in the coefficient") {
  const RadialProfile w = gaussian3(0, 0.8, 0.7);
  const RadialProfile u = gaussian3(0, 1.2, 0.8);
  const CutoffKernel k(w, u);
  std::vector<double> s_out;
  for (int i = 1; i <= 40; ++i) s_out.push_back(0.2 * i);
  const RadialProfile one = apply_singular_block(w, complex{1.0, 0.0}, k, s_out);
  const RadialProfile two =
      apply_singular_block(w, complex{0.0, 2.0}, k, s_out);
  for (std::size_t i = 0; i < s_out.size(); ++i) {
    const complex got = two.values()[i];
    const complex want = complex{0.0, 2.0} * one.values()[i];
    CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("resonance-type operator: boundary identity and sector guard") {
  const FirstKindOperator& zs = first_kind_data().zs;
  const RadialProfile u = gaussian3(0, 2.0, 1.0);
  const complex bv = zs.boundary_value(u);
  const complex br = zs.boundary_reference(u);
  CHECK(std::abs(bv - br) <= 1e-6 * std::abs(br));
  // Wrong-sector input is annihilated.
  const RadialProfile u1 = gaussian3(1, 2.0, 1.0);
  const RadialProfile out = zs.apply(u1);
  CHECK(norm_lp(out, 2.0) == 0.0);
}

TEST_CASE("rank-one boundary part grows like t^{1-3/p} under dilation") {
  const FirstKindOperator& zs = first_kind_data().zs;
  const RadialProfile u = gaussian3(0, 2.0, 1.0);
  const double p = 4.0;
  std::vector<double> ratios;
  for (double t : {8.0, 16.0, 32.0}) {
    const RadialProfile ut = dilate_profile(u, t);
    RadialProfile r1 = zs.phi_c;
    const complex c = zs.a * inner_product(zs.psi, ut);
    for (std::size_t i = 0; i < r1.values().size(); ++i) r1.values()[i] *= c;
    r1.refresh();
    ratios.push_back(norm_lp(r1, p) / norm_lp(ut, p));
  }
  const double slope01 = std::log(ratios[1] / ratios[0]) / std::log(2.0);
  const double slope12 = std::log(ratios[2] / ratios[1]) / std::log(2.0);
  // psi ~ r^{-2} makes <psi, u_t> grow like t, so the ratio slope is
  // 1 - 3/p = 1/4.
  CHECK(slope01 == doctest::Approx(0.25).epsilon(0.3));
  CHECK(slope12 == doctest::Approx(0.25).epsilon(0.3));
}

TEST_CASE("bound-state weights reduce to dipole products") {
  const SecondKindData& d = second_kind_data();
  const ManufacturedPair& mk = d.mk;
  REQUIRE(d.sec.vectors.size() >= 1);
  const RadialProfile& phi = d.sec.vectors.front();
  const complex w = second_kind_weight(mk.V, phi, phi);
  // a_jj = -(4/27) |int (V phi) r^3 dr|^2.
  const RadialProfile vphi = multiply_profiles(phi, mk.V);
  std::vector<complex> g(vphi.radii().size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = vphi.values()[i] * std::pow(vphi.radii()[i], 3);
  const complex dip = filon_integrate(vphi.radii(), g);
  const complex want = -(4.0 / 27.0) * std::conj(dip) * dip;
  CHECK(std::abs(w - want) <= 1e-8 * std::abs(want));
  CHECK(w.real() < 0.0);
}

TEST_CASE("sector reduction of the cubic-kernel smoother is rank-one") {
  // For g(r) Y1, the |x-y|^2/(24 pi) kernel collapses to
  // (D g)(r) = -(r/9) int g(s) s^3 ds; checked by direct quadrature of the
  // 3d integral at a point on the axis.
  const RadialProfile g = gaussian3(1, 1.0, 0.8);
  const double x = 1.3;
  // int |x-y|^2 g(|y|) Y1(y) dy restricted to the axis: only the cross term
  // -2 x . y survives the angular integral.
  // On the sphere of radius t the sector-1 function is g(t) cos(theta), so
  // the angular integrand is d2 * cos(theta) with g factored out.
  const complex direct = integrate_adaptive(
      [&](double t) {
        const complex mean = spherical_mean_axisym(
            [&](double rr, double c) {
              const double d2 = x * x + rr * rr - 2.0 * x * rr * c;
              return complex{d2 * c, 0.0};
            },
            3, t);
        return 4.0 * pi * t * t * g.eval(t) * mean;
      },
      1e-9, 25.0, 1e-11);
  const complex via_kernel = direct / (24.0 * pi);
  std::vector<complex> mom(g.radii().size());
  for (std::size_t i = 0; i < mom.size(); ++i)
    mom[i] = g.values()[i] * std::pow(g.radii()[i], 3);
  const complex want = -(x / 9.0) * filon_integrate(g.radii(), mom);
  // Measured 7e-8: interpolation difference between the local-cubic moment
  // integrator and the adaptive quadrature of the global spline.
  CHECK(std::abs(via_kernel - want) <= 1e-6 * std::abs(want));
}

TEST_CASE("bound-state operator annihilates cross-sector input") {
  const SecondKindOperator& zs1 = second_kind_data().zs1;
  const RadialProfile u0 = gaussian3(0, 2.0, 1.0);
  CHECK(norm_lp(zs1.apply(u0), 2.0) == 0.0);
  CHECK(norm_lp(zs1.apply_corrected(u0), 2.0) == 0.0);
}

TEST_CASE("probe bookkeeping: ratios, spread, slope") {
  // A homogeneous operator (multiplication by a constant) gives flat ratios
  // and a bounded verdict at any p.
  const RadialProfile u = gaussian3(0, 1.5, 0.8);
  auto op = [](const RadialProfile& v) {
    RadialProfile out = v;
    for (complex& c : out.values()) c *= complex{0.0, 3.0};
    out.refresh();
    return out;
  };
  const DilationProbe probe = run_dilation_probe(op, u, {1.0, 2.0, 4.0, 8.0});
  REQUIRE(probe.outputs.size() == 4);
  const ProbeResult res = assess_probe(probe, 2.5);
  CHECK_FALSE(res.growing);
  CHECK(res.slope == doctest::Approx(0.0));
  CHECK(res.spread == doctest::Approx(1.0).epsilon(1e-9));
  for (double r : res.ratios) CHECK(r == doctest::Approx(3.0).epsilon(1e-9));
  // A first-order-homogeneous perturbation u -> t u trips the verdict.
  auto growing_op = [](const RadialProfile& v) {
    RadialProfile out = v;
    const double scale = v.radii().back();
    for (complex& c : out.values()) c *= scale;
    out.refresh();
    return out;
  };
  const DilationProbe probe2 =
      run_dilation_probe(growing_op, u, {1.0, 2.0, 4.0, 8.0});
  const ProbeResult res2 = assess_probe(probe2, 2.5);
  CHECK(res2.growing);
  CHECK(res2.slope == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("total kernel weights by dimension") {
  // Odd closed form Gamma((m-2)/2) / (sqrt(pi) Gamma((m-1)/2)).
  CHECK(dm_constant(3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dm_constant(5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dm_constant(7) == doctest::Approx(0.375).epsilon(1e-14));
  // Even values through an independent adaptive integral of
  // 2^m Gamma(m/2) / (sqrt(pi) Gamma((m-1)/2)) int_1^inf (x^2+1)^{1-m} dx.
  for (int m : {4, 6, 8}) {
    const double integral =
        integrate_adaptive(
            [&](double v) {
              const double x = 1.0 / v;
              return complex{std::pow(x * x + 1.0, 1.0 - m) / (v * v), 0.0};
            },
            1e-10, 1.0, 1e-13)
            .real();
    const double want = std::pow(2.0, m) * gamma_fn(0.5 * m) /
                        (std::sqrt(pi) * gamma_fn(0.5 * (m - 1))) * integral;
    CHECK(dm_constant(m) == doctest::Approx(want).epsilon(1e-10));
  }
  // The closed form of the even integral (residues plus telescoping).
  for (int m : {4, 6, 8, 10, 12})
    CHECK(shin_identity_residual(m) <= 1e-10);
}

TEST_CASE("phase-index weight splits sum to one") {
  for (int m : {6, 8, 10}) {
    const std::vector<double> dmj = dmj_constants(m);
    double sum = 0.0;
    for (double v : dmj) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    for (double v : dmj) CHECK(v > 0.0);
  }
}

TEST_CASE("odd binomial tail sums telescope to one exactly") {
  for (int m : {3, 5, 7, 9, 11, 13}) {
    CHECK(tilde_dm_odd(m) == Rational(1));
  }
}

TEST_CASE("singular expansion tables by dimension and kind") {
  using K = ThresholdKind;
  // Regular thresholds only carry the remainder and absorb trivially.
  for (int m : {3, 5, 8}) {
    const SingularExpansion se = singular_expansion(m, K::regular);
    CHECK(se.absorbable);
    REQUIRE(se.terms.size() == 1);
    CHECK(se.terms[0].form == "remainder");
  }
  // m = 3 keeps its genuine singularities.
  {
    const SingularExpansion first = singular_expansion(3, K::first_kind);
    CHECK_FALSE(first.absorbable);
    REQUIRE(first.terms.size() == 2);
    CHECK(first.terms[0].form == "rank-one");
    CHECK(first.terms[0].power == -1);
    const SingularExpansion third = singular_expansion(3, K::third_kind);
    REQUIRE(third.terms.size() == 3);
    CHECK(third.terms[0].form == "projector");
    CHECK(third.terms[0].power == -2);
    CHECK(third.terms[1].form == "rank-one");
  }
  // Higher dimensions only admit eigenvalue-type thresholds.
  CHECK_THROWS_AS((void)singular_expansion(5, K::first_kind), domain_error);
  CHECK_THROWS_AS((void)singular_expansion(4, K::second_kind), domain_error);
  // m = 5: the order -1 coefficient is pinned and scales with the squared
  // normalization.
  {
    const SingularExpansion se = singular_expansion(5, K::second_kind, 2.0);
    CHECK(se.absorbable);
    REQUIRE(se.terms.size() == 3);
    CHECK(se.terms[1].coefficient_known);
    CHECK(std::abs(se.terms[1].coefficient -
                   iu * 4.0 / (24.0 * pi * pi)) <= 1e-15);
  }
  // m = 6: logarithmic term at order zero with a known coefficient.
  {
    const SingularExpansion se = singular_expansion(6, K::second_kind, 1.0);
    CHECK_FALSE(se.absorbable);
    REQUIRE(se.terms.size() == 3);
    CHECK(se.terms[1].log_factor);
    CHECK(se.terms[1].power == 0);
    const double c = std::pow(pi, 3) / std::pow(2.0 * pi, 6);
    CHECK(se.terms[1].coefficient.real() == doctest::Approx(c * c));
  }
  // Even m >= 8: the log power climbs as m - 6 and the coefficient is open.
  {
    const SingularExpansion se = singular_expansion(8, K::second_kind);
    CHECK_FALSE(se.absorbable);
    CHECK(se.terms[1].log_factor);
    CHECK(se.terms[1].power == 2);
    CHECK_FALSE(se.terms[1].coefficient_known);
    CHECK(singular_expansion(12, K::second_kind).absorbable);
    CHECK(singular_expansion(9, K::second_kind).absorbable);
  }
}
