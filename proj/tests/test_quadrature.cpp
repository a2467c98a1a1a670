// Quadrature rules and the oscillatory piecewise-cubic integrator.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "threshscatter/filon.hpp"
#include "threshscatter/quadrature.hpp"

using namespace ts;

TEST_CASE("Gauss-Legendre is exact on polynomials of degree 2n-1") {
  const QuadRule r = gauss_legendre_ab(4, 0.0, 1.0);
  double s5 = 0.0, s7 = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    s5 += r.w[i] * std::pow(r.x[i], 5);
    s7 += r.w[i] * std::pow(r.x[i], 7);
  }
  CHECK(s5 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(s7 == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Laguerre with exponent 1/2 reproduces gamma values") {
  const QuadRule r = gauss_laguerre(40, 0.5);
  // int_0^inf x^{1/2} e^{-x} dx = Gamma(3/2), and with an extra x^2 factor
  // Gamma(7/2); the weight already carries x^{1/2} e^{-x}.
  double m0 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    m0 += r.w[i];
    m2 += r.w[i] * r.x[i] * r.x[i];
  }
  CHECK(m0 == doctest::Approx(0.5 * std::sqrt(pi)).epsilon(1e-12));
  CHECK(m2 ==
        doctest::Approx(15.0 / 8.0 * std::sqrt(pi)).epsilon(1e-12));
}

TEST_CASE("integrate_gl on a shifted interval") {
  const complex v =
      integrate_gl([](double x) { return complex{std::sin(x), 0.0}; }, 0.0,
                   pi, 48);
  CHECK(v.real() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("adaptive integration reaches the requested tolerance") {
  const complex a = integrate_adaptive(
      [](double x) { return complex{std::exp(-x * x), 0.0}; }, -6.0, 6.0,
      1e-12);
  CHECK(a.real() == doctest::Approx(std::sqrt(pi)).epsilon(1e-11));

  // Integrable endpoint singularity: the default bisection depth is not
  // enough for x^{-1/2}, so raise it explicitly.
  const complex b = integrate_adaptive(
      [](double x) { return complex{1.0 / std::sqrt(x), 0.0}; }, 0.0, 1.0,
      1e-8, 0.0, 40);
  CHECK(b.real() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("semi-infinite integration of damped oscillations") {
  // int_0^inf e^{-x} cos(3x) dx = 1/10; the geometric-panel tail integrator
  // needs a positive start, so split off the head.
  auto f = [](double x) {
    return complex{std::exp(-x) * std::cos(3.0 * x), 0.0};
  };
  const complex head = integrate_adaptive(f, 0.0, 1.0, 1e-12);
  const complex tail = integrate_to_infinity(f, 1.0, 1e-12);
  CHECK((head + tail).real() == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("piecewise cubic integrates cubics exactly at any frequency") {
  // A cubic sampled on an uneven grid is represented exactly, so the
  // oscillatory quadrature must match the analytic antiderivative of
  // p(x) e^{i w x} even at w far beyond the Nyquist rate of the grid.
  std::vector<double> xs;
  for (int i = 0; i <= 40; ++i) {
    const double t = double(i) / 40.0;
    xs.push_back(t * t * 2.0);  // clustered near 0
  }
  std::vector<complex> fs;
  for (double x : xs)
    fs.push_back(complex{x * x * x - 2.0 * x + 1.0, 0.0});
  const PiecewiseCubic pc(xs, fs);

  auto exact = [](double w) {
    // int_0^2 (x^3 - 2x + 1) e^{iwx} dx by repeated integration by parts.
    const complex jw{0.0, w};
    auto term = [&](double x) {
      const complex e = std::exp(complex{0.0, w * x});
      const double p = x * x * x - 2.0 * x + 1.0;
      const double p1 = 3.0 * x * x - 2.0;
      const double p2 = 6.0 * x;
      const double p3 = 6.0;
      return e * (p / jw - p1 / (jw * jw) + p2 / (jw * jw * jw) -
                  p3 / (jw * jw * jw * jw));
    };
    return term(2.0) - term(0.0);
  };

  for (double w : {0.3, 7.0, 150.0, 4000.0}) {
    const complex got = pc.integrate_exp(w);
    const complex want = exact(w);
    CHECK(std::abs(got - want) <=
          doctest::Approx(1e-12 * (1.0 + std::abs(want))).epsilon(1));
  }
}

TEST_CASE("cos/sin transforms match the exponential one") {
  std::vector<double> xs;
  std::vector<complex> fs;
  for (int i = 0; i <= 200; ++i) {
    const double x = 5.0 * double(i) / 200.0;
    xs.push_back(x);
    fs.push_back(complex{std::exp(-x), 0.0});
  }
  const PiecewiseCubic pc(xs, fs);
  const double w = 11.0;
  const complex e = pc.integrate_exp(w);
  CHECK(pc.integrate_cos(w).real() == doctest::Approx(e.real()).epsilon(1e-12));
  CHECK(pc.integrate_sin(w).real() == doctest::Approx(e.imag()).epsilon(1e-12));
}

TEST_CASE("prefix integrals accumulate to the plain integral") {
  std::vector<double> xs;
  std::vector<complex> fs;
  for (int i = 0; i <= 64; ++i) {
    const double x = double(i) / 8.0;
    xs.push_back(x);
    fs.push_back(complex{std::cos(x), std::sin(0.5 * x)});
  }
  const PiecewiseCubic pc(xs, fs);
  const std::vector<complex> pre = pc.prefix_integrals();
  REQUIRE(pre.size() == xs.size());
  CHECK(std::abs(pre.front()) == 0.0);
  CHECK(std::abs(pre.back() - pc.integrate()) <= 1e-14);
  // Interior prefix matches integrating a head-only interpolant.  Cubic data
  // is reproduced exactly by every local 4-point window, so the head grid
  // carries the identical polynomial and the prefix must agree to rounding.
  std::vector<complex> cs;
  for (double x : xs)
    cs.push_back(complex{x * x * x - x, 0.5 * x * x});
  const PiecewiseCubic cubic(xs, cs);
  const std::vector<complex> cpre = cubic.prefix_integrals();
  std::vector<double> hx(xs.begin(), xs.begin() + 33);
  std::vector<complex> hf(cs.begin(), cs.begin() + 33);
  const PiecewiseCubic head(hx, hf);
  CHECK(std::abs(cpre[32] - head.integrate()) <=
        1e-12 * (1.0 + std::abs(cpre[32])));
}

TEST_CASE("one-shot oscillatory integral against a closed form") {
  // int_0^pi sin(x) e^{i w x} dx = (1 + e^{i w pi}) / (1 - w^2).
  const double w = 25.0;
  std::vector<double> xs;
  std::vector<complex> fs;
  for (int i = 0; i <= 2000; ++i) {
    const double x = pi * double(i) / 2000.0;
    xs.push_back(x);
    fs.push_back(complex{std::sin(x), 0.0});
  }
  const complex got = filon_integrate_exp(xs, fs, w);
  const complex want =
      (1.0 + std::exp(complex{0.0, w * pi})) / (1.0 - w * w);
  CHECK(std::abs(got - want) <= 1e-10);
}
