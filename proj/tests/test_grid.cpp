// Radial grids, profiles, norms, and the profile file format.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "threshscatter/grid.hpp"

using namespace ts;

static RadialProfile gaussian_profile(int m, int ell, double width = 1.0) {
  const GridSpec g{1e-3, 50.0, 800};
  return RadialProfile::sample(m, ell, 0.0, log_grid(g), [&](double r) {
    const double rad = (ell == 0 ? 1.0 : r);
    return complex{rad * std::exp(-r * r / (2.0 * width * width)), 0.0};
  });
}

TEST_CASE("log grid endpoints and monotonicity") {
  const GridSpec g{1e-2, 1e2, 101};
  const std::vector<double> r = log_grid(g);
  REQUIRE(r.size() == 101);
  CHECK(r.front() == doctest::Approx(1e-2).epsilon(1e-14));
  CHECK(r.back() == doctest::Approx(1e2).epsilon(1e-14));
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] > r[i - 1]);
  // Uniform in the logarithm.
  const double q0 = r[1] / r[0], q50 = r[51] / r[50];
  CHECK(q0 == doctest::Approx(q50).epsilon(1e-12));
}

TEST_CASE("grid size honors the environment override") {
  setenv("THRESHSCATTER_GRID_N", "512", 1);
  CHECK(default_grid_spec().n == 512);
  unsetenv("THRESHSCATTER_GRID_N");
  CHECK(default_grid_spec().n == 2048);
}

TEST_CASE("cubic spline interpolates smooth data") {
  std::vector<double> xs;
  std::vector<complex> fs;
  for (int i = 0; i <= 100; ++i) {
    const double x = double(i) / 10.0;
    xs.push_back(x);
    fs.push_back(complex{std::sin(x), std::cos(x)});
  }
  const CubicSpline sp(xs, fs);
  CHECK(std::abs(sp(xs[37]) - fs[37]) <= 1e-14);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double x = 0.3 + 9.0 * double(i) / 499.0;
    worst = std::max(worst,
                     std::abs(sp(x) - complex{std::sin(x), std::cos(x)}));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("profile evaluation: nodes, low-r extension, outside support") {
  const RadialProfile u = gaussian_profile(3, 0);
  CHECK(std::abs(u.eval(u.radii()[100]) - u.values()[100]) <= 1e-14);
  // Below the first node a quadratic-in-r extension keeps the value finite
  // and close to the smooth continuation.
  CHECK(u.eval(0.0).real() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(u.eval(5e-4).real() - 1.0) <= 1e-5);
  // Beyond the last node the profile vanishes.
  CHECK(std::abs(u.eval(60.0)) == 0.0);
  CHECK(u.is_real());
  CHECK(u.dimension() == 3);
  CHECK(u.sector() == 0);
}

TEST_CASE("p-norms against closed-form Gaussian integrals") {
  const RadialProfile u = gaussian_profile(3, 0);
  // ||u||_2^2 = 4 pi int_0^inf e^{-r^2} r^2 dr = pi^{3/2}.  The quadrature
  // error at 800 log-spaced nodes measures ~1.2e-8 and shrinks at fourth
  // order under refinement, so 5e-8 is the resolution-limited bound here.
  const double n2 = norm_lp(u, 2.0);
  CHECK(n2 * n2 == doctest::Approx(std::pow(pi, 1.5)).epsilon(5e-8));
  // ||u||_1 = 4 pi int_0^inf e^{-r^2/2} r^2 dr = (2 pi)^{3/2}.
  CHECK(norm_lp(u, 1.0) ==
        doctest::Approx(std::pow(2.0 * pi, 1.5)).epsilon(5e-8));
}

TEST_CASE("inner product is consistent with the 2-norm and sector-strict") {
  const RadialProfile u = gaussian_profile(3, 1);
  const complex ip = inner_product(u, u);
  const double n2 = norm_lp(u, 2.0);
  CHECK(ip.real() == doctest::Approx(n2 * n2).epsilon(1e-10));
  CHECK(std::abs(ip.imag()) <= 1e-12 * ip.real());
  const RadialProfile v = gaussian_profile(3, 0);
  CHECK_THROWS_AS((void)inner_product(u, v), domain_error);
}

TEST_CASE("profile products multiply values and add sectors") {
  const RadialProfile a = gaussian_profile(3, 0, 1.0);
  const RadialProfile b = gaussian_profile(3, 1, 2.0);
  const RadialProfile ab = multiply_profiles(a, b);
  CHECK(ab.sector() == 1);
  const double r = a.radii()[300];
  CHECK(std::abs(ab.eval(r) - a.eval(r) * b.eval(r)) <= 1e-12);
  // Two factors in nontrivial sectors would leave the sector family.
  CHECK_THROWS_AS((void)multiply_profiles(b, b), domain_error);
}

TEST_CASE("radial integration of a Gaussian") {
  const RadialProfile u = gaussian_profile(5, 0);
  // int_0^inf e^{-r^2/2} r^4 dr = 3 sqrt(2 pi) / 2.
  const complex v = integrate_radial(u);
  CHECK(v.real() ==
        doctest::Approx(1.5 * std::sqrt(2.0 * pi)).epsilon(1e-8));
}

TEST_CASE("profile files round-trip and rewrite byte-identically") {
  const RadialProfile u = gaussian_profile(4, 1, 1.3);
  const char* p1 = "roundtrip_a.profile";
  const char* p2 = "roundtrip_b.profile";
  write_profile(u, p1);
  const RadialProfile v = read_profile(p1);
  CHECK(v.dimension() == u.dimension());
  CHECK(v.sector() == u.sector());
  CHECK(v.decay_exponent() == doctest::Approx(u.decay_exponent()));
  REQUIRE(v.radii().size() == u.radii().size());
  double worst = 0.0;
  for (std::size_t i = 0; i < u.radii().size(); ++i)
    worst = std::max(worst, std::abs(u.values()[i] - v.values()[i]));
  CHECK(worst == 0.0);  // %.17g reproduces doubles exactly
  write_profile(v, p2);
  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().rfind("# threshscatter profile m=4 ell=1", 0) == 0);
  std::remove(p1);
  std::remove(p2);
}

TEST_CASE("angular factors of the low sectors") {
  // Sphere integral of |Y|^p in R^3: 4 pi for the trivial sector and
  // 4 pi / (p + 1) for Y(x) = x1/r.
  CHECK(angular_p_factor(3, 0, 2.0) == doctest::Approx(4.0 * pi));
  CHECK(angular_p_factor(3, 1, 2.0) ==
        doctest::Approx(4.0 * pi / 3.0).epsilon(1e-12));
  CHECK(angular_p_factor(3, 1, 4.0) ==
        doctest::Approx(4.0 * pi / 5.0).epsilon(1e-12));
  // Quadratic sector, p = 2: 2 pi int_{-1}^1 ((3c^2-1)/2)^2 dc = 4 pi / 5.
  CHECK(angular_p_factor(3, 2, 2.0) ==
        doctest::Approx(4.0 * pi / 5.0).epsilon(1e-10));
}
