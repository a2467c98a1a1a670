// Exact-arithmetic helpers and special-function wrappers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "threshscatter/numeric.hpp"

using namespace ts;

TEST_CASE("rational arithmetic normalizes and compares exactly") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(Rational(-4, -6) == Rational(2, 3));
  CHECK(Rational(4, -6) == Rational(-2, 3));
  CHECK(Rational(0, 7) == Rational(0));
  // Telescoping partial sums stay exact where doubles would round.
  Rational s(0);
  for (int k = 1; k <= 20; ++k) s = s + Rational(1, k) - Rational(1, k + 1);
  CHECK(s == Rational(20, 21));
}

TEST_CASE("rational binomial coefficients") {
  CHECK(rational_binomial(5, 2) == Rational(10));
  CHECK(rational_binomial(10, 5) == Rational(252));
  CHECK(rational_binomial(7, 0) == Rational(1));
  CHECK(rational_binomial(7, 7) == Rational(1));
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(0) == doctest::Approx(1.0));
  CHECK(factorial(5) == doctest::Approx(120.0));
  CHECK(binomial(6, 2) == doctest::Approx(15.0));
  CHECK(binomial(4, 4) == doctest::Approx(1.0));
}

TEST_CASE("gamma wrappers at half-integers") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(pi)).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(lgamma_fn(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-14));
}

TEST_CASE("sphere areas |S^{m-1}|") {
  CHECK(sphere_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * pi * pi).epsilon(1e-14));
  CHECK(sphere_area(5) ==
        doctest::Approx(8.0 * pi * pi / 3.0).epsilon(1e-14));
  CHECK(sphere_area(6) == doctest::Approx(std::pow(pi, 3)).epsilon(1e-14));
}

TEST_CASE("powers of -i cycle with period four") {
  CHECK(neg_i_pow(0) == complex{1.0, 0.0});
  CHECK(neg_i_pow(1) == complex{0.0, -1.0});
  CHECK(neg_i_pow(2) == complex{-1.0, 0.0});
  CHECK(neg_i_pow(3) == complex{0.0, 1.0});
  CHECK(neg_i_pow(4) == complex{1.0, 0.0});
  CHECK(neg_i_pow(7) == complex{0.0, 1.0});
}
