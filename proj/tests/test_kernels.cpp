// Free-resolvent kernels: closed forms, the general integral route, and the
// even-dimension superposition functionals.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "threshscatter/kernels.hpp"
#include "threshscatter/numeric.hpp"

using namespace ts;

TEST_CASE("leading closed-form weights at m = 5 and m = 7") {
  // q_j = (m-3-j)! / (2^{m-1-j} j! ((m-3)/2 - j)!).
  const auto q5 = odd_kernel_rationals(5);
  REQUIRE(q5.size() == 2);
  CHECK(q5[0] == Rational(1, 8));
  CHECK(q5[1] == Rational(1, 8));
  const auto q7 = odd_kernel_rationals(7);
  REQUIRE(q7.size() == 3);
  CHECK(q7[0] == Rational(3, 16));
  CHECK(q7[1] == Rational(3, 16));
  CHECK(q7[2] == Rational(1, 16));
}

TEST_CASE("m = 3 kernel is the textbook point-source solution") {
  const auto c3 = odd_kernel_coefficients(3);
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].real() == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-14));
  CHECK(c3[0].imag() == 0.0);
  const complex lam{0.7, 0.0};
  const double r = 2.3;
  const complex want = std::exp(iu * lam * r) / (4.0 * pi * r);
  CHECK(std::abs(eval_kernel_odd(3, lam, r) - want) <= 1e-15);
}

TEST_CASE("the two leading odd coefficients cancel in i C0 + C1") {
  for (int m : {5, 7, 9, 11}) {
    const auto q = odd_kernel_rationals(m);
    CHECK(q[0] == q[1]);  // exact rational identity behind i C0 + C1 = 0
    const auto c = odd_kernel_coefficients(m);
    CHECK(std::abs(iu * c[0] + c[1]) == 0.0);
  }
}

TEST_CASE("zero-energy constants") {
  // 1 / ((m-2) |S^{m-1}|).
  CHECK(zero_energy_constant(3) ==
        doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-14));
  CHECK(zero_energy_constant(5) ==
        doctest::Approx(1.0 / (8.0 * pi * pi)).epsilon(1e-14));
  CHECK(zero_energy_constant(4) ==
        doctest::Approx(1.0 / (4.0 * pi * pi)).epsilon(1e-14));
  // The kernel at vanishing spectral parameter reduces to C0 / r^{m-2}.
  const complex v = eval_kernel_odd(5, complex{0.0, 0.0}, 1.7);
  CHECK(v.real() ==
        doctest::Approx(zero_energy_constant(5) / std::pow(1.7, 3))
            .epsilon(1e-12));
  CHECK(std::abs(v.imag()) <= 1e-18);
}

TEST_CASE("closed form agrees with the general integral route (odd m)") {
  for (int m : {3, 5, 7}) {
    for (double lam : {0.15, 0.8, 1.9}) {
      for (double r : {0.3, 2.0, 8.0}) {
        const complex a = eval_kernel_general(m, complex{lam, 0.0}, r);
        const complex b = eval_kernel_odd(m, complex{lam, 0.0}, r);
        CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
      }
    }
  }
}

TEST_CASE("superposition route agrees with the general route (even m)") {
  for (int m : {4, 6}) {
    for (double lam : {0.2, 1.1, 1.9}) {
      for (double r : {0.4, 1.5, 6.0}) {
        const complex a = eval_kernel_general(m, complex{lam, 0.0}, r);
        const complex b = eval_kernel_even(m, complex{lam, 0.0}, r);
        CHECK(std::abs(a - b) <= 1e-7 * std::abs(a));
      }
    }
  }
}

TEST_CASE("kernels on the positive imaginary axis are real and decaying") {
  // lambda = i mu gives the kernel of (-Delta + mu^2)^{-1}, which is
  // positive and monotone in r.
  const complex lam{0.0, 0.9};
  const complex a = eval_kernel_odd(5, lam, 1.0);
  const complex b = eval_kernel_odd(5, lam, 2.0);
  CHECK(a.real() > b.real());
  CHECK(b.real() > 0.0);
  CHECK(std::abs(a.imag()) <= 1e-16 * a.real());
  const complex c = eval_kernel_general(5, lam, 1.5);
  const complex d = eval_kernel_odd(5, lam, 1.5);
  CHECK(std::abs(c - d) <= 1e-8 * std::abs(d));
}

TEST_CASE("unit moments of the superposition functionals") {
  // T_j[1] divided by (-2i)^j binom(nu, j) equals (m-3-j)!/(m-2)!.
  for (int m : {4, 6, 8, 10, 12}) {
    const int nu = (m - 2) / 2;
    for (int j = 0; j <= nu; ++j) {
      const SuperpositionRule rule = make_superposition_rule(m, j);
      const complex tj = superposition_functional(
          rule, [](double) { return complex{1.0, 0.0}; });
      const complex denom = std::pow(complex{0.0, -2.0}, j) * binomial(nu, j);
      const double ref = superposition_moment_reference(m, j);
      CHECK(std::abs(tj / denom - ref) <= 1e-10 * ref);
    }
  }
}

TEST_CASE("power moments of the superposition functionals") {
  // (1+2a)^{-k} moments against the tabulated reference values.
  for (int m : {4, 6}) {
    const int nu = (m - 2) / 2;
    for (int j = 0; j <= nu; ++j) {
      for (int k = 1; k <= 3; ++k) {
        const SuperpositionRule rule = make_superposition_rule(m, j);
        const complex tj = superposition_functional(rule, [&](double a) {
          return complex{std::pow(1.0 + 2.0 * a, -double(k)), 0.0};
        });
        const complex want = superposition_power_reference(m, j, k);
        CHECK(std::abs(tj - want) <= 1e-9 * std::abs(want));
      }
    }
  }
}

TEST_CASE("the even route refuses far outside its oscillation budget") {
  KernelOptions opts;
  opts.osc_cap = 1e3;
  CHECK_THROWS_AS((void)eval_kernel_even(4, complex{2.0, 0.0}, 1e4, opts),
                  range_error);
}
