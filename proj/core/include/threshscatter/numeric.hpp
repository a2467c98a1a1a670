// Basic numeric building blocks shared across the library: complex aliases,
// gamma-function helpers, sphere areas, small exact rationals, and the error
// types thrown by the numerical routines.
#ifndef THRESHSCATTER_NUMERIC_HPP
#define THRESHSCATTER_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ts {

using complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr complex iu{0.0, 1.0};  //!< imaginary unit

// ---------------------------------------------------------------------------
// Errors.  All numerical failures are reported through these so callers (and
// the CLI) can map them to exit codes without string matching.
// ---------------------------------------------------------------------------

/// Invalid mathematical input (wrong dimension parity, exponent range, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature or iteration failed to reach the requested tolerance.
/// Carries the error estimate that was actually achieved.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error estimate " +
                           format_achieved(achieved) + ")"),
        achieved_error(achieved) {}
  double achieved_error;

 private:
  static std::string format_achieved(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
  }
};

/// Input outside the configured validity range (e.g. oscillation cap).
class range_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A discrete decision (e.g. null-space dimension) is not clear-cut.
class ambiguity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read, or parsed.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Gamma-function helpers
// ---------------------------------------------------------------------------

inline double gamma_fn(double x) { return std::tgamma(x); }
inline double lgamma_fn(double x) { return std::lgamma(x); }

/// Exact factorial for small n (n <= 20 fits in a double exactly).
inline double factorial(int n) {
  if (n < 0) throw domain_error("factorial of negative integer");
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Binomial coefficient for real upper index (used with half-integers too).
inline double binomial(double nu, int j) {
  if (j < 0) return 0.0;
  double b = 1.0;
  for (int k = 0; k < j; ++k) b *= (nu - k) / (k + 1);
  return b;
}

/// Surface area of the unit sphere S^{m-1} in R^m: omega_{m-1} = 2 pi^{m/2} / Gamma(m/2).
inline double sphere_area(int m) {
  if (m < 1) throw domain_error("sphere_area: need m >= 1");
  return 2.0 * std::pow(pi, 0.5 * m) / gamma_fn(0.5 * m);
}

/// Integer power of (-i): cycles 1, -i, -1, i.
inline complex neg_i_pow(int j) {
  switch (((j % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

// ---------------------------------------------------------------------------
// Exact rational arithmetic (small numbers only: combinatorial identities).
// ---------------------------------------------------------------------------

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(Rational a, Rational b) {
    return Rational(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  double value() const { return double(num) / double(den); }
};

/// Exact binomial coefficient as a rational (integer) value.
inline Rational rational_binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational b(1);
  for (int i = 0; i < k; ++i) b = b * Rational(n - i) / Rational(i + 1);
  return b;
}

}  // namespace ts

#endif  // THRESHSCATTER_NUMERIC_HPP
