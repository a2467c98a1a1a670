#include "threshscatter/kernels.hpp"

#include <cmath>

#include "threshscatter/quadrature.hpp"

namespace ts {

namespace {

void require_dimension(int m, int parity /* 0 any, 1 odd, 2 even */) {
  if (m < 3) throw domain_error("kernel: need m >= 3");
  if (parity == 1 && m % 2 == 0) throw domain_error("kernel: odd m required");
  if (parity == 2 && m % 2 == 1) throw domain_error("kernel: even m required");
}

void require_upper_half_plane(complex lambda) {
  if (lambda.imag() < -1e-14 * std::abs(lambda))
    throw domain_error("kernel: lambda must lie in the closed upper half-plane");
}

complex half_power(complex z, int twice_exponent) {
  // z^{k/2} on the principal branch; integer exponents avoid pow() noise.
  if (twice_exponent % 2 == 0) {
    int k = twice_exponent / 2;
    complex r{1.0, 0.0};
    for (int i = 0; i < std::abs(k); ++i) r *= z;
    return k >= 0 ? r : 1.0 / r;
  }
  return std::pow(z, 0.5 * twice_exponent);
}

}  // namespace

double zero_energy_constant(int m) {
  require_dimension(m, 0);
  return 1.0 / ((m - 2) * sphere_area(m));
}

std::vector<complex> odd_kernel_coefficients(int m) {
  std::vector<Rational> q = odd_kernel_rationals(m);
  std::vector<complex> c(q.size());
  const double pw = std::pow(pi, -0.5 * (m - 1));
  for (std::size_t j = 0; j < q.size(); ++j)
    c[j] = neg_i_pow(int(j)) * q[j].value() * pw;
  return c;
}

std::vector<Rational> odd_kernel_rationals(int m) {
  require_dimension(m, 1);
  const int jmax = (m - 3) / 2;
  std::vector<Rational> q(jmax + 1);
  for (int j = 0; j <= jmax; ++j) {
    // q_j = (m-3-j)! / (2^{m-1-j} j! ((m-3)/2 - j)!)
    Rational num(1);
    for (int k = 2; k <= m - 3 - j; ++k) num = num * Rational(k);
    Rational den(1);
    for (int k = 0; k < m - 1 - j; ++k) den = den * Rational(2);
    for (int k = 2; k <= j; ++k) den = den * Rational(k);
    for (int k = 2; k <= jmax - j; ++k) den = den * Rational(k);
    q[j] = num / den;
  }
  return q;
}

complex eval_kernel_odd(int m, complex lambda, double r) {
  require_dimension(m, 1);
  require_upper_half_plane(lambda);
  if (r <= 0.0) throw domain_error("kernel: need r > 0");
  const std::vector<complex> c = odd_kernel_coefficients(m);
  const complex z = lambda * r;
  complex poly{0.0, 0.0};
  complex zp{1.0, 0.0};
  for (const complex& cj : c) {
    poly += cj * zp;
    zp *= z;
  }
  return poly * std::exp(iu * z) / std::pow(r, m - 2);
}

complex eval_kernel_general(int m, complex lambda, double r,
                            const KernelOptions& opts) {
  require_dimension(m, 0);
  require_upper_half_plane(lambda);
  if (r <= 0.0) throw domain_error("kernel: need r > 0");
  // Normalization 2^{m-1} pi^{(m-1)/2} Gamma((m-1)/2) of the t-integral form
  // with (t - 2 i lambda r)^{(m-3)/2}.
  const double cstar = std::pow(2.0, m - 1) * std::pow(pi, 0.5 * (m - 1)) *
                       gamma_fn(0.5 * (m - 1));
  if (lambda == complex{0.0, 0.0})
    return gamma_fn(double(m - 2)) / (cstar * std::pow(r, m - 2));

  const complex shift = -2.0 * iu * lambda * r;  // Re >= 0 in the closed UHP
  auto evaluate = [&](int n) {
    // Weight t^{(m-3)/2} e^{-t} absorbed into the rule; the remaining factor
    // (t + shift)^{(m-3)/2} is smooth on [0, inf) for the allowed lambda.
    const QuadRule& rule = gauss_laguerre(n, 0.5 * (m - 3));
    complex s{0.0, 0.0};
    for (std::size_t i = 0; i < rule.x.size(); ++i)
      s += rule.w[i] * half_power(rule.x[i] + shift, m - 3);
    return s;
  };

  complex full = evaluate(opts.laguerre_nodes);
  if (m % 2 == 0) {
    // The half-integer power is not a polynomial: verify convergence by
    // comparing consecutive orders.  The difference estimates the error of
    // the *coarser* rule, so when it exceeds the tolerance escalate the
    // order (the branch point of the half power sits close to the contour
    // when |lambda| r is small) instead of rejecting a result that is
    // already accurate.
    int n = opts.laguerre_nodes;
    complex coarse = evaluate(std::max(32, n / 2));
    double rel = std::abs(full - coarse) / std::max(1e-300, std::abs(full));
    for (int tries = 0; rel > opts.rel_tol && tries < 3; ++tries) {
      coarse = full;
      n *= 2;
      full = evaluate(n);
      rel = std::abs(full - coarse) / std::max(1e-300, std::abs(full));
    }
    if (rel > opts.rel_tol)
      throw accuracy_error("eval_kernel_general: t-integral not converged", rel);
  }
  return std::exp(iu * lambda * r) * full / (cstar * std::pow(r, m - 2));
}

// ---------------------------------------------------------------------------
// Even superposition
// ---------------------------------------------------------------------------

SuperpositionRule make_superposition_rule(int m, int j, int n_nodes) {
  require_dimension(m, 2);
  const int nu = (m - 2) / 2;
  if (j < 0 || j > nu) throw domain_error("superposition rule: need 0 <= j <= nu");
  if (n_nodes < 4) throw domain_error("superposition rule: too few nodes");
  SuperpositionRule rule;
  rule.m = m;
  rule.j = j;
  const double s = 2.0 * nu - j + 0.5;
  // prefactor (-2i)^j Gamma(s) binom(nu, j) / ((m-2)! sqrt(pi))
  complex m2i{1.0, 0.0};
  for (int k = 0; k < j; ++k) m2i *= complex{0.0, -2.0};
  rule.prefactor = m2i * gamma_fn(s) * binomial(nu, j) /
                   (factorial(m - 2) * std::sqrt(pi));
  // Substitution a = u^2/(1-u^2) turns the weighted integral into
  // 2 int_0^1 (1-u^2)^{2nu-j-1} f(a(u)) du with an integer power, so plain
  // Gauss-Legendre integrates the pure weight exactly.
  const QuadRule gl = gauss_legendre_ab(n_nodes, 0.0, 1.0);
  rule.a.resize(n_nodes);
  rule.w.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double u = gl.x[i], u2 = u * u;
    rule.a[i] = u2 / (1.0 - u2);
    rule.w[i] = 2.0 * gl.w[i] * std::pow(1.0 - u2, s - 1.5);
  }
  return rule;
}

double SuperpositionRule::weight_integral() const {
  double s = 0.0;
  for (double wi : w) s += wi;
  return s;
}

complex superposition_functional(const SuperpositionRule& rule,
                                 const std::function<complex(double)>& f) {
  complex s{0.0, 0.0};
  for (std::size_t i = 0; i < rule.a.size(); ++i) s += rule.w[i] * f(rule.a[i]);
  return rule.prefactor * s;
}

double superposition_moment_reference(int m, int j) {
  require_dimension(m, 2);
  return factorial(m - 3 - j) / factorial(m - 2);
}

complex superposition_power_reference(int m, int j, int k) {
  require_dimension(m, 2);
  if (k < 1) throw domain_error("superposition_power_reference: need k >= 1");
  const int nu = (m - 2) / 2;
  const double expo = 2.0 * nu - j + k;
  // int_1^inf (x^2-1)^{k-1} (x^2+1)^{-expo} dx, compactified by x = 1/v.
  complex integral = integrate_adaptive(
      [&](double v) {
        const double x = 1.0 / v;
        return complex(std::pow(x * x - 1.0, k - 1) *
                           std::pow(x * x + 1.0, -expo) / (v * v),
                       0.0);
      },
      1e-12, 1.0, 1e-13, 1.0);
  return neg_i_pow(j) * std::pow(2.0, m - 1) *
         gamma_fn(2.0 * nu - j + k) / (factorial(m - 2) * gamma_fn(double(k))) *
         binomial(nu, j) * integral;
}

namespace {

// I(z; s) = int_0^inf (1+a)^{-s} a^{-1/2} e^{2 i z a} da for z = lambda * r
// in the closed upper half-plane.  See the module notes: compactified head,
// phase-adaptive middle, contour-rotated tail; fully rotated for large |z|.
complex phase_weight_integral(complex z, double s, double rel_tol) {
  const double az = std::abs(z);
  auto beta_value = [&]() {
    return std::sqrt(pi) * gamma_fn(s - 0.5) / gamma_fn(s);
  };
  if (az == 0.0) return beta_value();

  const double sigma = (z.real() > 0.0) ? 1.0 : (z.real() < 0.0 ? -1.0 : 0.0);

  // Rotated tail starting at a0 >= 0:
  //   int_{a0}^inf = e^{2 i z a0} * (sigma i) * int_0^inf
  //       (1 + a0 + sigma i y)^{-s} (a0 + sigma i y)^{-1/2} e^{-2 sigma z y} dy
  // evaluated by Laguerre after y = w / (2 sigma z) (valid: |arg(sigma z)| < pi/2).
  auto rotated_tail = [&](double a0, int n) {
    const complex sz = sigma * z;
    const complex scale = 1.0 / (2.0 * sz);
    const QuadRule& rule = gauss_laguerre(n, 0.0);
    complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const complex y = rule.x[i] * scale;
      sum += rule.w[i] * std::pow(1.0 + a0 + sigma * iu * y, -s) /
             std::sqrt(a0 + sigma * iu * y);
    }
    return std::exp(2.0 * iu * z * a0) * sigma * iu * scale * sum;
  };

  if (sigma == 0.0) {
    // Pure imaginary z: monotone decay e^{-2 Im(z) a}, no oscillation.
    complex head = integrate_adaptive(
        [&](double t) {
          const double a = t * t;
          return 2.0 * std::pow(1.0 + a, -s) * std::exp(2.0 * iu * z * a);
        },
        0.0, 1.0, rel_tol);
    complex tail = integrate_to_infinity(
        [&](double a) {
          return std::pow(1.0 + a, -s) / std::sqrt(a) *
                 std::exp(2.0 * iu * z * a);
        },
        1.0, rel_tol);
    return head + tail;
  }

  if (az > 30.0) {
    // Full rotation: a = sigma i y, then y = w/(2 sigma z); weight w^{-1/2} e^{-w}.
    auto rotated_full = [&](int n) {
      const complex sz = sigma * z;
      const QuadRule& rule = gauss_laguerre(n, -0.5);
      complex sum{0.0, 0.0};
      for (std::size_t i = 0; i < rule.x.size(); ++i)
        sum += rule.w[i] * std::pow(1.0 + iu * rule.x[i] / (2.0 * z), -s);
      return sigma * iu * std::exp(-sigma * iu * pi / 4.0) /
             std::sqrt(2.0 * sz) * sum;
    };
    complex fine = rotated_full(160);
    complex coarse = rotated_full(80);
    double rel = std::abs(fine - coarse) / std::max(1e-300, std::abs(fine));
    if (rel > rel_tol)
      throw accuracy_error("even kernel: rotated a-integral not converged", rel);
    return fine;
  }

  // Moderate |z|: head [0,1] with a = t^2 (kills the endpoint singularity),
  // oscillatory middle [1,4], rotated tail from 4.
  complex head = integrate_adaptive(
      [&](double t) {
        const double a = t * t;
        return 2.0 * std::pow(1.0 + a, -s) * std::exp(2.0 * iu * z * a);
      },
      0.0, 1.0, rel_tol);
  complex middle = integrate_adaptive(
      [&](double a) {
        return std::pow(1.0 + a, -s) / std::sqrt(a) * std::exp(2.0 * iu * z * a);
      },
      1.0, 4.0, rel_tol);
  return head + middle + rotated_tail(4.0, 160);
}

}  // namespace

complex eval_kernel_even(int m, complex lambda, double r,
                         const KernelOptions& opts) {
  require_dimension(m, 2);
  require_upper_half_plane(lambda);
  if (r <= 0.0) throw domain_error("kernel: need r > 0");
  const complex z = lambda * r;
  if (std::abs(z) > opts.osc_cap)
    throw range_error("eval_kernel_even: |lambda|*r above oscillation cap");
  if (z == complex{0.0, 0.0})
    return zero_energy_constant(m) / std::pow(r, m - 2);

  const int nu = (m - 2) / 2;
  complex sum{0.0, 0.0};
  complex zp{1.0, 0.0};
  for (int j = 0; j <= nu; ++j) {
    const double s = 2.0 * nu - j + 0.5;
    complex m2i{1.0, 0.0};
    for (int k = 0; k < j; ++k) m2i *= complex{0.0, -2.0};
    const complex cj = m2i * gamma_fn(s) * binomial(nu, j) /
                       (factorial(m - 2) * std::sqrt(pi));
    sum += cj * zp * phase_weight_integral(z, s, opts.rel_tol);
    zp *= z;
  }
  return std::exp(iu * z) * sum / (sphere_area(m) * std::pow(r, m - 2));
}

}  // namespace ts
