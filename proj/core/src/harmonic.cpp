#include "threshscatter/harmonic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "threshscatter/quadrature.hpp"

namespace ts {

namespace {

void fft_inplace(std::vector<complex>& a, int sign) {
  fftw_plan plan = fftw_plan_dft_1d(
      int(a.size()), reinterpret_cast<fftw_complex*>(a.data()),
      reinterpret_cast<fftw_complex*>(a.data()), sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

std::size_t padded_size(std::size_t need) {
  std::size_t P = 1;
  while (P < need) P <<= 1;
  return P;
}

}  // namespace

LineSignal LineSignal::sample(double x0, double dx, std::size_t n,
                              const std::function<complex(double)>& f) {
  LineSignal s;
  s.x0 = x0;
  s.dx = dx;
  s.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.v[i] = f(x0 + dx * double(i));
  return s;
}

LineSignal apply_line_multiplier(const LineSignal& u,
                                 const std::function<complex(double)>& mult,
                                 int pad_factor) {
  const std::size_t n = u.size();
  if (n < 2) throw domain_error("apply_line_multiplier: signal too short");
  if (pad_factor < 1) throw domain_error("apply_line_multiplier: bad padding");
  const std::size_t P = padded_size(n * std::size_t(pad_factor));
  std::vector<complex> a(P, complex{0.0, 0.0});
  std::copy(u.v.begin(), u.v.end(), a.begin());
  fft_inplace(a, FFTW_FORWARD);
  for (std::size_t k = 0; k < P; ++k) {
    complex mk;
    if (k == P / 2) {
      const double xi = pi / u.dx;
      mk = 0.5 * (mult(xi) + mult(-xi));
    } else {
      const long kk = (k <= P / 2) ? long(k) : long(k) - long(P);
      mk = mult(2.0 * pi * double(kk) / (double(P) * u.dx));
    }
    a[k] *= mk;
  }
  fft_inplace(a, FFTW_BACKWARD);
  LineSignal out;
  out.x0 = u.x0;
  out.dx = u.dx;
  out.v.assign(a.begin(), a.begin() + n);
  const double scale = 1.0 / double(P);
  for (complex& z : out.v) z *= scale;
  return out;
}

LineSignal hilbert_transform(const LineSignal& u, int pad_factor) {
  return apply_line_multiplier(
      u,
      [](double xi) {
        return complex{0.0, xi > 0.0 ? -1.0 : (xi < 0.0 ? 1.0 : 0.0)};
      },
      pad_factor);
}

LineSignal half_projection(const LineSignal& u, int pad_factor) {
  return apply_line_multiplier(
      u, [](double xi) { return complex{xi >= 0.0 ? 1.0 : 0.0, 0.0}; },
      pad_factor);
}

LineSignal smoothed_half_projection(
    const LineSignal& u, const std::function<double(double)>& low_pass_hat,
    int pad_factor) {
  return apply_line_multiplier(
      u,
      [&](double xi) {
        return complex{xi >= 0.0 ? low_pass_hat(xi) : 0.0, 0.0};
      },
      pad_factor);
}

LineSignal convolve_line(const LineSignal& u,
                         const std::function<complex(double)>& kernel,
                         double reach, int pad_factor) {
  const std::size_t n = u.size();
  if (n < 2) throw domain_error("convolve_line: signal too short");
  if (!(reach > 0.0)) throw domain_error("convolve_line: need reach > 0");
  const long R = long(std::ceil(reach / u.dx));
  const std::size_t P =
      padded_size(std::max(n + std::size_t(2 * R) + 1,
                           n * std::size_t(std::max(pad_factor, 1))));
  std::vector<complex> A(P, complex{0.0, 0.0});
  std::copy(u.v.begin(), u.v.end(), A.begin());
  std::vector<complex> K(P, complex{0.0, 0.0});
  for (long k = -R; k <= R; ++k) {
    const std::size_t idx = std::size_t((k + long(P)) % long(P));
    K[idx] = kernel(double(k) * u.dx);
  }
  fft_inplace(A, FFTW_FORWARD);
  fft_inplace(K, FFTW_FORWARD);
  for (std::size_t i = 0; i < P; ++i) A[i] *= K[i];
  fft_inplace(A, FFTW_BACKWARD);
  LineSignal out;
  out.x0 = u.x0;
  out.dx = u.dx;
  out.v.assign(A.begin(), A.begin() + n);
  const double scale = u.dx / double(P);
  for (complex& z : out.v) z *= scale;
  return out;
}

std::vector<double> maximal_function(const LineSignal& u, double length_ratio) {
  const std::size_t n = u.size();
  if (n == 0) return {};
  if (!(length_ratio > 1.0))
    throw domain_error("maximal_function: need length_ratio > 1");
  std::vector<double> P(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) P[i + 1] = P[i] + std::abs(u.v[i]);

  std::vector<std::size_t> lengths;
  for (std::size_t w = 1; w <= std::min<std::size_t>(16, n); ++w)
    lengths.push_back(w);
  double w = 16.0;
  while (w < double(n)) {
    w = std::ceil(w * length_ratio);
    lengths.push_back(std::min<std::size_t>(std::size_t(w), n));
  }
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());

  std::vector<double> M(n, 0.0);
  for (std::size_t wl : lengths) {
    auto avg = [&](std::size_t j) { return (P[j + wl] - P[j]) / double(wl); };
    std::deque<std::size_t> dq;
    std::size_t next_j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t jmax = std::min(i, n - wl);
      const std::size_t jmin = (i + 1 >= wl) ? i + 1 - wl : 0;
      while (next_j <= jmax) {
        while (!dq.empty() && avg(dq.back()) <= avg(next_j)) dq.pop_back();
        dq.push_back(next_j);
        ++next_j;
      }
      while (!dq.empty() && dq.front() < jmin) dq.pop_front();
      if (!dq.empty()) M[i] = std::max(M[i], avg(dq.front()));
    }
  }
  return M;
}

ApResult ap_characteristic_power(double a, double p, int truncation_levels) {
  if (!(p > 1.0)) throw domain_error("ap_characteristic_power: need p > 1");
  ApResult res;
  const double b = -a / (p - 1.0);  // exponent of the dual weight
  res.finite = (a > -1.0) && (b > -1.0);

  auto truncated_avg = [](double eps, double expo) {
    if (std::abs(expo + 1.0) < 1e-14) return -std::log(eps);
    return (1.0 - std::pow(eps, expo + 1.0)) / (expo + 1.0);
  };
  res.truncated_sups.reserve(truncation_levels);
  for (int k = 0; k < truncation_levels; ++k) {
    const double eps = std::ldexp(1.0, -(k + 1));
    res.truncated_sups.push_back(
        truncated_avg(eps, a) * std::pow(truncated_avg(eps, b), p - 1.0));
  }

  if (!res.finite) {
    res.characteristic = std::numeric_limits<double>::infinity();
    return res;
  }

  // |x|^expo averaged over [t-1, t+1], t >= 0, exact (expo > -1 here).
  auto avg = [](double t, double expo) {
    const double e1 = expo + 1.0;
    if (t < 1.0)
      return (std::pow(1.0 - t, e1) + std::pow(1.0 + t, e1)) / (2.0 * e1);
    return (std::pow(t + 1.0, e1) - std::pow(t - 1.0, e1)) / (2.0 * e1);
  };
  // Scale and reflection invariance reduce the supremum over all intervals
  // to the one-parameter family [t-1, t+1].
  double sup = 1.0;
  auto consider = [&](double t) {
    sup = std::max(sup, avg(t, a) * std::pow(avg(t, b), p - 1.0));
  };
  consider(0.0);
  for (int i = 0; i <= 200; ++i) consider(2.0 * i / 200.0);
  for (int i = 0; i <= 600; ++i)
    consider(std::pow(10.0, -8.0 + 16.0 * i / 600.0));
  res.characteristic = sup;
  return res;
}

MajorantCheck majorant_check(const LineSignal& u,
                             const std::function<complex(double)>& kernel,
                             const std::function<double(double)>& majorant,
                             double reach, double tol) {
  MajorantCheck res;
  const LineSignal conv = convolve_line(u, kernel, reach);
  const std::vector<double> Mu = maximal_function(u);
  const std::size_t n = u.size();
  const std::size_t margin = std::size_t(std::ceil(reach / u.dx));
  if (2 * margin >= n)
    throw domain_error("majorant_check: reach covers the whole signal");
  for (std::size_t i = margin; i + margin < n; ++i) {
    const double m = std::max(Mu[i], 1e-300);
    res.max_ratio = std::max(res.max_ratio, std::abs(conv.v[i]) / m);
  }
  res.majorant_l1 =
      2.0 *
      integrate_adaptive(
          [&](double y) { return complex{majorant(y), 0.0}; }, 0.0, reach,
          1e-9)
          .real();
  res.dominated = res.max_ratio <= (1.0 + tol) * res.majorant_l1;
  return res;
}

double weighted_lp_norm(const LineSignal& u,
                        const std::function<double(double)>& w, double p) {
  if (!(p > 0.0)) throw domain_error("weighted_lp_norm: need p > 0");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s += w(u.x(i)) * std::pow(std::abs(u.v[i]), p);
  return std::pow(u.dx * s, 1.0 / p);
}

}  // namespace ts
