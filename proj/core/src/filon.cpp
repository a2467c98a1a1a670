#include "threshscatter/filon.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ts {

namespace {

// Exact moments I_k = int_0^h t^k e^{i w t} dt for k = 0..3.
// Forward recurrence I_k = (h^k e^{iwh} - k I_{k-1}) / (iw) is stable for the
// low orders used here once |wh| is not small; below that threshold the
// Taylor series in (iw) is used to avoid catastrophic cancellation.
std::array<complex, 4> exp_moments(double h, double w) {
  std::array<complex, 4> I;
  const double wh = w * h;
  if (std::abs(wh) < 0.5) {
    // I_k = sum_{n>=0} (iw)^n h^{k+n+1} / (n! (k+n+1))
    for (int k = 0; k < 4; ++k) {
      const double hk1 = std::pow(h, k + 1);
      complex sum = hk1 / double(k + 1);
      complex factor{1.0, 0.0};
      for (int n = 1; n < 30; ++n) {
        factor *= iu * wh / double(n);
        complex add = factor * hk1 / double(k + n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      }
      I[k] = sum;
    }
    return I;
  }
  const complex iw{0.0, w};
  const complex eiwh = std::exp(complex(0.0, wh));
  I[0] = (eiwh - 1.0) / iw;
  double hk = 1.0;
  for (int k = 1; k < 4; ++k) {
    hk *= h;
    I[k] = (hk * eiwh - double(k) * I[k - 1]) / iw;
  }
  return I;
}

// Newton divided differences through the four points (t_j, f_j), expanded to
// monomial coefficients.  The t_j are panel-local, so magnitudes stay O(h).
std::array<complex, 4> cubic_through(const std::array<double, 4>& t,
                                     const std::array<complex, 4>& f) {
  std::array<complex, 4> dd = f;
  for (int level = 1; level < 4; ++level)
    for (int j = 3; j >= level; --j)
      dd[j] = (dd[j] - dd[j - 1]) / (t[j] - t[j - level]);
  // Expand a0 + a1 (t-t0) + a2 (t-t0)(t-t1) + a3 (t-t0)(t-t1)(t-t2).
  std::array<complex, 4> c{dd[0], 0.0, 0.0, 0.0};
  std::array<complex, 4> prod{1.0, 0.0, 0.0, 0.0};  // running product poly
  for (int j = 1; j < 4; ++j) {
    // prod *= (t - t_{j-1})
    std::array<complex, 4> next{};
    for (int k = 0; k < j; ++k) {
      next[k + 1] += prod[k];
      next[k] -= prod[k] * t[j - 1];
    }
    prod = next;
    for (int k = 0; k <= j; ++k) c[k] += dd[j] * prod[k];
  }
  return c;
}

}  // namespace

PiecewiseCubic::PiecewiseCubic(std::vector<double> xs, std::vector<complex> fs)
    : xs_(std::move(xs)) {
  const std::size_t n = xs_.size();
  if (n < 2 || fs.size() != n)
    throw domain_error("PiecewiseCubic: need matching xs/fs with >= 2 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(xs_[i] > xs_[i - 1]))
      throw domain_error("PiecewiseCubic: xs must be strictly increasing");
  coeff_.resize(n - 1);
  if (n < 4) {
    // Degenerate small grids: linear panels.
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double h = xs_[k + 1] - xs_[k];
      coeff_[k] = {fs[k], (fs[k + 1] - fs[k]) / h, 0.0, 0.0};
    }
    return;
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t i0 = (k == 0) ? 0 : (k + 2 < n ? k - 1 : n - 4);
    std::array<double, 4> t;
    std::array<complex, 4> f;
    for (int j = 0; j < 4; ++j) {
      t[j] = xs_[i0 + j] - xs_[k];
      f[j] = fs[i0 + j];
    }
    coeff_[k] = cubic_through(t, f);
  }
}

complex PiecewiseCubic::integrate_exp(double omega) const {
  complex total{0.0, 0.0};
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
    const double h = xs_[k + 1] - xs_[k];
    const std::array<complex, 4> I = exp_moments(h, omega);
    complex panel = coeff_[k][0] * I[0] + coeff_[k][1] * I[1] +
                    coeff_[k][2] * I[2] + coeff_[k][3] * I[3];
    total += panel * std::exp(complex(0.0, omega * xs_[k]));
  }
  return total;
}

std::vector<complex> PiecewiseCubic::prefix_integrals() const {
  std::vector<complex> P(xs_.size(), complex{0.0, 0.0});
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
    const double h = xs_[k + 1] - xs_[k];
    const complex panel = h * (coeff_[k][0] +
                               h * (coeff_[k][1] / 2.0 +
                                    h * (coeff_[k][2] / 3.0 +
                                         h * coeff_[k][3] / 4.0)));
    P[k + 1] = P[k] + panel;
  }
  return P;
}

complex PiecewiseCubic::integrate_cos(double omega) const {
  return 0.5 * (integrate_exp(omega) + integrate_exp(-omega));
}

complex PiecewiseCubic::integrate_sin(double omega) const {
  return (integrate_exp(omega) - integrate_exp(-omega)) / (2.0 * iu);
}

complex filon_integrate_exp(const std::vector<double>& xs,
                            const std::vector<complex>& fs, double omega) {
  return PiecewiseCubic(xs, fs).integrate_exp(omega);
}

complex filon_integrate(const std::vector<double>& xs,
                        const std::vector<complex>& fs) {
  return PiecewiseCubic(xs, fs).integrate();
}

}  // namespace ts
