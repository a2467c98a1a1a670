#include "threshscatter/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace ts {

namespace {

// Newton iteration on P_n with the usual Chebyshev-like initial guesses.
// Standard Golub-free construction; accurate to ~1e-15 for n up to a few
// thousand, which is far beyond anything the library requests.
QuadRule build_gauss_legendre(int n) {
  if (n < 1) throw domain_error("gauss_legendre: order must be positive");
  QuadRule q;
  q.x.resize(n);
  q.w.resize(n);
  const int mhalf = (n + 1) / 2;
  for (int i = 0; i < mhalf; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.x[i] = -x;
    q.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.w[i] = w;
    q.w[n - 1 - i] = w;
  }
  return q;
}

std::mutex cache_mutex;

}  // namespace

const QuadRule& gauss_legendre(int n) {
  static std::map<int, QuadRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

QuadRule gauss_legendre_ab(int n, double a, double b) {
  const QuadRule& base = gauss_legendre(n);
  QuadRule q;
  q.x.resize(n);
  q.w.resize(n);
  const double mid = 0.5 * (a + b), hl = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.x[i] = mid + hl * base.x[i];
    q.w[i] = hl * base.w[i];
  }
  return q;
}

const QuadRule& gauss_laguerre(int n, double alpha) {
  static std::map<std::pair<int, long long>, QuadRule> cache;
  if (n < 1) throw domain_error("gauss_laguerre: order must be positive");
  if (alpha <= -1.0) throw domain_error("gauss_laguerre: need alpha > -1");
  // Key alpha by its bit pattern scaled to avoid FP-comparison surprises for
  // the handful of alphas we use (half-integers).
  const long long akey = static_cast<long long>(std::llround(alpha * 4096.0));
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find({n, akey});
  if (it == cache.end()) {
    gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(
        gsl_integration_fixed_laguerre, n, 0.0, 1.0, alpha, 0.0);
    if (!ws) throw accuracy_error("gauss_laguerre: table construction failed", 0.0);
    QuadRule q;
    q.x.assign(gsl_integration_fixed_nodes(ws),
               gsl_integration_fixed_nodes(ws) + n);
    q.w.assign(gsl_integration_fixed_weights(ws),
               gsl_integration_fixed_weights(ws) + n);
    gsl_integration_fixed_free(ws);
    it = cache.emplace(std::make_pair(n, akey), std::move(q)).first;
  }
  return it->second;
}

namespace {

struct PanelResult {
  complex value;
  double err;
};

PanelResult panel_estimate(const std::function<complex(double)>& f, double a,
                           double b) {
  complex coarse = integrate_gl(f, a, b, 12);
  complex fine = integrate_gl(f, a, b, 24);
  return {fine, std::abs(fine - coarse)};
}

void adaptive_recurse(const std::function<complex(double)>& f, double a,
                      double b, double tol_abs, int depth, int max_depth,
                      complex& total, double& err_total) {
  PanelResult r = panel_estimate(f, a, b);
  if (r.err <= tol_abs || depth >= max_depth) {
    total += r.value;
    err_total += r.err;
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive_recurse(f, a, mid, 0.5 * tol_abs, depth + 1, max_depth, total, err_total);
  adaptive_recurse(f, mid, b, 0.5 * tol_abs, depth + 1, max_depth, total, err_total);
}

}  // namespace

complex integrate_adaptive(const std::function<complex(double)>& f, double a,
                           double b, double rel_tol, double abs_floor,
                           int max_depth) {
  // First pass to size the absolute tolerance, second pass to refine.
  PanelResult first = panel_estimate(f, a, b);
  double scale = std::max(std::abs(first.value), abs_floor);
  if (scale == 0.0) scale = abs_floor > 0.0 ? abs_floor : 1e-300;
  complex total{0.0, 0.0};
  double err = 0.0;
  adaptive_recurse(f, a, b, rel_tol * scale, 0, max_depth, total, err);
  double final_scale = std::max(std::abs(total), abs_floor);
  if (final_scale > 0.0 && err > 50.0 * rel_tol * final_scale) {
    throw accuracy_error("integrate_adaptive: tolerance not reached",
                         err / final_scale);
  }
  return total;
}

complex integrate_to_infinity(const std::function<complex(double)>& f, double a,
                              double rel_tol, double tail_tol, int max_panels) {
  if (a <= 0.0) throw domain_error("integrate_to_infinity: need a > 0");
  complex total{0.0, 0.0};
  double lo = a;
  for (int k = 0; k < max_panels; ++k) {
    double hi = 2.0 * lo;
    complex part = integrate_adaptive(f, lo, hi, rel_tol, std::abs(total));
    total += part;
    if (k > 2 && std::abs(part) <= tail_tol * std::max(1e-300, std::abs(total)))
      return total;
    lo = hi;
  }
  throw accuracy_error("integrate_to_infinity: tail did not converge",
                       std::abs(a));
}

}  // namespace ts
