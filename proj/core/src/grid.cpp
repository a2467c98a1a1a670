#include "threshscatter/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "threshscatter/filon.hpp"
#include "threshscatter/quadrature.hpp"

namespace ts {

GridSpec default_grid_spec() {
  GridSpec spec;
  if (const char* env = std::getenv("THRESHSCATTER_GRID_N")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end && *end == '\0' && n >= 8 && n <= (1 << 22)) spec.n = int(n);
  }
  return spec;
}

std::vector<double> log_grid(const GridSpec& spec) {
  if (spec.n < 2 || spec.rmin <= 0.0 || spec.rmax <= spec.rmin)
    throw domain_error("log_grid: invalid grid spec");
  std::vector<double> r(spec.n);
  const double lr0 = std::log(spec.rmin);
  const double dl = (std::log(spec.rmax) - lr0) / (spec.n - 1);
  for (int i = 0; i < spec.n; ++i) r[i] = std::exp(lr0 + dl * i);
  r.front() = spec.rmin;
  r.back() = spec.rmax;
  return r;
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<complex> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n) throw domain_error("CubicSpline: bad sizes");
  y2_.assign(n, complex{0.0, 0.0});
  if (n == 2) return;
  // Tridiagonal solve for natural spline second derivatives.
  std::vector<complex> u(n, complex{0.0, 0.0});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (xs_[i] - xs_[i - 1]) / (xs_[i + 1] - xs_[i - 1]);
    const complex p = sig * y2_[i - 1] + 2.0;
    y2_[i] = (sig - 1.0) / p;
    complex d = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]) -
                (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
    u[i] = (6.0 * d / (xs_[i + 1] - xs_[i - 1]) - sig * u[i - 1]) / p;
  }
  y2_[n - 1] = complex{0.0, 0.0};
  for (std::size_t k = n - 1; k-- > 0;) y2_[k] = y2_[k] * y2_[k + 1] + u[k];
}

complex CubicSpline::operator()(double x) const {
  const std::size_t n = xs_.size();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t hi = std::min<std::size_t>(
      n - 1, std::max<std::size_t>(1, std::size_t(it - xs_.begin())));
  std::size_t lo = hi - 1;
  const double h = xs_[hi] - xs_[lo];
  const double a = (xs_[hi] - x) / h, b = (x - xs_[lo]) / h;
  return a * ys_[lo] + b * ys_[hi] +
         ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * (h * h) / 6.0;
}

RadialProfile::RadialProfile(int m, int ell, double delta,
                             std::vector<double> r, std::vector<complex> f)
    : m_(m), ell_(ell), delta_(delta), r_(std::move(r)), f_(std::move(f)) {
  if (m_ < 3) throw domain_error("RadialProfile: need m >= 3");
  if (ell_ < 0) throw domain_error("RadialProfile: need ell >= 0");
  if (r_.size() != f_.size() || r_.size() < 4)
    throw domain_error("RadialProfile: need >= 4 matching samples");
  for (std::size_t i = 1; i < r_.size(); ++i)
    if (!(r_[i] > r_[i - 1]))
      throw domain_error("RadialProfile: radii must be strictly increasing");
  if (r_.front() <= 0.0) throw domain_error("RadialProfile: radii must be positive");
  spline_ = CubicSpline(r_, f_);
}

RadialProfile RadialProfile::sample(int m, int ell, double delta,
                                    const std::vector<double>& r,
                                    const std::function<complex(double)>& f) {
  std::vector<complex> vals(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) vals[i] = f(r[i]);
  return RadialProfile(m, ell, delta, r, std::move(vals));
}

complex RadialProfile::eval(double s) const {
  s = std::abs(s);
  if (s >= r_.front() && s <= r_.back()) return spline_(s);
  if (s > r_.back()) return complex{0.0, 0.0};
  // Quadratic through the first three samples; adequate because the grid
  // starts at a radius far below every other length scale in play.
  const double x0 = r_[0], x1 = r_[1], x2 = r_[2];
  const complex f0 = f_[0], f1 = f_[1], f2 = f_[2];
  const complex d01 = (f1 - f0) / (x1 - x0);
  const complex d12 = (f2 - f1) / (x2 - x1);
  const complex d012 = (d12 - d01) / (x2 - x0);
  return f0 + d01 * (s - x0) + d012 * (s - x0) * (s - x1);
}

bool RadialProfile::is_real(double tol) const {
  double m = 0.0;
  for (const complex& v : f_) m = std::max(m, std::abs(v));
  for (const complex& v : f_)
    if (std::abs(v.imag()) > tol * std::max(1.0, m)) return false;
  return true;
}

bool RadialProfile::tail_below(double tol) const {
  double m = 0.0;
  for (const complex& v : f_) m = std::max(m, std::abs(v));
  if (m == 0.0) return true;
  return std::abs(f_.back()) <= tol * m;
}

void RadialProfile::refresh() { spline_ = CubicSpline(r_, f_); }

complex integrate_radial(const RadialProfile& p) {
  const int m = p.dimension();
  // Head [0, rmin]: the integrand f r^{m-1} vanishes at 0 at least like
  // r^{m-1}; a short Gauss panel on the extension handles it.
  complex head = integrate_gl(
      [&](double s) { return p.eval(s) * std::pow(s, m - 1); }, 0.0,
      p.radii().front(), 16);
  std::vector<complex> g(p.radii().size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = p.values()[i] * std::pow(p.radii()[i], m - 1);
  return head + filon_integrate(p.radii(), g);
}

double angular_p_factor(int m, int ell, double p) {
  if (ell == 0) return sphere_area(m);
  if (m != 3) throw domain_error("angular_p_factor: ell > 0 only for m = 3");
  // 2 pi int_{-1}^{1} |P_ell(c)|^p dc with unnormalized P_1 = c,
  // P_2 = (3c^2 - 1)/2.
  if (ell == 1) return 4.0 * pi / (p + 1.0);
  if (ell == 2) {
    auto f = [&](double c) {
      return complex(std::pow(std::abs(0.5 * (3.0 * c * c - 1.0)), p), 0.0);
    };
    return 2.0 * pi * integrate_adaptive(f, -1.0, 1.0, 1e-12, 1.0).real();
  }
  throw domain_error("angular_p_factor: ell <= 2 supported");
}

double norm_lp(const RadialProfile& p, double pexp) {
  if (pexp < 1.0) throw domain_error("norm_lp: need p >= 1");
  const int m = p.dimension();
  std::vector<complex> g(p.radii().size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = std::pow(std::abs(p.values()[i]), pexp) *
           std::pow(p.radii()[i], m - 1);
  complex head = integrate_gl(
      [&](double s) {
        return complex(std::pow(std::abs(p.eval(s)), pexp) * std::pow(s, m - 1),
                       0.0);
      },
      0.0, p.radii().front(), 16);
  double radial = (head + filon_integrate(p.radii(), g)).real();
  return std::pow(angular_p_factor(m, p.sector(), pexp) * radial, 1.0 / pexp);
}

complex inner_product(const RadialProfile& f, const RadialProfile& g) {
  if (f.dimension() != g.dimension() || f.sector() != g.sector())
    throw domain_error("inner_product: mismatched sector or dimension");
  const int m = f.dimension();
  // Common grid: use f's grid and evaluate g through its spline.
  std::vector<complex> prod(f.radii().size());
  for (std::size_t i = 0; i < prod.size(); ++i)
    prod[i] = std::conj(f.values()[i]) * g.eval(f.radii()[i]) *
              std::pow(f.radii()[i], m - 1);
  complex head = integrate_gl(
      [&](double s) {
        return std::conj(f.eval(s)) * g.eval(s) * std::pow(s, m - 1);
      },
      0.0, f.radii().front(), 16);
  return angular_p_factor(m, f.sector(), 2.0) * (head + filon_integrate(f.radii(), prod));
}

RadialProfile multiply_profiles(const RadialProfile& a, const RadialProfile& b) {
  if (a.dimension() != b.dimension())
    throw domain_error("multiply_profiles: mismatched dimension");
  if (a.sector() != 0 && b.sector() != 0)
    throw domain_error("multiply_profiles: at most one factor may have ell > 0");
  std::vector<complex> prod(a.radii().size());
  for (std::size_t i = 0; i < prod.size(); ++i)
    prod[i] = a.values()[i] * b.eval(a.radii()[i]);
  return RadialProfile(a.dimension(), a.sector() + b.sector(),
                       a.decay_exponent() + b.decay_exponent(), a.radii(),
                       std::move(prod));
}

void write_profile(const RadialProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("write_profile: cannot open " + path);
  char buf[128];
  std::snprintf(buf, sizeof buf, "# threshscatter profile m=%d ell=%d delta=%.17g\n",
                p.dimension(), p.sector(), p.decay_exponent());
  out << buf;
  const bool real = p.is_real(0.0);
  for (std::size_t i = 0; i < p.radii().size(); ++i) {
    if (real)
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.radii()[i],
                    p.values()[i].real());
    else
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.radii()[i],
                    p.values()[i].real(), p.values()[i].imag());
    out << buf;
  }
}

RadialProfile read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("read_profile: cannot open " + path);
  std::string header;
  std::getline(in, header);
  int m = 0, ell = -1;
  double delta = 0.0;
  if (std::sscanf(header.c_str(),
                  "# threshscatter profile m=%d ell=%d delta=%lg", &m, &ell,
                  &delta) != 3)
    throw io_error("read_profile: bad header in " + path);
  std::vector<double> r;
  std::vector<complex> f;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double rr, re, im = 0.0;
    if (!(ls >> rr >> re)) throw io_error("read_profile: bad data line");
    ls >> im;
    r.push_back(rr);
    f.push_back(complex{re, im});
  }
  return RadialProfile(m, ell, delta, std::move(r), std::move(f));
}

}  // namespace ts
