#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace geoflow::quad {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n; accurate to machine eps.
inline const GaussRule& gauss_legendre(int n) {
  static thread_local std::vector<GaussRule> cache(65);
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: order out of range");
  GaussRule& r = cache[static_cast<size_t>(n)];
  if (!r.nodes.empty()) return r;
  r.nodes.resize(static_cast<size_t>(n));
  r.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[static_cast<size_t>(i)] = -x;
    r.nodes[static_cast<size_t>(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[static_cast<size_t>(i)] = w;
    r.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return r;
}

template <class F>
double fixed_gauss(const F& f, double a, double b, int n) {
  const GaussRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i)
    s += r.weights[i] * f(mid + half * r.nodes[i]);
  return s * half;
}

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_depth = 40;
  // Intervals narrower than this fraction of the full range are accepted
  // as-is; their defect is tracked instead of refined (rounding staircases
  // in near-singular integrands cannot be refined away).
  double min_width_frac = 1e-6;
  // Acceptable total unresolved defect, relative to the result; zero means
  // ten times rel_tol.
  double max_unresolved_rel = 0.0;
};

namespace detail {
template <class F>
double adapt(const F& f, double a, double b, double whole, double tol, int depth,
             const AdaptiveOptions& opt, double min_width, double& unresolved) {
  const double m = 0.5 * (a + b);
  const double left = fixed_gauss(f, a, m, 16);
  const double right = fixed_gauss(f, m, b, 16);
  const double err = std::abs(left + right - whole);
  if (err < tol || depth >= opt.max_depth || (b - a) < min_width) {
    if (err >= tol) unresolved += err;
    return left + right;
  }
  return adapt(f, a, m, left, 0.5 * tol, depth + 1, opt, min_width, unresolved) +
         adapt(f, m, b, right, 0.5 * tol, depth + 1, opt, min_width, unresolved);
}
}  // namespace detail

// Adaptive Gauss quadrature.  Throws when the sum of unresolved interval
// defects exceeds ten times the requested tolerance.
template <class F>
double adaptive(const F& f, double a, double b, AdaptiveOptions opt = {}) {
  if (a == b) return 0.0;
  const double whole = fixed_gauss(f, a, b, 16);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(whole));
  double unresolved = 0.0;
  const double v = detail::adapt(f, a, b, whole, tol, 0, opt, opt.min_width_frac * (b - a),
                                 unresolved);
  const double cap = opt.max_unresolved_rel > 0.0
                         ? opt.max_unresolved_rel * std::abs(v)
                         : 10.0 * std::max(opt.abs_tol, opt.rel_tol * std::abs(v));
  if (unresolved > cap) throw std::runtime_error("adaptive quadrature failed to converge");
  return v;
}

// tanh-sinh (double exponential) rule for integrable endpoint singularities.
// The integrand receives the node together with its exact distances to both
// endpoints, so 1/sqrt(x - a)-type factors can be evaluated without
// cancellation.
template <class F>
double tanh_sinh_sing(const F& f, double a, double b, double rel_tol = 1e-10) {
  const double half = 0.5 * (b - a);
  auto g = [&](double t) {
    const double z = 0.5 * M_PI * std::sinh(t);
    // 1 -+ tanh(z) without cancellation:
    const double em = 2.0 / (1.0 + std::exp(2.0 * z));   // 1 - tanh z
    const double ep = 2.0 / (1.0 + std::exp(-2.0 * z));  // 1 + tanh z
    const double w = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(z), 2);
    const double da = half * ep, db = half * em;
    if (da <= 0.0 || db <= 0.0) return 0.0;
    double x = (da < db) ? a + da : b - db;
    // Keep the advisory node strictly interior; singular factors should use
    // the exact distances da/db.
    if (x <= a) x = std::nextafter(a, b);
    if (x >= b) x = std::nextafter(b, a);
    return w * f(x, da, db);
  };
  const double tmax = 6.6;
  double h = 1.0;
  double sum = g(0.0);
  for (double t = h; t < tmax; t += h) sum += g(t) + g(-t);
  double prev = sum * h;
  for (int level = 1; level <= 11; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t < tmax; t += 2.0 * h) add += g(t) + g(-t);
    sum += add;
    const double cur = sum * h;
    if (level >= 3 && std::abs(cur - prev) <= rel_tol * std::abs(cur) + 1e-300) return cur * half;
    prev = cur;
  }
  return prev * half;
}

template <class F>
double tanh_sinh(const F& f, double a, double b, double rel_tol = 1e-10) {
  return tanh_sinh_sing([&](double x, double, double) { return f(x); }, a, b, rel_tol);
}

}  // namespace geoflow::quad
