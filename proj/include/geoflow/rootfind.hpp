#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace geoflow::roots {

// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
template <class F>
double brent(const F& f, double a, double b, double xtol = 1e-14, int max_iter = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw std::invalid_argument("brent: endpoints do not bracket a root");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = m; e = m;
    } else {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double r = fb / fc, t = fa / fc;
        p = s * (2.0 * m * t * (t - r) - (b - a) * (r - 1.0));
        q = (t - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = m; e = m;
      }
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) { c = a; fc = fa; d = b - a; e = d; }
  }
  return b;
}

// All sign-change roots of f on [a, b] found by an n-point scan + Brent.
template <class F>
std::vector<double> scan_roots(const F& f, double a, double b, int n = 512, double xtol = 1e-13) {
  std::vector<double> out;
  double x0 = a, f0 = f(a);
  for (int i = 1; i <= n; ++i) {
    const double x1 = a + (b - a) * i / n;
    const double f1 = f(x1);
    if (f0 == 0.0) out.push_back(x0);
    else if (f0 * f1 < 0.0) out.push_back(brent(f, x0, x1, xtol));
    x0 = x1; f0 = f1;
  }
  if (f0 == 0.0) out.push_back(x0);
  return out;
}

// Golden-section minimizer; f unimodal on [a, b].
template <class F>
double golden_min(const F& f, double a, double b, double xtol = 1e-10) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Simple bisection refinement when only sign information is reliable.
template <class F>
double bisect(const F& f, double a, double b, double xtol = 1e-14, int max_iter = 200) {
  double fa = f(a);
  if (fa == 0.0) return a;
  for (int i = 0; i < max_iter && b - a > xtol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa > 0) == (fm > 0)) { a = m; fa = fm; } else { b = m; }
  }
  return 0.5 * (a + b);
}

}  // namespace geoflow::roots
