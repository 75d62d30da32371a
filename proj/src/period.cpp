#include "geoflow/period.hpp"

#include <cmath>
#include <stdexcept>

#include "geoflow/quadrature.hpp"
#include "geoflow/rootfind.hpp"

namespace geoflow {

namespace {

// Turning point f(r) = c on a bracket, bisection plus Newton polish.  The
// returned point is nudged to the f > c side so the period integrand stays
// real arbitrarily close to it.
double turning_point(const RevolutionProfile& prof, double c, double lo, double hi,
                     double interior) {
  auto g = [&](double r) { return prof.f(r) - c; };
  double r = roots::brent(g, lo, hi, 1e-15);
  for (int i = 0; i < 3; ++i) {
    const Jet2d j = prof.jet(r);
    const double step = (j.f - c) / j.fu;
    if (!std::isfinite(step)) break;
    const double rn = r - step;
    if (rn > lo && rn < hi) r = rn;
  }
  for (int i = 0; i < 64 && g(r) <= 0.0; ++i) r = std::nextafter(r, interior);
  return r;
}

}  // namespace

PeriodAnalyzer::PeriodAnalyzer(RevolutionProfile profile) : prof_(std::move(profile)) {
  // Unique interior maximum assumed; located by scanning f'.
  auto df = [&](double r) { return prof_.df(r); };
  const double eps = prof_.r_end * 1e-9;
  auto zeros = roots::scan_roots(df, eps, prof_.r_end - eps, 1024, 1e-15);
  if (zeros.empty()) throw std::invalid_argument("profile has no interior critical point");
  double best_r = zeros[0], best_f = prof_.f(zeros[0]);
  for (double z : zeros) {
    if (prof_.f(z) > best_f) {
      best_f = prof_.f(z);
      best_r = z;
    }
  }
  r_crit_ = best_r;
  c_crit_ = best_f;
}

PeriodSample PeriodAnalyzer::period(double c) const {
  if (!(c > 0.0 && c < c_crit_))
    throw std::invalid_argument("period: c must lie in (0, c_crit)");
  const double eps = prof_.r_end * 1e-12;
  PeriodSample out;
  out.c = c;
  out.r1 = turning_point(prof_, c, eps, r_crit_, r_crit_);
  out.r2 = turning_point(prof_, c, r_crit_, prof_.r_end - eps, r_crit_);

  // Omega = 2 int_{r1}^{r2} c dr / (f sqrt(f^2 - c^2)); the sine substitution
  // r = m + h sin(phi) regularizes both inverse-square-root endpoints.
  const double m = 0.5 * (out.r1 + out.r2), h = 0.5 * (out.r2 - out.r1);
  auto integrand = [&](double phi) {
    const double r = m + h * std::sin(phi);
    const double f = prof_.f(r);
    const double df2 = (f - c) * (f + c);
    if (df2 <= 0.0) return 0.0;  // ulp-scale sliver beyond the turning point
    return h * std::cos(phi) * c / (f * std::sqrt(df2));
  };
  out.omega = 2.0 * quad::adaptive(integrand, -M_PI_2, M_PI_2, {1e-9, 1e-14, 26, 1e-5, 2e-6});
  return out;
}

PeriodLimits PeriodAnalyzer::limits() const {
  PeriodLimits out;
  // End slope by a geometric ladder toward r_end.
  double slope = 0.0;
  bool diverged = true;
  double prev = prof_.df(prof_.r_end * (1.0 - std::pow(2.0, -10)));
  for (int k = 14; k <= 42; k += 4) {
    slope = prof_.df(prof_.r_end * (1.0 - std::pow(2.0, -k)));
    if (std::abs(slope) > 1e8) break;
    if (std::abs(slope - prev) < 1e-6 * std::max(1.0, std::abs(slope))) {
      diverged = false;
      break;
    }
    prev = slope;
  }
  out.end_slope_infinite = diverged || std::abs(slope) > 1e8;
  out.end_slope = out.end_slope_infinite ? -std::numeric_limits<double>::infinity() : slope;
  if (!out.end_slope_infinite && slope >= 0.0)
    throw std::invalid_argument("profile slope at the incomplete end must be negative");
  out.at_zero = out.end_slope_infinite ? M_PI : M_PI - M_PI / slope;

  const double d2 = prof_.d2f(r_crit_);
  if (!(d2 < 0.0)) throw std::invalid_argument("degenerate maximum: f''(r_crit) >= 0");
  out.at_crit = 2.0 * M_PI / std::sqrt(-d2 * c_crit_);
  return out;
}

std::pair<double, double> PeriodAnalyzer::extrapolated_limits() const {
  auto aitken = [](double a0, double a1, double a2) {
    const double d = a2 - 2 * a1 + a0;
    if (std::abs(d) < 1e-14) return a2;
    return a2 - (a2 - a1) * (a2 - a1) / d;
  };
  const double c0 = c_crit_ * 1e-3;
  const double z0 = period(c0).omega;
  const double z1 = period(c0 / 4).omega;
  const double z2 = period(c0 / 16).omega;
  const double eps = 1e-3;
  const double w0 = period(c_crit_ * (1 - eps)).omega;
  const double w1 = period(c_crit_ * (1 - eps / 4)).omega;
  const double w2 = period(c_crit_ * (1 - eps / 16)).omega;
  return {aitken(z0, z1, z2), aitken(w0, w1, w2)};
}

std::vector<CriticalCircle> PeriodAnalyzer::critical_circles() const {
  const double eps = prof_.r_end * 1e-9;
  auto df = [&](double r) { return prof_.df(r); };
  auto zeros = roots::scan_roots(df, eps, prof_.r_end - eps, 1024, 1e-14);
  std::vector<CriticalCircle> out;
  for (double z : zeros) out.push_back({z, 2.0 * M_PI * prof_.f(z)});
  return out;
}

IndexReport PeriodAnalyzer::index_bound(double dead_band) const {
  IndexReport rep;
  rep.length = 2.0 * M_PI * c_crit_;
  rep.curvature = -prof_.d2f(r_crit_) / c_crit_;
  rep.l_sqrt_k = rep.length * std::sqrt(rep.curvature);
  const double gap = rep.l_sqrt_k - 2.0 * M_PI;
  if (std::abs(gap) < dead_band)
    rep.cls = IndexClass::Undetermined;
  else
    rep.cls = gap > 0.0 ? IndexClass::GreaterThanOne : IndexClass::EqualOne;
  return rep;
}

ClosedGeodesicSearch PeriodAnalyzer::find_closed_geodesic(int scan_points) const {
  ClosedGeodesicSearch out;
  std::vector<double> cs, omegas;
  for (int i = 0; i < scan_points; ++i) {
    const double t = (i + 1.0) / (scan_points + 1.0);
    const double c = c_crit_ * (0.001 + 0.998 * t);
    cs.push_back(c);
    omegas.push_back(period(c).omega);
  }
  double omin = omegas[0], omax = omegas[0];
  for (double w : omegas) {
    omin = std::min(omin, w);
    omax = std::max(omax, w);
  }
  out.omega_min = omin;
  out.omega_max = omax;
  if (omax - omin < 1e-6 * 2.0 * M_PI && std::abs(omin - 2.0 * M_PI) < 1e-6 * 2.0 * M_PI) {
    out.kind = ClosedGeodesicSearch::Kind::DegenerateFamily;
    return out;
  }
  for (size_t i = 0; i + 1 < omegas.size(); ++i) {
    const double g0 = omegas[i] - 2.0 * M_PI, g1 = omegas[i + 1] - 2.0 * M_PI;
    if (g0 == 0.0 || g0 * g1 < 0.0) {
      auto g = [&](double c) { return period(c).omega - 2.0 * M_PI; };
      const double c_star = roots::brent(g, cs[i], cs[i + 1], 1e-13);
      out.roots.push_back(period(c_star));
    }
  }
  out.kind = out.roots.empty() ? ClosedGeodesicSearch::Kind::None
                               : ClosedGeodesicSearch::Kind::Found;
  return out;
}

}  // namespace geoflow
