#pragma once

#include <optional>
#include <vector>

#include "geoflow/charts.hpp"

namespace geoflow {

// Angular period analysis of geodesics on a revolution chart.  A geodesic
// with Clairaut constant c in (0, c_crit) oscillates between the turning
// radii f(r1) = c = f(r2) and advances by Omega_c in the angle per
// oscillation.
struct PeriodSample {
  double c = 0.0;
  double omega = 0.0;
  double r1 = 0.0, r2 = 0.0;
};

struct PeriodLimits {
  double at_zero = 0.0;        // lim Omega_c as c -> 0: pi - pi/f'(r_end)
  double at_crit = 0.0;        // 2 pi / sqrt(-f''(r_crit) c_crit)
  double end_slope = 0.0;      // f'(r_end); -inf reported via the flag
  bool end_slope_infinite = false;
};

struct CriticalCircle {
  double r0 = 0.0;
  double length = 0.0;  // 2 pi f(r0)
};

enum class IndexClass { GreaterThanOne, EqualOne, Undetermined };

struct IndexReport {
  IndexClass cls = IndexClass::Undetermined;
  double length = 0.0;       // L = 2 pi c_crit
  double curvature = 0.0;    // K on the critical circle
  double l_sqrt_k = 0.0;
};

struct ClosedGeodesicSearch {
  enum class Kind { Found, None, DegenerateFamily };
  Kind kind = Kind::None;
  std::vector<PeriodSample> roots;  // Omega = 2 pi solutions, if any
  double omega_min = 0.0, omega_max = 0.0;  // scanned range when none found
};

class PeriodAnalyzer {
 public:
  explicit PeriodAnalyzer(RevolutionProfile profile);

  double c_crit() const { return c_crit_; }
  double r_crit() const { return r_crit_; }

  PeriodSample period(double c) const;
  PeriodLimits limits() const;

  // Numeric limits recovered from Omega_c samples (Aitken extrapolation),
  // for cross-checking the closed forms.
  std::pair<double, double> extrapolated_limits() const;

  std::vector<CriticalCircle> critical_circles() const;
  IndexReport index_bound(double dead_band = 1e-6) const;
  ClosedGeodesicSearch find_closed_geodesic(int scan_points = 41) const;

  const RevolutionProfile& profile() const { return prof_; }

 private:
  RevolutionProfile prof_;
  double r_crit_ = 0.0, c_crit_ = 0.0;
};

}  // namespace geoflow
