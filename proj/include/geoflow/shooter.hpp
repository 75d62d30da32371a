#pragma once

#include <memory>
#include <string>
#include <vector>

#include "geoflow/charts.hpp"
#include "geoflow/curve.hpp"
#include "geoflow/geodesic.hpp"

namespace geoflow {

// Mirror line of a dihedral isometry group, through the centroid.
struct MirrorLine {
  Vector2d point = Vector2d::Zero();
  Vector2d dir = Vector2d::UnitX();
  AffineMap reflection;

  double side(const Vector2d& p) const {
    const Vector2d d = p - point;
    return dir.x() * d.y() - dir.y() * d.x();
  }
};

// Shooting setup on a polygon chart: geodesics leave the launch mirror
// orthogonally and are cut at the first crossing of the target mirror; the
// composite of the two reflections is a rotation of the given order.
struct PolygonSystem {
  std::shared_ptr<Chart> chart;
  MirrorLine launch, target;
  Vector2d ref_dir = Vector2d::UnitX();  // selects the wedge-side normal
  int order = 4;
  double t_min = 0.01, t_max = 0.95;
  std::string name;

  static PolygonSystem square();
  static PolygonSystem triangle();
  static PolygonSystem hexagon();
  static PolygonSystem by_name(const std::string& name);
};

struct ShootResult {
  double t = 0.0;          // launch parameter along the mirror
  Vector2d launch_point;
  Vector2d hit_point;
  double angle = 0.0;      // metric angle with the target mirror direction
  Trajectory arc;
  bool ok = false;         // false when truncated before reaching the target
};

ShootResult shoot(const PolygonSystem& sys, double t);
ShootResult shoot(const PolygonSystem& sys, double t, double max_step);

struct OrthogonalArc {
  bool found = false;
  double t_star = 0.0;
  ShootResult arc;
  std::vector<std::pair<double, double>> scan;  // (t, angle) profile
};

OrthogonalArc find_orthogonal(const PolygonSystem& sys, int scan_points = 64,
                              double angle_tol = 1e-8);

struct ClosedLoop {
  DiscreteCurve loop;
  bool embedded = false;
  double length = 0.0;
  int symmetry_order = 0;
  double max_join_gap = 0.0;
};

// Assembles the closed loop from the quarter arc by reflecting across the
// two mirrors; throws when the arc is degenerate (lies on a mirror).
ClosedLoop close_by_reflection(const PolygonSystem& sys, const Trajectory& arc);

struct ConvexitySample {
  Vector2d p;
  double dydx = 0.0;
  double d2ydx2 = 0.0;
};

// Samples dy/dx and d2y/dx2 along a shot arc (diagnostic for the convexity
// lemmas; vertical-tangent samples are skipped).
std::vector<ConvexitySample> convexity_probe(const PolygonSystem& sys, const Trajectory& arc);

}  // namespace geoflow
