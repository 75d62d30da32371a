#pragma once

#include <vector>

#include "geoflow/chart.hpp"

namespace geoflow {

// Oriented polyline in lifted chart coordinates (the angular coordinate of a
// periodic chart is not wrapped).  A closed curve that winds around the
// periodic direction closes onto first-vertex + (0, 2 pi v_winding).
struct DiscreteCurve {
  std::vector<Vector2d> pts;
  bool closed = true;
  int v_winding = 0;

  size_t n() const { return pts.size(); }
  size_t segments() const { return closed ? pts.size() : pts.size() - 1; }

  Vector2d closure_offset() const { return Vector2d(0.0, 2.0 * M_PI * v_winding); }

  Vector2d vertex(long i) const {
    const long m = static_cast<long>(pts.size());
    if (!closed) return pts[static_cast<size_t>(std::clamp(i, 0l, m - 1))];
    long k = i % m;
    if (k < 0) k += m;
    const double wraps = std::floor(static_cast<double>(i) / m);
    return pts[static_cast<size_t>(k)] + wraps * closure_offset();
  }

  // Circle in coordinates, counterclockwise.
  static DiscreteCurve coord_circle(const Vector2d& center, double radius, int n);

  // Circle u = r0 of a periodic chart, traversed with increasing v
  // (v_winding = +1).
  static DiscreteCurve level_circle(double r0, int n);
};

// Chord length of a segment measured with the metric at its midpoint.
double segment_length(const Chart& chart, const Vector2d& a, const Vector2d& b);

double curve_length(const Chart& chart, const DiscreteCurve& c);

// Signed coordinate area (shoelace).  Positive for counterclockwise simple
// polygons; meaningless for winding curves.
double coord_signed_area(const DiscreteCurve& c);

// Arc-length resampling to n vertices (linear interpolation in coordinates).
DiscreteCurve resample(const Chart& chart, const DiscreteCurve& c, size_t n);

// Self-intersection test over non-adjacent segment pairs.
bool is_simple(const DiscreteCurve& c);

struct VertexCurvature {
  double k = 0.0;        // signed geodesic curvature wrt the left normal
  Vector2d normal;       // metric-unit left normal
  double spacing = 0.0;  // mean adjacent chord length
};

// Discrete estimate of the covariant curvature vector at vertex i: coordinate
// second difference plus the Christoffel correction, projected on the left
// normal.  For a curve traversed with its enclosed region on the left the
// sign convention makes convex loops positive.
VertexCurvature vertex_curvature(const Chart& chart, const DiscreteCurve& c, long i);

// Trapezoid integral of k ds over the curve.
double total_geodesic_curvature(const Chart& chart, const DiscreteCurve& c);

// Hausdorff-style asymmetric distance max_p min_seg dist(p, polyline).
double max_distance_to(const DiscreteCurve& c, const std::vector<Vector2d>& probes);

}  // namespace geoflow
