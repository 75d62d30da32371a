#include "geoflow/curvature_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "geoflow/charts.hpp"
#include "geoflow/quadrature.hpp"

namespace geoflow {

// ---- DiscreteCurve basics ---------------------------------------------------

DiscreteCurve DiscreteCurve::coord_circle(const Vector2d& center, double radius, int n) {
  DiscreteCurve c;
  c.closed = true;
  c.pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    c.pts.emplace_back(center.x() + radius * std::cos(a), center.y() + radius * std::sin(a));
  }
  return c;
}

DiscreteCurve DiscreteCurve::level_circle(double r0, int n) {
  DiscreteCurve c;
  c.closed = true;
  c.v_winding = 1;
  c.pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) c.pts.emplace_back(r0, 2.0 * M_PI * i / n);
  return c;
}

double segment_length(const Chart& chart, const Vector2d& a, const Vector2d& b) {
  const Vector2d mid = 0.5 * (a + b);
  return norm_g(metric_matrix(chart, mid), b - a);
}

double curve_length(const Chart& chart, const DiscreteCurve& c) {
  double len = 0.0;
  const size_t m = c.segments();
  for (size_t i = 0; i < m; ++i)
    len += segment_length(chart, c.vertex(static_cast<long>(i)),
                          c.vertex(static_cast<long>(i) + 1));
  return len;
}

double coord_signed_area(const DiscreteCurve& c) {
  double a = 0.0;
  const size_t m = c.segments();
  for (size_t i = 0; i < m; ++i) {
    const Vector2d p = c.vertex(static_cast<long>(i)), q = c.vertex(static_cast<long>(i) + 1);
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

DiscreteCurve resample(const Chart& chart, const DiscreteCurve& c, size_t n) {
  const size_t m = c.segments();
  std::vector<double> cum(m + 1, 0.0);
  for (size_t i = 0; i < m; ++i)
    cum[i + 1] = cum[i] + segment_length(chart, c.vertex(static_cast<long>(i)),
                                         c.vertex(static_cast<long>(i) + 1));
  const double total = cum[m];
  DiscreteCurve out;
  out.closed = c.closed;
  out.v_winding = c.v_winding;
  const size_t count = c.closed ? n : n + 1;
  out.pts.reserve(count);
  size_t seg = 0;
  const size_t steps = c.closed ? n : n;
  for (size_t i = 0; i < count; ++i) {
    const double target = total * (c.closed ? static_cast<double>(i) / steps
                                            : static_cast<double>(i) / steps);
    while (seg + 1 < m && cum[seg + 1] < target) ++seg;
    const double denom = std::max(cum[seg + 1] - cum[seg], 1e-300);
    const double t = std::min(1.0, std::max(0.0, (target - cum[seg]) / denom));
    const Vector2d p = c.vertex(static_cast<long>(seg)), q = c.vertex(static_cast<long>(seg) + 1);
    out.pts.push_back(p + t * (q - p));
  }
  return out;
}

namespace {
bool segments_intersect(const Vector2d& a, const Vector2d& b, const Vector2d& c,
                        const Vector2d& d) {
  auto cross = [](const Vector2d& u, const Vector2d& v) { return u.x() * v.y() - u.y() * v.x(); };
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}
}  // namespace

bool is_simple(const DiscreteCurve& c) {
  const long m = static_cast<long>(c.segments());
  for (long i = 0; i < m; ++i) {
    const Vector2d a = c.vertex(i), b = c.vertex(i + 1);
    for (long j = i + 2; j < m; ++j) {
      if (c.closed && i == 0 && j == m - 1) continue;  // adjacent through closure
      if (segments_intersect(a, b, c.vertex(j), c.vertex(j + 1))) return false;
    }
  }
  return true;
}

VertexCurvature vertex_curvature(const Chart& chart, const DiscreteCurve& c, long i) {
  const Vector2d pm = c.vertex(i - 1), p0 = c.vertex(i), pp = c.vertex(i + 1);
  const double s1 = segment_length(chart, pm, p0);
  const double s2 = segment_length(chart, p0, pp);
  if (s1 <= 0.0 || s2 <= 0.0)
    throw std::invalid_argument("vertex_curvature: degenerate adjacent segment");
  const Vector2d d1 = p0 - pm, d2 = pp - p0;
  const double denom = s1 * s2 * (s1 + s2);
  const Vector2d grad = (s1 * s1 * d2 + s2 * s2 * d1) / denom;   // dx/ds
  const Vector2d second = 2.0 * (s1 * d2 - s2 * d1) / denom;     // d2x/ds2
  // Covariant acceleration: d2x/ds2 + Gamma(v, v).
  const Vector2d acc = second - geodesic_acceleration(chart, p0, grad);
  const Matrix2d g = metric_matrix(chart, p0);
  const double speed = norm_g(g, grad);
  const Vector2d t_unit = grad / speed;
  const Vector2d nu = left_normal(g, t_unit);
  VertexCurvature out;
  out.normal = nu;
  out.k = dot_g(g, acc, nu) / (speed * speed * speed);
  out.spacing = 0.5 * (s1 + s2);
  return out;
}

double total_geodesic_curvature(const Chart& chart, const DiscreteCurve& c) {
  if (!c.closed) {
    // Trapezoid over the open polyline (endpoints use one-sided neighbors).
    const long m = static_cast<long>(c.n());
    double sum = 0.0;
    std::vector<double> ks(static_cast<size_t>(m), 0.0);
    for (long i = 1; i + 1 < m; ++i) ks[static_cast<size_t>(i)] = vertex_curvature(chart, c, i).k;
    ks[0] = ks[1];
    ks[static_cast<size_t>(m - 1)] = ks[static_cast<size_t>(m - 2)];
    for (long i = 0; i + 1 < m; ++i) {
      const double ds = segment_length(chart, c.vertex(i), c.vertex(i + 1));
      sum += 0.5 * (ks[static_cast<size_t>(i)] + ks[static_cast<size_t>(i + 1)]) * ds;
    }
    return sum;
  }
  const long m = static_cast<long>(c.n());
  std::vector<double> ks(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) ks[static_cast<size_t>(i)] = vertex_curvature(chart, c, i).k;
  double sum = 0.0;
  for (long i = 0; i < m; ++i) {
    const double ds = segment_length(chart, c.vertex(i), c.vertex(i + 1));
    sum += 0.5 * (ks[static_cast<size_t>(i)] + ks[static_cast<size_t>((i + 1) % m)]) * ds;
  }
  return sum;
}

double max_distance_to(const DiscreteCurve& c, const std::vector<Vector2d>& probes) {
  auto point_seg = [](const Vector2d& p, const Vector2d& a, const Vector2d& b) {
    const Vector2d ab = b - a;
    const double t = std::clamp(ab.dot(p - a) / std::max(ab.squaredNorm(), 1e-300), 0.0, 1.0);
    return (p - (a + t * ab)).norm();
  };
  double worst = 0.0;
  for (const auto& p : probes) {
    double best = 1e300;
    for (size_t i = 0; i < c.segments(); ++i)
      best = std::min(best, point_seg(p, c.vertex(static_cast<long>(i)),
                                      c.vertex(static_cast<long>(i) + 1)));
    worst = std::max(worst, best);
  }
  return worst;
}

// ---- curvature integrals ----------------------------------------------------

double curvature_primitive_integral(const Chart& chart, const DiscreteCurve& c, int gauss_order) {
  const auto& rule = quad::gauss_legendre(gauss_order);
  double total = 0.0;
  const size_t m = c.segments();
  for (size_t i = 0; i < m; ++i) {
    const Vector2d a = c.vertex(static_cast<long>(i)), b = c.vertex(static_cast<long>(i) + 1);
    const Vector2d d = b - a;
    double seg = 0.0;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      const Vector2d p = a + 0.5 * (1.0 + rule.nodes[q]) * d;
      const Vector2d form = curvature_primitive(chart, p);
      seg += rule.weights[q] * form.dot(d);
    }
    total += 0.5 * seg;
  }
  return total;
}

namespace {

// Winding of the lifted v-coordinate, for pole corrections.
int v_winding_of(const DiscreteCurve& c) { return c.v_winding; }

}  // namespace

double enclosed_curvature(const Chart& chart, const DiscreteCurve& c) {
  double val = curvature_primitive_integral(chart, c);
  if (const auto pole = chart.pole()) {
    const int w = v_winding_of(c);
    if (w != 0) val += 2.0 * M_PI * pole->fprime0 * w;
  }
  return val;
}

namespace {

// Clips a closed polygon against the half plane n . p >= d (Sutherland-
// Hodgman).  Winding curves are not supported here.
DiscreteCurve clip_halfplane(const DiscreteCurve& c, const Vector2d& n, double d) {
  DiscreteCurve out;
  out.closed = true;
  const long m = static_cast<long>(c.segments());
  for (long i = 0; i < m; ++i) {
    const Vector2d a = c.vertex(i), b = c.vertex(i + 1);
    const double fa = n.dot(a) - d, fb = n.dot(b) - d;
    if (fa >= 0.0) out.pts.push_back(a);
    if ((fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0))
      out.pts.push_back(a + (fa / (fa - fb)) * (b - a));
  }
  return out;
}

}  // namespace

CurvatureIntegral curvature_integral(const Chart& chart, const RegionSpec& region) {
  CurvatureIntegral out;

  if (region.kind == RegionSpec::Kind::WholeDomain) {
    const auto* rev = dynamic_cast<const RevolutionChart*>(&chart);
    if (!rev) throw std::invalid_argument("whole-domain integral needs a revolution chart");
    const double r_end = rev->profile().r_end;
    // 2 pi (f'(0) - f'(r)) as r -> r_end; diverging slope means infinite
    // total curvature.
    double prev = 0.0;
    for (int k = 8; k <= 40; k += 8) {
      const double slope = rev->profile().df(r_end * (1.0 - std::pow(2.0, -k)));
      const double val = 2.0 * M_PI * (rev->pole()->fprime0 - slope);
      out.annulus_partial_sums.push_back(val);
      if (k > 8 && std::abs(val - prev) < 1e-9 * std::max(1.0, std::abs(val))) {
        out.value = val;
        return out;
      }
      prev = val;
    }
    out.unbounded = true;
    return out;
  }

  DiscreteCurve boundary;
  switch (region.kind) {
    case RegionSpec::Kind::CoordDisk:
      boundary = DiscreteCurve::coord_circle(region.center, region.radius,
                                             region.boundary_samples);
      break;
    case RegionSpec::Kind::SubLevelDisk:
      boundary = DiscreteCurve::level_circle(region.radius, region.boundary_samples);
      break;
    case RegionSpec::Kind::Polygon:
      boundary = region.polygon;
      break;
    case RegionSpec::Kind::WholeDomain:
      break;
  }

  // Distance of the region boundary from the incomplete locus.
  double min_locus = 1e300;
  for (const auto& p : boundary.pts) min_locus = std::min(min_locus, chart.locus_distance(p));

  if (min_locus > 1e-9) {
    out.value = enclosed_curvature(chart, boundary);
    return out;
  }

  // Region touches the locus: dyadic collar partial sums.  Supported for
  // charts whose locus is u = 0 (model, corner u-edge); the clip keeps
  // u >= delta.
  if (boundary.v_winding != 0)
    throw std::invalid_argument("collar scan needs a contractible region");
  const bool corner = dynamic_cast<const CornerChart*>(&chart) != nullptr;
  double prev = 0.0;
  for (int k = 1; k <= 40; ++k) {
    const double delta = region.radius * std::pow(2.0, -k);
    DiscreteCurve clipped = clip_halfplane(boundary, Vector2d(1.0, 0.0), delta);
    if (corner && clipped.pts.size() >= 3)
      clipped = clip_halfplane(clipped, Vector2d(0.0, 1.0), delta);
    if (clipped.pts.size() < 3) continue;
    const double val = curvature_primitive_integral(chart, clipped);
    out.annulus_partial_sums.push_back(val);
    if (k > 2 && val > 10.0 * 2.0 * M_PI && val > prev) {
      out.unbounded = true;
      return out;
    }
    if (k > 2 && std::abs(val - prev) < 1e-7 * std::max(1.0, std::abs(val))) {
      out.value = val;
      return out;
    }
    prev = val;
  }
  out.unbounded = true;
  return out;
}

double gauss_bonnet_residual(const Chart& chart, const DiscreteCurve& c) {
  if (!c.closed) throw std::invalid_argument("gauss_bonnet_residual: closed curve required");
  const double area_term = enclosed_curvature(chart, c);
  // The inscribed-polygon k integral carries an O(h^2) bias; one Richardson
  // step against the half-resolution curve removes it.
  const double k_full = total_geodesic_curvature(chart, c);
  DiscreteCurve half;
  half.closed = true;
  half.v_winding = c.v_winding;
  for (size_t i = 0; i < c.pts.size(); i += 2) half.pts.push_back(c.pts[i]);
  const double k_half = total_geodesic_curvature(chart, half);
  const double k_term = (4.0 * k_full - k_half) / 3.0;
  return area_term + k_term - 2.0 * M_PI;
}

double gauss_bonnet_residual(const Chart& chart, const RegionSpec& region) {
  DiscreteCurve boundary;
  if (region.kind == RegionSpec::Kind::CoordDisk)
    boundary = DiscreteCurve::coord_circle(region.center, region.radius,
                                           region.boundary_samples);
  else if (region.kind == RegionSpec::Kind::SubLevelDisk)
    boundary = DiscreteCurve::level_circle(region.radius, region.boundary_samples);
  else if (region.kind == RegionSpec::Kind::Polygon)
    boundary = region.polygon;
  else
    throw std::invalid_argument("gauss_bonnet_residual: unsupported region");
  return gauss_bonnet_residual(chart, boundary);
}

}  // namespace geoflow
