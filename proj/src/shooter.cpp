#include "geoflow/shooter.hpp"

#include <cmath>
#include <stdexcept>

#include "geoflow/rootfind.hpp"

namespace geoflow {

namespace {
AffineMap linear_map(double a11, double a12, double a21, double a22) {
  AffineMap m;
  m.A << a11, a12, a21, a22;
  return m;
}
}  // namespace

PolygonSystem PolygonSystem::square() {
  PolygonSystem s;
  s.chart = std::make_shared<ProductSquareChart>();
  s.launch.point = {0.0, 0.0};
  s.launch.dir = {0.0, 1.0};
  s.launch.reflection = linear_map(-1, 0, 0, 1);
  s.target.point = {0.0, 0.0};
  s.target.dir = {1.0, 1.0};
  s.target.reflection = linear_map(0, 1, 1, 0);
  s.ref_dir = {1.0, 0.0};
  s.order = 4;
  s.t_min = 0.01;
  s.t_max = 0.985;
  s.name = "square";
  return s;
}

PolygonSystem PolygonSystem::triangle() {
  PolygonSystem s;
  s.chart = std::make_shared<ProductTriangleChart>();
  s.launch.point = {0.0, 0.0};
  s.launch.dir = {1.0, 1.0};
  s.launch.reflection = linear_map(0, 1, 1, 0);
  // Mirror y = -x/2, the fixed line of (x, y) -> (x, -x-y).
  s.target.point = {0.0, 0.0};
  s.target.dir = {2.0, -1.0};
  s.target.reflection = linear_map(1, 0, -1, -1);
  s.ref_dir = {1.0, -1.0};
  s.order = 3;
  s.t_min = 0.01;
  s.t_max = 0.47;
  s.name = "triangle";
  return s;
}

PolygonSystem PolygonSystem::hexagon() {
  PolygonSystem s;
  s.chart = std::make_shared<ProductHexagonChart>();
  s.launch.point = {0.0, 0.0};
  s.launch.dir = {0.0, 1.0};
  s.launch.reflection = linear_map(-1, 0, 1, 1);  // (x,y) -> (-x, x+y)
  s.target.point = {0.0, 0.0};
  s.target.dir = {1.0, 1.0};
  s.target.reflection = linear_map(0, 1, 1, 0);
  s.ref_dir = {1.0, 0.3};
  s.order = 6;
  s.t_min = 0.01;
  s.t_max = 0.97;
  s.name = "hexagon";
  return s;
}

PolygonSystem PolygonSystem::by_name(const std::string& name) {
  if (name == "square") return square();
  if (name == "triangle") return triangle();
  if (name == "hexagon") return hexagon();
  throw std::invalid_argument("unknown polygon system '" + name + "'");
}

ShootResult shoot(const PolygonSystem& sys, double t) { return shoot(sys, t, 0.02); }

ShootResult shoot(const PolygonSystem& sys, double t, double max_step) {
  ShootResult out;
  out.t = t;
  out.launch_point = sys.launch.point + t * sys.launch.dir;
  const Matrix2d g = metric_matrix(*sys.chart, out.launch_point);

  // Metric-orthogonal direction to the launch mirror, on the wedge side.
  const Vector2d gd = g * sys.launch.dir;
  Vector2d v(gd.y(), -gd.x());
  if (v.dot(sys.ref_dir) < 0.0) v = -v;

  GeodesicState st;
  st.p = out.launch_point;
  st.v = v;
  st = normalized(*sys.chart, st);

  IntegrateControls c;
  c.max_length = 40.0;
  c.rel_tol = c.abs_tol = 1e-12;
  c.max_step = max_step;
  Event cross;
  cross.id = "target";
  cross.fn = [&sys](const GeodesicState& s) { return sys.target.side(s.p); };
  cross.stop = true;
  c.events.push_back(cross);

  out.arc = integrate(*sys.chart, st, c);
  if (out.arc.status != Trajectory::Status::StoppedAtEvent) return out;

  const GeodesicState& hit = out.arc.events[0].state;
  out.hit_point = hit.p;
  out.angle = angle_g(metric_matrix(*sys.chart, hit.p), hit.v, sys.target.dir);
  out.ok = true;
  return out;
}

OrthogonalArc find_orthogonal(const PolygonSystem& sys, int scan_points, double angle_tol) {
  OrthogonalArc out;
  double lo = 0.0, hi = 0.0;
  bool have_lo = false;
  for (int i = 0; i < scan_points; ++i) {
    const double t = sys.t_min + (sys.t_max - sys.t_min) * i / (scan_points - 1.0);
    const ShootResult r = shoot(sys, t);
    if (!r.ok) continue;
    out.scan.emplace_back(t, r.angle);
    if (!have_lo) {
      if (r.angle < M_PI_2) {
        lo = t;
        have_lo = true;
      }
      continue;
    }
    if (r.angle > M_PI_2) {
      hi = t;
      break;
    }
    lo = t;
  }
  if (!have_lo || hi == 0.0) return out;

  auto gap = [&](double t) { return shoot(sys, t).angle - M_PI_2; };
  double t_star = roots::brent(gap, lo, hi, 1e-13);
  ShootResult best = shoot(sys, t_star);
  if (!best.ok || std::abs(best.angle - M_PI_2) > angle_tol) {
    // One more bisection sweep in case brent landed on a noisy profile.
    t_star = roots::bisect(gap, lo, hi, 1e-14);
    best = shoot(sys, t_star);
  }
  if (!best.ok || std::abs(best.angle - M_PI_2) > angle_tol) return out;
  out.found = true;
  out.t_star = t_star;
  // Dense re-shoot so the assembled polyline hugs the true geodesic.
  out.arc = shoot(sys, t_star, 0.002);
  return out;
}

ClosedLoop close_by_reflection(const PolygonSystem& sys, const Trajectory& arc) {
  if (arc.samples.size() < 3)
    throw std::invalid_argument("close_by_reflection: arc too short");
  std::vector<Vector2d> fund;
  fund.reserve(arc.samples.size());
  for (const auto& s : arc.samples) fund.push_back(s.p);

  // Degenerate arcs collapsed onto a mirror cannot be doubled.
  double off_launch = 0.0, off_target = 0.0;
  for (const auto& p : fund) {
    off_launch = std::max(off_launch, std::abs(sys.launch.side(p)));
    off_target = std::max(off_target, std::abs(sys.target.side(p)));
  }
  if (off_launch < 1e-9 || off_target < 1e-9)
    throw std::invalid_argument("close_by_reflection: arc lies on a symmetry line");

  // Double across the target mirror: fund runs launch -> target, the
  // reflected reverse runs target -> reflected launch point.
  std::vector<Vector2d> doubled = fund;
  for (size_t i = arc.samples.size() - 1; i-- > 0;)
    doubled.push_back(sys.target.reflection(fund[i]));

  // Rotate the doubled arc around the group: rho = sigma_target sigma_launch.
  AffineMap rho;
  rho.A = sys.target.reflection.A * sys.launch.reflection.A;
  rho.b = sys.target.reflection.A * sys.launch.reflection.b + sys.target.reflection.b;

  ClosedLoop out;
  out.symmetry_order = sys.order;
  std::vector<Vector2d> pts;
  AffineMap acc;  // identity
  Vector2d last_end = Vector2d::Zero();
  double join_gap = 0.0;
  for (int j = 0; j < sys.order; ++j) {
    if (j > 0) join_gap = std::max(join_gap, (acc(doubled.front()) - last_end).norm());
    for (size_t i = 0; i + 1 < doubled.size(); ++i) pts.push_back(acc(doubled[i]));
    last_end = acc(doubled.back());
    const AffineMap next{acc.A * rho.A, acc.A * rho.b + acc.b};
    acc = next;
  }
  join_gap = std::max(join_gap, (acc(doubled.front()) - pts.front()).norm());
  out.max_join_gap = join_gap;

  DiscreteCurve loop;
  loop.closed = true;
  // Drop consecutive duplicates from the mirror fixed points.
  for (const auto& p : pts)
    if (loop.pts.empty() || (loop.pts.back() - p).norm() > 1e-12) loop.pts.push_back(p);
  if ((loop.pts.back() - loop.pts.front()).norm() < 1e-12) loop.pts.pop_back();
  out.loop = std::move(loop);
  // The integrator's own arc length is far more accurate than polyline
  // chord sums.
  out.length = 2.0 * sys.order * arc.length();
  out.embedded = is_simple(out.loop);
  return out;
}

std::vector<ConvexitySample> convexity_probe(const PolygonSystem& sys, const Trajectory& arc) {
  std::vector<ConvexitySample> out;
  out.reserve(arc.samples.size());
  for (const auto& s : arc.samples) {
    if (std::abs(s.v.x()) < 1e-6) continue;
    const Vector2d a = geodesic_acceleration(*sys.chart, s.p, s.v);
    ConvexitySample cs;
    cs.p = s.p;
    cs.dydx = s.v.y() / s.v.x();
    cs.d2ydx2 = (a.y() * s.v.x() - a.x() * s.v.y()) / std::pow(s.v.x(), 3);
    out.push_back(cs);
  }
  return out;
}

}  // namespace geoflow
