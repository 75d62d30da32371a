#include "geoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geoflow/geodesic.hpp"
#include "geoflow/quadrature.hpp"
#include "geoflow/rootfind.hpp"

namespace geoflow {

namespace {

struct VertexData {
  double k = 0.0;
  double K = 1.0;
  Vector2d velocity = Vector2d::Zero();  // (k/K) nu
  double vnorm = 0.0;                    // metric norm of the velocity
};

std::vector<VertexData> vertex_velocities(const Chart& chart, const DiscreteCurve& c,
                                          double& max_k) {
  const long m = static_cast<long>(c.n());
  std::vector<VertexData> out(static_cast<size_t>(m));
  max_k = 0.0;
  for (long i = 0; i < m; ++i) {
    const bool interior = c.closed || (i > 0 && i + 1 < m);
    VertexData d;
    if (interior) {
      const VertexCurvature vc = vertex_curvature(chart, c, i);
      d.k = vc.k;
      d.K = chart.gauss(c.pts[static_cast<size_t>(i)]);
      if (!(d.K > 0.0))
        throw std::runtime_error("flow requires K > 0 along the curve");
      d.velocity = (d.k / d.K) * vc.normal;
      d.vnorm = std::abs(d.k) / d.K;  // normal is metric-unit
    }
    out[static_cast<size_t>(i)] = d;
    max_k = std::max(max_k, std::abs(d.k));
  }
  if (!c.closed && m >= 3) {
    // Endpoints ride along with their neighbours' speed.
    out[0] = out[1];
    out[static_cast<size_t>(m - 1)] = out[static_cast<size_t>(m - 2)];
  }
  return out;
}

size_t target_count(const Chart& chart, const DiscreteCurve& c, const FlowControls& ctl) {
  const double len = curve_length(chart, c);
  const size_t n = static_cast<size_t>(std::max(1.0, std::round(len / ctl.target_spacing)));
  return std::clamp(n, ctl.min_vertices, ctl.max_vertices);
}

struct ClusterAnalysis {
  int in_band = 0;
  // Clusters of locus directions: per component, merged angular intervals.
  struct Cluster {
    int component;
    double lo, hi;
    int count;
  };
  std::vector<Cluster> clusters;
  double outside_max_k = 0.0;
};

ClusterAnalysis analyze_near_locus(const Chart& chart, const DiscreteCurve& c, double band,
                                   double gap) {
  ClusterAnalysis out;
  std::vector<std::pair<int, double>> dirs;
  const long m = static_cast<long>(c.n());
  std::vector<bool> near(static_cast<size_t>(m), false);
  for (long i = 0; i < m; ++i) {
    const Vector2d p = c.pts[static_cast<size_t>(i)];
    if (chart.locus_metric_distance(p) < band) {
      near[static_cast<size_t>(i)] = true;
      const LocusDirection d = chart.locus_direction(p);
      dirs.emplace_back(d.component, d.angle);
      ++out.in_band;
    }
  }
  for (long i = 0; i < m; ++i) {
    if (near[static_cast<size_t>(i)]) continue;
    const bool interior = c.closed || (i > 0 && i + 1 < m);
    if (!interior) continue;
    out.outside_max_k =
        std::max(out.outside_max_k, std::abs(vertex_curvature(chart, c, i).k));
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& [comp, ang] : dirs) {
    if (!out.clusters.empty() && out.clusters.back().component == comp &&
        ang - out.clusters.back().hi <= gap) {
      out.clusters.back().hi = ang;
      out.clusters.back().count += 1;
    } else {
      out.clusters.push_back({comp, ang, ang, 1});
    }
  }
  return out;
}

}  // namespace

FlowStepResult flow_step(const Chart& chart, DiscreteCurve& curve, double dt,
                         const FlowControls& controls) {
  FlowStepResult res;
  double max_k = 0.0;
  const auto data = vertex_velocities(chart, curve, max_k);
  res.max_k = max_k;

  double vmax = 0.0;
  for (const auto& d : data) vmax = std::max(vmax, d.vnorm);

  // Halve dt until the largest displacement is below half the spacing.
  const double h_min = 0.5 * controls.target_spacing;
  while (vmax * dt > 0.5 * h_min) {
    dt *= 0.5;
    if (dt < 1e-16) throw std::runtime_error("flow_step: dt underflow");
  }
  res.dt_used = dt;
  res.max_displacement = vmax * dt;

  for (size_t i = 0; i < curve.pts.size(); ++i) curve.pts[i] += dt * data[i].velocity;
  curve = resample(chart, curve, target_count(chart, curve, controls));
  return res;
}

FlowOutcome evolve(const Chart& chart, DiscreteCurve curve, const FlowControls& controls) {
  FlowOutcome out;
  if (curve.closed && curve.v_winding == 0 && coord_signed_area(curve) < 0.0)
    std::reverse(curve.pts.begin(), curve.pts.end());
  curve = resample(chart, curve, target_count(chart, curve, controls));

  const bool track_enclosed = curve.closed && curve.v_winding == 0;
  const double enclosed0 = track_enclosed ? enclosed_curvature(chart, curve) : 0.0;

  double t = 0.0;
  double prev_len = curve_length(chart, curve);
  double prev_extent = -1.0;
  int locus_trend = 0;
  int doubled_streak = 0, single_streak = 0;

  auto record = [&](double max_k) {
    const double len = curve_length(chart, curve);
    const double enc = track_enclosed ? enclosed_curvature(chart, curve) : 0.0;
    const double tk = total_geodesic_curvature(chart, curve);
    out.series.push_back({t, len, enc, tk, max_k});
    if (track_enclosed)
      out.max_enclosed_drift = std::max(out.max_enclosed_drift, std::abs(enc - enclosed0));
  };

  long step = 0;
  record(0.0);
  while (t < controls.max_time && step < controls.max_steps) {
    // Stability bound from the smallest curvature scale on the curve.
    double kmin = 1e300;
    for (const auto& p : curve.pts) kmin = std::min(kmin, chart.gauss(p));
    double dt = std::min(controls.dt_max,
                         controls.cfl * kmin * controls.target_spacing * controls.target_spacing);
    dt = std::min(dt, controls.max_time - t);

    const FlowStepResult sr = flow_step(chart, curve, dt, controls);
    t += sr.dt_used;
    ++step;

    const double len = curve_length(chart, curve);
    if (len > prev_len * (1.0 + 1e-9)) out.length_monotone = false;

    // Outcome tests.
    const bool diag = (step % controls.diag_every) == 0;
    if (diag) {
      record(sr.max_k);
      if (controls.snapshot_every > 0 && (step % controls.snapshot_every) == 0)
        out.snapshots.emplace_back(t, curve);

      const double rel_step = std::abs(len - prev_len) / std::max(len, 1e-300);
      if (sr.max_k <= controls.k_tol && rel_step <= controls.len_rel_tol * controls.diag_every) {
        out.kind = FlowOutcome::Kind::ClosedGeodesic;
        break;
      }

      double min_locus = 1e300;
      for (const auto& p : curve.pts)
        min_locus = std::min(min_locus, chart.locus_metric_distance(p));
      if (len < controls.shrink_len && min_locus > 2.0 * controls.band) {
        out.kind = FlowOutcome::Kind::ShrunkToPoint;
        break;
      }

      const auto cl = analyze_near_locus(chart, curve, controls.band, controls.cluster_gap);
      const double frac = static_cast<double>(cl.in_band) / static_cast<double>(curve.n());
      if (cl.clusters.size() == 2 && frac > 0.05 &&
          cl.outside_max_k <= controls.arc_k_tol) {
        const double e0 = cl.clusters[0].hi - cl.clusters[0].lo;
        const double e1 = cl.clusters[1].hi - cl.clusters[1].lo;
        if (e0 < 0.5 && e1 < 0.5) {
          if (++doubled_streak >= 3) {
            out.kind = FlowOutcome::Kind::DoubledArc;
            out.directions = {
                {cl.clusters[0].component, 0.5 * (cl.clusters[0].lo + cl.clusters[0].hi)},
                {cl.clusters[1].component, 0.5 * (cl.clusters[1].lo + cl.clusters[1].hi)}};
            break;
          }
        } else {
          doubled_streak = 0;
        }
      } else {
        doubled_streak = 0;
      }

      if (cl.clusters.size() == 1 && frac > 0.95) {
        const double extent = cl.clusters[0].hi - cl.clusters[0].lo;
        if (prev_extent >= 0.0 && extent <= prev_extent + 1e-12) ++locus_trend;
        else locus_trend = 0;
        prev_extent = extent;
        if (extent < 1.0 && locus_trend >= 2) {
          if (++single_streak >= 2) {
            out.kind = FlowOutcome::Kind::IncompletePointDirection;
            out.directions = {
                {cl.clusters[0].component, 0.5 * (cl.clusters[0].lo + cl.clusters[0].hi)}};
            break;
          }
        } else {
          single_streak = 0;
        }
      } else {
        single_streak = 0;
        prev_extent = -1.0;
      }
    }

    if ((step % controls.embed_every) == 0 && curve.closed) {
      if (!is_simple(curve)) {
        out.embeddedness_lost = true;
        out.kind = FlowOutcome::Kind::Inconclusive;
        break;
      }
    }
    prev_len = len;
  }

  out.elapsed = t;
  out.final_curve = curve;
  out.final_length = curve_length(chart, curve);
  out.final_total_k = total_geodesic_curvature(chart, curve);
  if (track_enclosed) out.final_enclosed_curvature = enclosed_curvature(chart, curve);
  return out;
}

// ---- static profiles ---------------------------------------------------------

namespace {

using Y4 = Eigen::Vector4d;  // (r, theta, r-dot, theta-dot)

Y4 static_rhs(const Y4& y) {
  const double r = y[0], th = y[1], rd = y[2], td = y[3];
  Y4 dy;
  dy[0] = rd;
  dy[1] = td;
  dy[2] = th * rd * td / (4.0 * r);
  dy[3] = -(2.0 * r * rd * td + th * rd * rd) / (4.0 * r * r);
  return dy;
}

Y4 rk4_step(const Y4& y, double h) {
  const Y4 k1 = static_rhs(y);
  const Y4 k2 = static_rhs(y + 0.5 * h * k1);
  const Y4 k3 = static_rhs(y + 0.5 * h * k2);
  const Y4 k4 = static_rhs(y + h * k3);
  return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
}

void renormalize_speed(Y4& y) {
  const double n = std::sqrt(y[2] * y[2] + y[0] * y[3] * y[3]);
  y[2] /= n;
  y[3] /= n;
}

// Integrates one branch until theta crosses zero; returns samples and the
// terminal state located on theta = 0.
std::vector<Y4> trace_branch(double a, double b, double rdot0, double& min_abs_rdot) {
  Y4 y;
  y << a, b, rdot0, 0.0;
  std::vector<Y4> samples{y};
  const double h = 4e-4;
  min_abs_rdot = std::abs(rdot0);
  for (long i = 0; i < 4000000; ++i) {
    Y4 yn = rk4_step(y, h);
    renormalize_speed(yn);
    min_abs_rdot = std::min(min_abs_rdot, std::abs(yn[2]));
    if (yn[0] <= 0.0) throw std::runtime_error("static profile hit r = 0");
    if (yn[1] <= 0.0) {
      // Bisect the crossing on the final substep.
      double lo = 0.0, hi = h;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        Y4 ym = rk4_step(y, mid);
        if (ym[1] > 0.0) lo = mid; else hi = mid;
      }
      Y4 yend = rk4_step(y, hi);
      renormalize_speed(yend);
      yend[1] = 0.0;
      samples.push_back(yend);
      return samples;
    }
    samples.push_back(yn);
    y = yn;
  }
  throw std::runtime_error("static profile failed to reach theta = 0");
}

}  // namespace

StaticProfile static_profile(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("static_profile: need a > 0 and b > 0");
  StaticProfile out;
  out.a = a;
  out.b = b;

  double min1 = 0.0, min2 = 0.0;
  const auto fwd = trace_branch(a, b, 1.0, min1);    // theta falls to 0, r grows
  const auto bwd = trace_branch(a, b, -1.0, min2);   // reversed branch, r shrinks
  out.min_rdot = std::min(min1, min2);

  // Assemble from the small-r endpoint over the top to the large-r endpoint.
  DiscreteCurve curve;
  curve.closed = false;
  for (size_t i = bwd.size(); i-- > 0;) curve.pts.emplace_back(bwd[i][0], bwd[i][1]);
  for (size_t i = 1; i < fwd.size(); ++i) curve.pts.emplace_back(fwd[i][0], fwd[i][1]);
  out.curve = std::move(curve);

  // Angles against the axis: cos(angle) = |r-dot| at the endpoints (the
  // tangent is metric-unit and e_r has unit length).
  out.alpha = std::acos(std::min(1.0, std::abs(fwd.back()[2])));
  out.beta = std::acos(std::min(1.0, std::abs(bwd.back()[2])));

  // Enclosed curvature of the region bounded by the profile and theta = 0,
  // via the curvature primitive: counterclockwise boundary = axis
  // left-to-right, then the profile from the large-r end back.
  ModelChart model(1.0, 1e9);
  DiscreteCurve boundary;
  boundary.closed = true;
  boundary.pts.emplace_back(out.curve.pts.front());           // (r_beta, 0)
  boundary.pts.emplace_back(out.curve.pts.back());            // (r_alpha, 0)
  for (size_t i = out.curve.pts.size(); i-- > 1;) boundary.pts.push_back(out.curve.pts[i]);
  out.enclosed = curvature_primitive_integral(model, boundary);
  return out;
}

// ---- prescribed-curvature disks ------------------------------------------------

LoopFamily coord_disk_family(std::shared_ptr<const Chart> chart, const Vector2d& center,
                             int n) {
  if (!chart->inside(center)) throw std::invalid_argument("disk family: center outside chart");
  // Largest coordinate radius still inside the chart.
  double lo = 0.0, hi = 1.0;
  {
    const Box2 bb = chart->bbox();
    hi = std::max(bb.hi.x() - bb.lo.x(), bb.hi.y() - bb.lo.y());
    auto fits = [&](double radius) {
      const auto circ = DiscreteCurve::coord_circle(center, radius, 256);
      for (const auto& p : circ.pts)
        if (!chart->inside(p)) return false;
      return true;
    };
    while (!fits(hi)) hi *= 0.5;
    double step = hi;
    for (int i = 0; i < 40; ++i) {
      step *= 0.5;
      if (fits(hi + step)) hi += step;
    }
    lo = 0.0;
  }
  const double r_max = hi;
  (void)lo;
  return [chart, center, r_max, n](double s) {
    return DiscreteCurve::coord_circle(center, s * r_max, n);
  };
}

DiskWithTarget disk_with_curvature(const Chart& chart, const LoopFamily& family, double target,
                                   double tol) {
  auto enclosed = [&](double s) { return enclosed_curvature(chart, family(s)); };
  double lo = 1e-6, hi = 1.0 - 1e-9;
  double flo = enclosed(lo), fhi = enclosed(hi);
  if (flo > target) throw std::runtime_error("disk_with_curvature: smallest loop already past target");
  while (fhi < target) {
    // The family should diverge toward the locus; push the bracket end out.
    hi = 0.5 * (hi + 1.0);
    fhi = enclosed(hi);
    if (1.0 - hi < 1e-12)
      throw std::runtime_error("disk_with_curvature: target not reached within the family");
  }
  double s_star = roots::brent([&](double s) { return enclosed(s) - target; }, lo, hi, 1e-14);
  DiskWithTarget out;
  out.scale = s_star;
  out.loop = family(s_star);
  out.enclosed = enclosed(s_star);
  if (std::abs(out.enclosed - target) > tol) {
    // One bisection polish pass on a tight bracket.
    double a = s_star * (1.0 - 1e-6), bq = std::min(1.0 - 1e-12, s_star * (1.0 + 1e-6));
    s_star = roots::bisect([&](double s) { return enclosed(s) - target; }, a, bq, 1e-16);
    out.scale = s_star;
    out.loop = family(s_star);
    out.enclosed = enclosed(s_star);
  }
  return out;
}

DiskWithTarget disk_with_2pi(const Chart& chart, const Vector2d& center) {
  // Shared-ownership shim: the chart outlives the family here.
  std::shared_ptr<const Chart> alias(&chart, [](const Chart*) {});
  return disk_with_curvature(chart, coord_disk_family(alias, center), 2.0 * M_PI, 1e-8);
}

// ---- shortest returning arcs ----------------------------------------------------

BoundaryArc shortest_boundary_arc(const RevolutionChart& chart, double collar, int grid) {
  const auto& prof = chart.profile();
  const double r_end = prof.r_end;
  const double r_start = r_end * (1.0 - collar);

  // c = 0: the meridian doubles through the pole with length 2 r_end.
  BoundaryArc best;
  best.parameter = 0.0;
  best.length = 2.0 * r_end;
  {
    DiscreteCurve arc;
    arc.closed = false;
    const int n = 200;
    for (int i = 0; i <= n; ++i)
      arc.pts.emplace_back(r_start - (r_start - 1e-9) * i / n, 0.0);
    for (int i = 1; i <= n; ++i)
      arc.pts.emplace_back(1e-9 + (r_start - 1e-9) * i / n, M_PI);
    best.arc = std::move(arc);
  }

  // c > 0 arcs turn at f(r) = c and return; their lengths exceed the
  // meridian (scan recorded for the report).
  const double c_top = prof.f(r_start);
  PeriodAnalyzerDummy:
  for (int i = 1; i < grid; ++i) {
    const double c = c_top * i / grid;
    // Inner turning point below the critical radius.
    auto g = [&](double r) { return prof.f(r) - c; };
    // Find the largest root below r_start by a scan from r_start inward.
    double r_t = -1.0;
    const int scan = 512;
    double x0 = r_start, f0 = g(x0);
    for (int j = 1; j <= scan; ++j) {
      const double x1 = r_start * (1.0 - static_cast<double>(j) / scan) + 1e-9 * j / scan;
      const double f1 = g(x1);
      if (f0 >= 0.0 && f1 < 0.0) {
        r_t = roots::brent(g, x1, x0, 1e-14);
        break;
      }
      x0 = x1;
      f0 = f1;
    }
    if (r_t < 0.0) continue;
    for (int it = 0; it < 64 && g(r_t) <= 0.0; ++it) r_t = std::nextafter(r_t, r_start);
    const double m = 0.5 * (r_t + r_start), h = 0.5 * (r_start - r_t);
    auto integrand = [&](double phi) {
      const double r = m + h * std::sin(phi);
      const double f = prof.f(r);
      const double d = (f - c) * (f + c);
      if (d <= 0.0) return 0.0;
      return h * std::cos(phi) * f / std::sqrt(d);
    };
    // ds = dr / sqrt(1 - c^2/f^2) = f dr / sqrt(f^2 - c^2); regularized at
    // the turning point only (the outer endpoint is regular for c < c_top).
    double len;
    try {
      len = 2.0 * quad::adaptive(integrand, -M_PI_2, M_PI_2, {1e-9, 1e-12, 24, 1e-5, 1e-5});
    } catch (const std::exception&) {
      continue;
    }
    if (len < best.length) {
      best.length = len;
      best.parameter = c;
    }
  }
  return best;
}

BoundaryArc shortest_boundary_arc_search(const Chart& chart,
                                         const std::function<Vector2d(double)>& collar_point,
                                         const CollarSearchOptions& opt) {
  auto arc_length = [&](double station, double psi, Trajectory* traj_out) {
    const Vector2d p0 = collar_point(station);
    const Matrix2d g = metric_matrix(chart, p0);
    // Frame: e1 along the collar tangent, e2 inward; psi = 0 grazes forward.
    const double eps = 1e-4;
    Vector2d tangent = collar_point(station + eps) - collar_point(station - eps);
    tangent = unit_g(g, tangent);
    Vector2d inward = left_normal(g, tangent);
    // Ensure inward points away from the locus.
    const double d0 = chart.locus_metric_distance(p0);
    if (chart.locus_metric_distance(p0 + 1e-5 * inward) < d0) inward = -inward;
    GeodesicState st;
    st.p = p0;
    st.v = std::cos(psi) * tangent + std::sin(psi) * inward;
    st = normalized(chart, st);
    IntegrateControls c;
    c.max_length = opt.length_budget;
    c.rel_tol = c.abs_tol = 1e-11;
    c.max_step = 0.01;
    Event back;
    back.id = "collar";
    back.fn = [&](const GeodesicState& s) {
      return chart.locus_metric_distance(s.p) - opt.collar;
    };
    back.direction = -1;
    back.stop = true;
    c.events.push_back(back);
    const auto traj = integrate(chart, st, c);
    if (traj_out) *traj_out = traj;
    if (traj.status != Trajectory::Status::StoppedAtEvent) return 1e300;
    return traj.length();
  };

  double best_len = 1e300, best_station = 0.0, best_psi = 0.0;
  for (int i = 0; i < opt.stations; ++i) {
    const double s = (i + 0.5) / opt.stations;
    for (int j = 1; j < opt.angles; ++j) {
      const double psi = M_PI * j / opt.angles;
      const double len = arc_length(s, psi, nullptr);
      if (len < best_len) {
        best_len = len;
        best_station = s;
        best_psi = psi;
      }
    }
  }
  if (best_len >= 1e300)
    throw std::runtime_error("collar search found no returning arc within the budget");

  // Local refinement, alternating golden sections in station and angle.
  double ds = 1.0 / opt.stations, dpsi = M_PI / opt.angles;
  for (int round = 0; round < opt.refine_rounds; ++round) {
    best_station = roots::golden_min(
        [&](double s) { return arc_length(s, best_psi, nullptr); },
        std::max(0.0, best_station - ds), std::min(1.0, best_station + ds), 1e-6);
    best_psi = roots::golden_min(
        [&](double p) { return arc_length(best_station, p, nullptr); },
        std::max(0.05, best_psi - dpsi), std::min(M_PI - 0.05, best_psi + dpsi), 1e-8);
    ds *= 0.1;
    dpsi *= 0.1;
  }

  Trajectory traj;
  BoundaryArc out;
  out.length = arc_length(best_station, best_psi, &traj);
  out.parameter = best_station;
  out.arc.closed = false;
  for (const auto& s : traj.samples) out.arc.pts.push_back(s.p);
  // Account for the two collar gaps.
  out.length += chart.locus_metric_distance(traj.samples.front().p) +
                chart.locus_metric_distance(traj.back().p);
  return out;
}

LongArcReport long_arc_test(const Chart& chart, double shortest_arc,
                            const std::vector<Vector2d>& centers,
                            const std::function<LoopFamily(const Vector2d&)>& family_at) {
  LongArcReport rep;
  rep.shortest_arc = shortest_arc;
  for (const auto& c : centers) {
    const auto disk = disk_with_curvature(chart, family_at(c));
    rep.family_max = std::max(rep.family_max, curve_length(chart, disk.loop));
  }
  rep.is_long = 2.0 * shortest_arc > rep.family_max;
  return rep;
}

}  // namespace geoflow
