#include "geoflow/geodesic.hpp"

#include <cmath>

namespace geoflow {

namespace {

using Y4 = Eigen::Vector4d;

Y4 pack(const GeodesicState& st) {
  Y4 y;
  y << st.p.x(), st.p.y(), st.v.x(), st.v.y();
  return y;
}

GeodesicState unpack(const Y4& y, double s) {
  GeodesicState st;
  st.p = Vector2d(y[0], y[1]);
  st.v = Vector2d(y[2], y[3]);
  st.s = s;
  return st;
}

Y4 rhs(const Chart& chart, const Y4& y) {
  const Vector2d p(y[0], y[1]), v(y[2], y[3]);
  const Vector2d a = geodesic_acceleration(chart, p, v);
  Y4 dy;
  dy << v.x(), v.y(), a.x(), a.y();
  return dy;
}

// Dormand-Prince 5(4) pair.
struct StepResult {
  Y4 y5;
  double err;  // scaled error estimate
};

StepResult dopri5_step(const Chart& chart, const Y4& y0, const Y4& k1, double h,
                       double atol, double rtol, Y4* k_last) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  const Y4 k2 = rhs(chart, y0 + h * (a21 * k1));
  const Y4 k3 = rhs(chart, y0 + h * (a31 * k1 + a32 * k2));
  const Y4 k4 = rhs(chart, y0 + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const Y4 k5 = rhs(chart, y0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const Y4 k6 = rhs(chart, y0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const Y4 y5 = y0 + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const Y4 k7 = rhs(chart, y5);
  const Y4 errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

  double err = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(errv[i]) / sc);
  }
  if (k_last) *k_last = k7;
  return {y5, err};
}

}  // namespace

GeodesicState normalized(const Chart& chart, GeodesicState st) {
  st.v /= norm_g(chart, st.p, st.v);
  return st;
}

GeodesicState reversed(const GeodesicState& st) {
  GeodesicState r = st;
  r.v = -st.v;
  r.s = 0.0;
  return r;
}

double clairaut_constant(const Chart& chart, const GeodesicState& st) {
  const auto c = chart.coeffs(st.p.x(), st.p.y());
  if (std::abs(c.F.f) > 1e-13 || std::abs(c.F.fu) + std::abs(c.F.fv) > 1e-10)
    throw std::invalid_argument("clairaut_constant: chart has no theta-translation symmetry");
  return c.G.f * st.v.y();
}

Trajectory integrate(const Chart& chart, const GeodesicState& start,
                     const IntegrateControls& controls) {
  Trajectory traj;
  GeodesicState st = normalized(chart, start);
  st.s = 0.0;
  traj.samples.push_back(st);

  double h = std::min(controls.max_step, 1e-3);
  Y4 y = pack(st);
  Y4 k1 = rhs(chart, y);
  double s = 0.0;
  const double hmin = 1e-14;

  // Locates a root of ev.fn within the accepted step by bisection on the
  // substep length, re-stepping from the step start each time.
  auto locate_event = [&](const Event& ev, const Y4& y0, double s0, double h_acc,
                          double e0) -> GeodesicState {
    double lo = 0.0, hi = h_acc;
    double elo = e0;
    for (int it = 0; it < 60 && hi - lo > 1e-15 * std::max(1.0, h_acc); ++it) {
      const double mid = 0.5 * (lo + hi);
      Y4 dummy;
      const StepResult sub = dopri5_step(chart, y0, rhs(chart, y0), mid, controls.abs_tol,
                                         controls.rel_tol, &dummy);
      const double em = ev.fn(unpack(sub.y5, s0 + mid));
      if ((elo <= 0.0) == (em <= 0.0)) {
        lo = mid;
        elo = em;
      } else {
        hi = mid;
      }
    }
    Y4 dummy;
    const StepResult sub =
        dopri5_step(chart, y0, rhs(chart, y0), hi, controls.abs_tol, controls.rel_tol, &dummy);
    return unpack(sub.y5, s0 + hi);
  };

  std::vector<double> evals(controls.events.size());
  for (size_t i = 0; i < controls.events.size(); ++i)
    evals[i] = controls.events[i].fn(st);

  while (s < controls.max_length) {
    h = std::min(h, controls.max_length - s);
    Y4 k_last;
    const StepResult res = dopri5_step(chart, y, k1, h, controls.abs_tol, controls.rel_tol,
                                       &k_last);
    if (res.err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(res.err, -0.25));
      if (h < hmin) {
        traj.status = Trajectory::Status::StepUnderflow;
        return traj;
      }
      continue;
    }

    // Accepted.
    const Y4 y0 = y;
    const double s0 = s;
    s += h;
    GeodesicState next = unpack(res.y5, s);

    // Locus guard.
    if (!chart.inside(next.p) || metric_det(chart, next.p) < controls.det_floor) {
      traj.status = Trajectory::Status::TruncatedAtLocus;
      return traj;
    }

    // Unit-speed bookkeeping, then renormalize.
    const double speed = norm_g(chart, next.p, next.v);
    traj.max_unit_defect = std::max(traj.max_unit_defect, std::abs(speed - 1.0));
    next.v /= speed;

    bool stopped = false;
    for (size_t i = 0; i < controls.events.size(); ++i) {
      const Event& ev = controls.events[i];
      const double e0 = evals[i];
      const double e1 = ev.fn(next);
      const bool crossed = (e0 < 0.0 && e1 >= 0.0) || (e0 > 0.0 && e1 <= 0.0);
      const bool dir_ok = ev.direction == 0 || (ev.direction > 0 ? e0 < 0.0 : e0 > 0.0);
      if (crossed && dir_ok) {
        GeodesicState hit = locate_event(ev, y0, s0, h, e0);
        hit = normalized(chart, hit);
        traj.events.push_back({ev.id, hit});
        if (ev.stop) {
          traj.samples.push_back(hit);
          traj.status = Trajectory::Status::StoppedAtEvent;
          return traj;
        }
      }
      evals[i] = e1;
    }
    (void)stopped;

    traj.samples.push_back(next);
    y = pack(next);
    k1 = rhs(chart, y);  // renormalization invalidates FSAL reuse
    h = std::min(controls.max_step,
                 h * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(res.err, 1e-10), -0.2))));
  }
  traj.status = Trajectory::Status::MaxLength;
  return traj;
}

}  // namespace geoflow
