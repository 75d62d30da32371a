#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geoflow/chart.hpp"

namespace geoflow {

// Unit-speed phase point on a chart; s is accumulated arc length.
struct GeodesicState {
  Vector2d p = Vector2d::Zero();
  Vector2d v = Vector2d::Zero();
  double s = 0.0;
};

// Makes the velocity of the state unit length in the metric at p.
GeodesicState normalized(const Chart& chart, GeodesicState st);

struct Event {
  std::string id;
  std::function<double(const GeodesicState&)> fn;
  bool stop = false;
  int direction = 0;  // 0: any sign change; +1: - to +; -1: + to -
};

struct EventHit {
  std::string id;
  GeodesicState state;
};

struct IntegrateControls {
  double max_length = 10.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double max_step = 0.25;
  double det_floor = 1e-14;
  std::vector<Event> events;
};

struct Trajectory {
  enum class Status { MaxLength, StoppedAtEvent, TruncatedAtLocus, StepUnderflow };
  std::vector<GeodesicState> samples;
  std::vector<EventHit> events;
  Status status = Status::MaxLength;
  double max_unit_defect = 0.0;  // worst |v|_g - 1 before renormalization

  const GeodesicState& back() const { return samples.back(); }
  double length() const { return samples.back().s; }
};

// Geodesic equation right-hand side: coordinate acceleration at (p, v).
inline Vector2d geodesic_rhs(const Chart& chart, const GeodesicState& st) {
  return geodesic_acceleration(chart, st.p, st.v);
}

Trajectory integrate(const Chart& chart, const GeodesicState& start,
                     const IntegrateControls& controls);

// Clairaut constant c = G theta_dot on charts whose v-coordinate is the
// angle of a rotational symmetry (revolution and model charts).
double clairaut_constant(const Chart& chart, const GeodesicState& st);

// Re-integrates the reversed state; round trips should land on the start.
GeodesicState reversed(const GeodesicState& st);

}  // namespace geoflow
