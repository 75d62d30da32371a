#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "geoflow/charts.hpp"
#include "geoflow/curvature_ops.hpp"
#include "geoflow/curve.hpp"

namespace geoflow {

struct FlowControls {
  double target_spacing = 0.012;  // metric vertex spacing after remesh
  size_t min_vertices = 96;
  size_t max_vertices = 4096;
  double cfl = 0.2;        // dt <= cfl * K_min * h^2
  double dt_max = 2e-3;
  double max_time = 4.0;
  long max_steps = 4000000;

  // Classification thresholds.
  double k_tol = 1e-4;           // ClosedGeodesic: max |k| below this
  double len_rel_tol = 1e-8;     // ... with relative length change per step below this
  double shrink_len = 2e-3;      // ShrunkToPoint when length falls below
  double band = 0.05;            // metric distance defining the locus collar
  double cluster_gap = 0.1;      // direction clustering merge gap (radians)
  double arc_k_tol = 0.05;       // outside arcs of a doubled limit are near-geodesic

  int diag_every = 10;           // cadence of series bookkeeping
  int embed_every = 50;          // cadence of self-intersection checks
  int snapshot_every = 0;        // 0: keep no intermediate curves
};

struct FlowOutcome {
  enum class Kind {
    ClosedGeodesic,
    IncompletePointDirection,
    DoubledArc,
    ShrunkToPoint,
    Inconclusive
  };
  Kind kind = Kind::Inconclusive;
  double elapsed = 0.0;
  double final_length = 0.0;
  double final_enclosed_curvature = 0.0;
  double final_total_k = 0.0;
  // Locus directions of the limit: one entry for a single-direction collapse,
  // two for a doubled arc; (component, coordinate along the locus).
  std::vector<LocusDirection> directions;
  DiscreteCurve final_curve;
  bool embeddedness_lost = false;
  bool length_monotone = true;
  double max_enclosed_drift = 0.0;  // max |enclosed K - initial| over the run
  // Diagnostics series rows: (t, length, enclosed K, total k, max |k|).
  std::vector<std::array<double, 5>> series;
  std::vector<std::pair<double, DiscreteCurve>> snapshots;
};

struct FlowStepResult {
  double dt_used = 0.0;
  double max_k = 0.0;
  double max_displacement = 0.0;
};

// One explicit step of the normal flow with speed k/K, followed by
// arc-length remeshing.  Halves dt internally when the displacement would
// exceed half the local spacing; throws on K <= 0 or dt underflow.
FlowStepResult flow_step(const Chart& chart, DiscreteCurve& curve, double dt,
                         const FlowControls& controls);

// Runs the flow until one of the outcome tests fires or time runs out.
FlowOutcome evolve(const Chart& chart, DiscreteCurve curve, const FlowControls& controls);

// ---- scale-invariant profiles ------------------------------------------------

// Static solution of the rescaled flow on the model chart ds^2 = dr^2 + r
// dtheta^2, launched at r = a, theta = b with unit radial velocity, traced
// to theta = 0 on both sides.
struct StaticProfile {
  double a = 0.0, b = 0.0;
  DiscreteCurve curve;            // open polyline, theta decreasing endpoint last
  double alpha = 0.0, beta = 0.0; // angles against theta = 0
  double enclosed = 0.0;          // integral of K over the bounded region
  double min_rdot = 0.0;          // min |r-dot| along the profile
};

StaticProfile static_profile(double a, double b);

// ---- disks with prescribed enclosed curvature ---------------------------------

using LoopFamily = std::function<DiscreteCurve(double)>;  // scale in (0, 1)

// Coordinate circles around a center, scaled toward the largest radius that
// stays inside the chart.
LoopFamily coord_disk_family(std::shared_ptr<const Chart> chart, const Vector2d& center,
                             int n = 1024);

struct DiskWithTarget {
  DiscreteCurve loop;
  double scale = 0.0;
  double enclosed = 0.0;
};

// Monotone bisection of the family scale until the enclosed curvature
// reaches the target (2 pi by default).
DiskWithTarget disk_with_curvature(const Chart& chart, const LoopFamily& family,
                                   double target = 2.0 * M_PI, double tol = 1e-8);

DiskWithTarget disk_with_2pi(const Chart& chart, const Vector2d& center);

// ---- shortest returning arcs ---------------------------------------------------

struct BoundaryArc {
  double length = 0.0;
  DiscreteCurve arc;
  double parameter = 0.0;  // Clairaut constant (revolution) or launch station
};

// Shortest geodesic arc running from the incomplete locus back to itself on a
// revolution chart, via the Clairaut-reduced family (the c -> 0 meridian
// doubles through the pole).
BoundaryArc shortest_boundary_arc(const RevolutionChart& chart, double collar = 1e-6,
                                  int grid = 64);

// General search by shooting from a collar of launch stations and angles.
struct CollarSearchOptions {
  double collar = 1e-5;
  int stations = 48;
  int angles = 24;
  double length_budget = 2.0;
  int refine_rounds = 2;
};

BoundaryArc shortest_boundary_arc_search(
    const Chart& chart, const std::function<Vector2d(double)>& collar_point,
    const CollarSearchOptions& opt);

struct LongArcReport {
  double shortest_arc = 0.0;
  double family_max = 0.0;
  bool is_long = false;  // 2 * shortest > family max
};

LongArcReport long_arc_test(const Chart& chart, double shortest_arc,
                            const std::vector<Vector2d>& centers,
                            const std::function<LoopFamily(const Vector2d&)>& family_at);

}  // namespace geoflow
