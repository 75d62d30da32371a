#pragma once

#include <optional>
#include <variant>

#include "geoflow/chart.hpp"
#include "geoflow/curve.hpp"

namespace geoflow {

// Line integral over the curve of the one-form primitive of K dA (built from
// the orthonormal-coframe connection).  Stokes then gives the enclosed
// curvature for a curve traversed with the region on its left.
double curvature_primitive_integral(const Chart& chart, const DiscreteCurve& c,
                                    int gauss_order = 8);

// Integral of K over the region enclosed by a closed curve; the curve must
// run counterclockwise in coordinates (region on the left).  On charts with
// an interior pole, winding loops pick up the 2 pi f'(0) correction.
double enclosed_curvature(const Chart& chart, const DiscreteCurve& c);

struct RegionSpec {
  enum class Kind { CoordDisk, SubLevelDisk, WholeDomain, Polygon };
  Kind kind = Kind::CoordDisk;
  Vector2d center = Vector2d::Zero();
  double radius = 0.0;
  DiscreteCurve polygon;
  int boundary_samples = 512;

  static RegionSpec disk(const Vector2d& c, double r, int n = 512) {
    RegionSpec s;
    s.kind = Kind::CoordDisk;
    s.center = c;
    s.radius = r;
    s.boundary_samples = n;
    return s;
  }
  static RegionSpec sublevel(double r0, int n = 1024) {
    RegionSpec s;
    s.kind = Kind::SubLevelDisk;
    s.radius = r0;
    s.boundary_samples = n;
    return s;
  }
  static RegionSpec whole() {
    RegionSpec s;
    s.kind = Kind::WholeDomain;
    return s;
  }
  static RegionSpec from_polygon(DiscreteCurve c) {
    RegionSpec s;
    s.kind = Kind::Polygon;
    s.polygon = std::move(c);
    return s;
  }
};

struct CurvatureIntegral {
  bool unbounded = false;
  double value = 0.0;  // meaningful when not unbounded
  std::vector<double> annulus_partial_sums;  // populated by the divergence scan
};

// Integral of K dA over a region.  Regions touching the incomplete locus are
// resolved by partial sums over dyadic collars; sums past 10 * 2 pi that are
// still growing report Unbounded.
CurvatureIntegral curvature_integral(const Chart& chart, const RegionSpec& region);

// Local Gauss-Bonnet defect of a smooth closed curve bounding a disk:
// integral of K dA + integral of k ds - 2 pi.
double gauss_bonnet_residual(const Chart& chart, const DiscreteCurve& c);
double gauss_bonnet_residual(const Chart& chart, const RegionSpec& disk_region);

}  // namespace geoflow
