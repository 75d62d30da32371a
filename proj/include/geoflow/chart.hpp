#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoflow/jet.hpp"

namespace geoflow {

using Eigen::Matrix2d;
using Eigen::Vector2d;

// Metric coefficients for ds^2 = E du^2 + 2 F du dv + G dv^2 as second
// order jets in (u, v).  Diagonal charts simply return F = 0.
struct CoeffJets {
  Jet2d E, F, G;
};

struct Box2 {
  Vector2d lo, hi;
};

struct AffineMap {
  Matrix2d A = Matrix2d::Identity();
  Vector2d b = Vector2d::Zero();
  Vector2d operator()(const Vector2d& p) const { return A * p + b; }
};

// Degenerate-but-smooth interior point of a chart (the r = 0 axis of a
// surface-of-revolution chart).  fprime0 is the limit slope of the profile,
// needed when a curvature line integral winds around the point.
struct PoleInfo {
  Vector2d uv;      // chart location of the pole (r = 0; v arbitrary)
  double fprime0;   // lim f'(r) as r -> 0
};

// Position of a point relative to the incomplete locus, for direction
// bookkeeping: which boundary component and an angular coordinate along it.
struct LocusDirection {
  int component = 0;
  double angle = 0.0;
};

class Chart {
 public:
  virtual ~Chart() = default;

  virtual std::string id() const = 0;
  virtual CoeffJets coeffs(double u, double v) const = 0;
  virtual bool inside(const Vector2d& p) const = 0;
  virtual Box2 bbox() const = 0;

  // Gaussian curvature; charts with a closed form override this.
  virtual double gauss(const Vector2d& p) const;

  // Coordinate-scale distance to the incomplete locus (not metric distance).
  virtual double locus_distance(const Vector2d& p) const = 0;

  // Metric distance to the incomplete locus, exact or a close per-chart bound.
  virtual double locus_metric_distance(const Vector2d& p) const { return locus_distance(p); }

  virtual LocusDirection locus_direction(const Vector2d& p) const {
    return {0, std::atan2(p.y(), p.x())};
  }

  // Declared isometries (finite group elements, identity excluded).
  virtual std::vector<AffineMap> symmetries() const { return {}; }

  virtual std::optional<PoleInfo> pole() const { return std::nullopt; }

  // True when v is an angle defined mod 2*pi.
  virtual bool periodic_v() const { return false; }
};

// ---- pointwise metric algebra -------------------------------------------

inline Matrix2d metric_matrix(const CoeffJets& c) {
  Matrix2d g;
  g << c.E.f, c.F.f, c.F.f, c.G.f;
  return g;
}

inline Matrix2d metric_matrix(const Chart& chart, const Vector2d& p) {
  return metric_matrix(chart.coeffs(p.x(), p.y()));
}

inline double metric_det(const Chart& chart, const Vector2d& p) {
  const auto c = chart.coeffs(p.x(), p.y());
  return c.E.f * c.G.f - c.F.f * c.F.f;
}

inline double dot_g(const Matrix2d& g, const Vector2d& a, const Vector2d& b) {
  return a.dot(g * b);
}

inline double norm_g(const Matrix2d& g, const Vector2d& a) {
  return std::sqrt(std::max(0.0, dot_g(g, a, a)));
}

inline double norm_g(const Chart& chart, const Vector2d& p, const Vector2d& a) {
  return norm_g(metric_matrix(chart, p), a);
}

inline Vector2d unit_g(const Matrix2d& g, const Vector2d& a) {
  return a / norm_g(g, a);
}

// Angle in [0, pi] between directions a and b at p.
inline double angle_g(const Matrix2d& g, const Vector2d& a, const Vector2d& b) {
  const double c = dot_g(g, a, b) / (norm_g(g, a) * norm_g(g, b));
  return std::acos(std::min(1.0, std::max(-1.0, c)));
}

// Left-pointing unit normal of a unit tangent t (rotation by +pi/2 in the
// oriented metric): nu = J g t / sqrt(det g).
inline Vector2d left_normal(const Matrix2d& g, const Vector2d& t_unit) {
  const Vector2d gt = g * t_unit;
  const double w = std::sqrt(g.determinant());
  return Vector2d(-gt.y(), gt.x()) / w;
}

// Christoffel symbols Gamma^i_{jk}; gamma[i](j,k).
inline std::array<Matrix2d, 2> christoffel(const Chart& chart, const Vector2d& p) {
  const auto c = chart.coeffs(p.x(), p.y());
  Matrix2d g = metric_matrix(c);
  Matrix2d dg[2];
  dg[0] << c.E.fu, c.F.fu, c.F.fu, c.G.fu;
  dg[1] << c.E.fv, c.F.fv, c.F.fv, c.G.fv;
  const Matrix2d ginv = g.inverse();
  std::array<Matrix2d, 2> gamma;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l)
          s += ginv(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
        gamma[static_cast<size_t>(i)](j, k) = 0.5 * s;
      }
    }
  }
  return gamma;
}

// Covariant acceleration of a curve with velocity v: a^i = -Gamma^i_jk v^j v^k
// gives the geodesic right-hand side; curve curvature uses +Gamma contraction.
inline Vector2d geodesic_acceleration(const Chart& chart, const Vector2d& p, const Vector2d& v) {
  const auto gamma = christoffel(chart, p);
  Vector2d a;
  for (int i = 0; i < 2; ++i) a(i) = -v.dot(gamma[static_cast<size_t>(i)] * v);
  return a;
}

// ---- curvature from jets -------------------------------------------------

// First-order jet helper used to push metric jets through the coframe
// construction.
struct J1 {
  double f = 0, fu = 0, fv = 0;
  J1 operator+(const J1& o) const { return {f + o.f, fu + o.fu, fv + o.fv}; }
  J1 operator-(const J1& o) const { return {f - o.f, fu - o.fu, fv - o.fv}; }
  J1 operator*(const J1& o) const {
    return {f * o.f, fu * o.f + f * o.fu, fv * o.f + f * o.fv};
  }
  J1 operator/(const J1& o) const {
    const double q = f / o.f;
    return {q, (fu - q * o.fu) / o.f, (fv - q * o.fv) / o.f};
  }
};

inline J1 j1_of(const Jet2d& x) { return {x.f, x.fu, x.fv}; }
inline J1 d_du(const Jet2d& x) { return {x.fu, x.fuu, x.fuv}; }
inline J1 d_dv(const Jet2d& x) { return {x.fv, x.fuv, x.fvv}; }
inline J1 j1_sqrt(const J1& x) {
  const double s = std::sqrt(x.f);
  return {s, 0.5 * x.fu / s, 0.5 * x.fv / s};
}

// Connection coefficients (a, b) of the orthonormal coframe:
// omega = a du + b dv satisfies d(omega) = -K dA.  The primitive of K dA used
// by line-integral curvature is therefore -omega.
struct ConnectionForm {
  J1 a, b;
  double area_density;  // sqrt(det g)
};

inline ConnectionForm connection_form(const Chart& chart, const Vector2d& p) {
  const auto c = chart.coeffs(p.x(), p.y());
  const Jet2d det = c.E * c.G - c.F * c.F;
  const Jet2d P = sqrt(c.E);
  const Jet2d W = sqrt(det);
  const Jet2d FP = c.F / P;
  const Jet2d WP = W / P;
  const J1 p1 = j1_of(P), w1 = j1_of(W), fp1 = j1_of(FP);
  const J1 a = (d_du(FP) - d_dv(P)) * (p1 / w1);
  const J1 b = (d_du(WP) + a * fp1) / p1;
  return {a, b, w1.f};
}

inline double Chart::gauss(const Vector2d& p) const {
  const ConnectionForm cf = connection_form(*this, p);
  return (cf.a.fv - cf.b.fu) / cf.area_density;
}

// Value of the K dA primitive one-form at p, as covector (per du, per dv).
inline Vector2d curvature_primitive(const Chart& chart, const Vector2d& p) {
  const ConnectionForm cf = connection_form(chart, p);
  return Vector2d(-cf.a.f, -cf.b.f);
}

}  // namespace geoflow
