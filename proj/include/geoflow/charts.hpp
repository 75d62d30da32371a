#pragma once

#include <functional>
#include <memory>
#include <string>

#include "geoflow/chart.hpp"
#include "geoflow/expression.hpp"

namespace geoflow {

// Profile f(r) of a surface-of-revolution metric ds^2 = dr^2 + f(r)^2 dtheta^2,
// evaluated as a jet so f' and f'' come along.
struct RevolutionProfile {
  std::function<Jet2d(const Jet2d&)> fj;
  double r_end = 1.0;
  std::string name;

  Jet2d jet(double r) const { return fj(Jet2d::var_u(r)); }
  double f(double r) const { return jet(r).f; }
  double df(double r) const { return jet(r).fu; }
  double d2f(double r) const { return jet(r).fuu; }
};

RevolutionProfile clifford_profile();              // f = r sqrt(1 - r^2) on [0, 1]
RevolutionProfile sine_profile();                  // f = sin r on [0, pi]
RevolutionProfile flat_cone_profile(double rmax);  // f = r (flat)
RevolutionProfile expression_profile(const std::string& text, double r_end);

class RevolutionChart final : public Chart {
 public:
  RevolutionChart(RevolutionProfile profile, std::string id);
  std::string id() const override { return id_; }
  CoeffJets coeffs(double u, double v) const override;
  bool inside(const Vector2d& p) const override;
  Box2 bbox() const override;
  double gauss(const Vector2d& p) const override;
  double locus_distance(const Vector2d& p) const override;
  double locus_metric_distance(const Vector2d& p) const override { return locus_distance(p); }
  LocusDirection locus_direction(const Vector2d& p) const override { return {0, p.y()}; }
  std::vector<AffineMap> symmetries() const override;
  std::optional<PoleInfo> pole() const override;
  bool periodic_v() const override { return true; }
  const RevolutionProfile& profile() const { return profile_; }

 private:
  RevolutionProfile profile_;
  std::string id_;
  double fprime0_;
};

// ds^2 = dr^2 + r^p dtheta^2, incomplete at r = 0.
class ModelChart final : public Chart {
 public:
  explicit ModelChart(double p, double r_max = 4.0) : p_(p), r_max_(r_max) {}
  std::string id() const override { return "model"; }
  CoeffJets coeffs(double u, double v) const override;
  bool inside(const Vector2d& p) const override { return p.x() > 0.0 && p.x() < r_max_; }
  Box2 bbox() const override { return {{0.0, -8.0}, {r_max_, 8.0}}; }
  double gauss(const Vector2d& p) const override;
  double locus_distance(const Vector2d& p) const override { return p.x(); }
  LocusDirection locus_direction(const Vector2d& p) const override { return {0, p.y()}; }
  std::vector<AffineMap> symmetries() const override;
  bool periodic_v() const override { return true; }
  double exponent() const { return p_; }

 private:
  double p_, r_max_;
};

// ds^2 = y dx^2 + x dy^2 near a polygon vertex; incomplete on both axes.
class CornerChart final : public Chart {
 public:
  explicit CornerChart(double extent = 4.0) : L_(extent) {}
  std::string id() const override { return "corner"; }
  CoeffJets coeffs(double u, double v) const override;
  bool inside(const Vector2d& p) const override {
    return p.x() > 0.0 && p.y() > 0.0 && p.x() < L_ && p.y() < L_;
  }
  Box2 bbox() const override { return {{0.0, 0.0}, {L_, L_}}; }
  double gauss(const Vector2d& p) const override;
  double locus_distance(const Vector2d& p) const override { return std::min(p.x(), p.y()); }
  double locus_metric_distance(const Vector2d& p) const override;
  std::vector<AffineMap> symmetries() const override;

 private:
  double L_;
};

// ds^2 = (1-y^2) dx^2 + (1-x^2) dy^2 on the open square |x|,|y| < 1.
class ProductSquareChart final : public Chart {
 public:
  std::string id() const override { return "product_square"; }
  CoeffJets coeffs(double u, double v) const override;
  bool inside(const Vector2d& p) const override {
    return std::abs(p.x()) < 1.0 && std::abs(p.y()) < 1.0;
  }
  Box2 bbox() const override { return {{-1.0, -1.0}, {1.0, 1.0}}; }
  double gauss(const Vector2d& p) const override;
  double locus_distance(const Vector2d& p) const override {
    return std::min(1.0 - std::abs(p.x()), 1.0 - std::abs(p.y()));
  }
  std::vector<AffineMap> symmetries() const override;
};

// Triangle metric (bc dx^2 + ac dy^2 + ab d(x+y)^2)/(a+b+c) with
// (a,b,c) = (1+x, 1+y, 1-x-y).
class ProductTriangleChart final : public Chart {
 public:
  std::string id() const override { return "product_triangle"; }
  CoeffJets coeffs(double u, double v) const override;
  bool inside(const Vector2d& p) const override {
    return 1.0 + p.x() > 0.0 && 1.0 + p.y() > 0.0 && 1.0 - p.x() - p.y() > 0.0;
  }
  Box2 bbox() const override { return {{-1.0, -1.0}, {2.0, 2.0}}; }
  double locus_distance(const Vector2d& p) const override {
    return std::min({1.0 + p.x(), 1.0 + p.y(), 1.0 - p.x() - p.y()});
  }
  std::vector<AffineMap> symmetries() const override;
};

// Hexagon metric with (a,b,c) = (1-x^2, 1-y^2, 1-(x+y)^2).
class ProductHexagonChart final : public Chart {
 public:
  std::string id() const override { return "product_hexagon"; }
  CoeffJets coeffs(double u, double v) const override;
  bool inside(const Vector2d& p) const override {
    return std::abs(p.x()) < 1.0 && std::abs(p.y()) < 1.0 && std::abs(p.x() + p.y()) < 1.0;
  }
  Box2 bbox() const override { return {{-1.0, -1.0}, {1.0, 1.0}}; }
  double locus_distance(const Vector2d& p) const override {
    return std::min({1.0 - std::abs(p.x()), 1.0 - std::abs(p.y()),
                     1.0 - std::abs(p.x() + p.y())});
  }
  std::vector<AffineMap> symmetries() const override;
};

// The Clifford-quotient metric in global disk coordinates:
// (1-Y^2) dX^2 + 2XY dX dY + (1-X^2) dY^2 on X^2 + Y^2 < 1.
// Same surface as revolution(r sqrt(1-r^2)); the r = 0 pole is interior
// and smooth here, so loops may sweep across it.
class CliffordDiskChart final : public Chart {
 public:
  std::string id() const override { return "clifford_disk"; }
  CoeffJets coeffs(double u, double v) const override;
  bool inside(const Vector2d& p) const override { return p.squaredNorm() < 1.0; }
  Box2 bbox() const override { return {{-1.0, -1.0}, {1.0, 1.0}}; }
  double gauss(const Vector2d& p) const override;
  double locus_distance(const Vector2d& p) const override { return 1.0 - p.norm(); }
  double locus_metric_distance(const Vector2d& p) const override { return 1.0 - p.norm(); }
  LocusDirection locus_direction(const Vector2d& p) const override {
    return {0, std::atan2(p.y(), p.x())};
  }
  std::vector<AffineMap> symmetries() const override;
};

// Cylinder sin^2(y)(dx^2 + dy^2) on |x| <= R capped  with
// cos^2(|x|-R) sin^2(y) (dx^2 + cos^2(|x|-R) dy^2), or with a C^2 bump cap.
class NeckChart final : public Chart {
 public:
  explicit NeckChart(double R, bool smooth_cap = false) : R_(R), smooth_(smooth_cap) {}
  std::string id() const override { return smooth_ ? "neck_smooth" : "neck"; }
  CoeffJets coeffs(double u, double v) const override;
  bool inside(const Vector2d& p) const override {
    return p.y() > 0.0 && p.y() < M_PI && std::abs(p.x()) < R_ + M_PI_2;
  }
  Box2 bbox() const override { return {{-R_ - M_PI_2, 0.0}, {R_ + M_PI_2, M_PI}}; }
  double gauss(const Vector2d& p) const override;
  double locus_distance(const Vector2d& p) const override {
    return std::min({p.y(), M_PI - p.y(), R_ + M_PI_2 - std::abs(p.x())});
  }
  double locus_metric_distance(const Vector2d& p) const override;
  LocusDirection locus_direction(const Vector2d& p) const override {
    return {p.y() < M_PI_2 ? 0 : 1, p.x()};
  }
  std::vector<AffineMap> symmetries() const override;
  double R() const { return R_; }
  bool smooth_cap() const { return smooth_; }

 private:
  Jet2d cap_factor(const Jet2d& t) const;  // cos^2 or C^2 bump
  double R_;
  bool smooth_;
};

// Factory for catalog charts described by a JSON-ish spec; see cli module
// for the serialized form.  Throws std::invalid_argument for unknown ids or
// parameters producing a degenerate metric.
std::unique_ptr<Chart> make_revolution(const RevolutionProfile& p, const std::string& id = "revolution");

}  // namespace geoflow
