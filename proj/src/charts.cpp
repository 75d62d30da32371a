#include "geoflow/charts.hpp"

#include <cmath>

namespace geoflow {

namespace {
const Jet2d kOne = Jet2d::constant(1.0);
const Jet2d kZero = Jet2d::constant(0.0);

AffineMap reflect_u() {
  AffineMap m;
  m.A << -1, 0, 0, 1;
  return m;
}
AffineMap reflect_v() {
  AffineMap m;
  m.A << 1, 0, 0, -1;
  return m;
}
AffineMap swap_uv() {
  AffineMap m;
  m.A << 0, 1, 1, 0;
  return m;
}
AffineMap linear(double a11, double a12, double a21, double a22) {
  AffineMap m;
  m.A << a11, a12, a21, a22;
  return m;
}
}  // namespace

// ---- profiles --------------------------------------------------------------

RevolutionProfile clifford_profile() {
  RevolutionProfile p;
  p.fj = [](const Jet2d& r) { return r * sqrt(kOne - r * r); };
  p.r_end = 1.0;
  p.name = "clifford";
  return p;
}

RevolutionProfile sine_profile() {
  RevolutionProfile p;
  p.fj = [](const Jet2d& r) { return sin(r); };
  p.r_end = M_PI;
  p.name = "sine";
  return p;
}

RevolutionProfile flat_cone_profile(double rmax) {
  RevolutionProfile p;
  p.fj = [](const Jet2d& r) { return r; };
  p.r_end = rmax;
  p.name = "flat";
  return p;
}

RevolutionProfile expression_profile(const std::string& text, double r_end) {
  auto expr = std::make_shared<Expression>(Expression::parse(text, {"r"}));
  RevolutionProfile p;
  p.fj = [expr](const Jet2d& r) { return expr->eval<Jet2d>({r}); };
  p.r_end = r_end;
  p.name = text;
  return p;
}

// ---- revolution ------------------------------------------------------------

RevolutionChart::RevolutionChart(RevolutionProfile profile, std::string id)
    : profile_(std::move(profile)), id_(std::move(id)) {
  double fp = profile_.df(1e-9);
  if (!std::isfinite(fp)) fp = profile_.df(1e-6);
  fprime0_ = fp;
}

CoeffJets RevolutionChart::coeffs(double u, double /*v*/) const {
  const Jet2d f = profile_.jet(u);
  return {kOne, kZero, f * f};
}

bool RevolutionChart::inside(const Vector2d& p) const {
  return p.x() > 0.0 && p.x() < profile_.r_end;
}

Box2 RevolutionChart::bbox() const { return {{0.0, -M_PI}, {profile_.r_end, M_PI}}; }

double RevolutionChart::gauss(const Vector2d& p) const {
  const Jet2d f = profile_.jet(p.x());
  return -f.fuu / f.f;
}

double RevolutionChart::locus_distance(const Vector2d& p) const {
  return profile_.r_end - p.x();
}

std::vector<AffineMap> RevolutionChart::symmetries() const {
  AffineMap rot;
  rot.b = Vector2d(0.0, 1.0);
  return {reflect_v(), rot};
}

std::optional<PoleInfo> RevolutionChart::pole() const {
  return PoleInfo{{0.0, 0.0}, fprime0_};
}

std::unique_ptr<Chart> make_revolution(const RevolutionProfile& p, const std::string& id) {
  return std::make_unique<RevolutionChart>(p, id);
}

// ---- model -----------------------------------------------------------------

CoeffJets ModelChart::coeffs(double u, double /*v*/) const {
  const Jet2d r = Jet2d::var_u(u);
  return {kOne, kZero, pow(r, p_)};
}

double ModelChart::gauss(const Vector2d& p) const {
  return 0.25 * p_ * (2.0 - p_) / (p.x() * p.x());
}

std::vector<AffineMap> ModelChart::symmetries() const {
  AffineMap rot;
  rot.b = Vector2d(0.0, 1.0);
  return {reflect_v(), rot};
}

// ---- corner ----------------------------------------------------------------

CoeffJets CornerChart::coeffs(double u, double v) const {
  return {Jet2d(v, 0.0, 1.0), kZero, Jet2d(u, 1.0, 0.0)};
}

double CornerChart::gauss(const Vector2d& p) const {
  const double x = p.x(), y = p.y();
  return (x + y) / (4.0 * x * x * y * y);
}

double CornerChart::locus_metric_distance(const Vector2d& p) const {
  // Distance to x = 0 along a y = const line is 2 sqrt(x) sqrt(y)/2... the
  // line element is sqrt(y) dx, so the straight-line bound is sqrt(y) x; the
  // cheaper of the two axes, capped by the diagonal route.
  const double dx = std::sqrt(p.y()) * p.x();
  const double dy = std::sqrt(p.x()) * p.y();
  return std::min(dx, dy);
}

std::vector<AffineMap> CornerChart::symmetries() const { return {swap_uv()}; }

// ---- product square ----------------------------------------------------------

CoeffJets ProductSquareChart::coeffs(double u, double v) const {
  const Jet2d x = Jet2d::var_u(u), y = Jet2d::var_v(v);
  return {kOne - y * y, kZero, kOne - x * x};
}

double ProductSquareChart::gauss(const Vector2d& p) const {
  const double ex = 1.0 - p.x() * p.x(), ey = 1.0 - p.y() * p.y();
  return (2.0 - p.x() * p.x() - p.y() * p.y()) / (ex * ex * ey * ey);
}

std::vector<AffineMap> ProductSquareChart::symmetries() const {
  return {swap_uv(), reflect_u(), reflect_v()};
}

// ---- product triangle --------------------------------------------------------

CoeffJets ProductTriangleChart::coeffs(double u, double v) const {
  const Jet2d x = Jet2d::var_u(u), y = Jet2d::var_v(v);
  const Jet2d a = kOne + x, b = kOne + y, c = kOne - x - y;
  const Jet2d third = Jet2d::constant(1.0 / 3.0);
  // (bc dx^2 + ac dy^2 + ab (dx+dy)^2) / 3
  return {(b * c + a * b) * third, a * b * third, (a * c + a * b) * third};
}

std::vector<AffineMap> ProductTriangleChart::symmetries() const {
  return {swap_uv(), linear(-1, -1, 0, 1), linear(1, 0, -1, -1)};
}

// ---- product hexagon ---------------------------------------------------------

CoeffJets ProductHexagonChart::coeffs(double u, double v) const {
  const Jet2d x = Jet2d::var_u(u), y = Jet2d::var_v(v);
  const Jet2d s = x + y;
  const Jet2d a = kOne - x * x, b = kOne - y * y, c = kOne - s * s;
  const Jet2d inv = kOne / (a + b + c);
  return {(b * c + a * b) * inv, a * b * inv, (a * c + a * b) * inv};
}

std::vector<AffineMap> ProductHexagonChart::symmetries() const {
  return {swap_uv(), linear(-1, 0, 0, -1), linear(-1, 0, 1, 1), linear(1, 1, 0, -1)};
}

// ---- clifford disk -----------------------------------------------------------

CoeffJets CliffordDiskChart::coeffs(double u, double v) const {
  const Jet2d X = Jet2d::var_u(u), Y = Jet2d::var_v(v);
  return {kOne - Y * Y, X * Y, kOne - X * X};
}

double CliffordDiskChart::gauss(const Vector2d& p) const {
  const double r2 = p.squaredNorm();
  const double d = 1.0 - r2;
  return (3.0 - 2.0 * r2) / (d * d);
}

std::vector<AffineMap> CliffordDiskChart::symmetries() const {
  const double c = std::cos(1.0), s = std::sin(1.0);
  return {reflect_v(), linear(c, -s, s, c)};
}

// ---- neck with caps ----------------------------------------------------------

Jet2d NeckChart::cap_factor(const Jet2d& t) const {
  if (!smooth_) {
    const Jet2d c = cos(t);
    return c * c;
  }
  // C^2-flat bump: exp(-2 t^3 / (pi/2 - t)), equal to 1 with two vanishing
  // derivatives at the seam and vanishing at the tip.
  const Jet2d num = Jet2d::constant(-2.0) * t * t * t;
  const Jet2d den = Jet2d::constant(M_PI_2) - t;
  return exp(num / den);
}

CoeffJets NeckChart::coeffs(double u, double v) const {
  const Jet2d y = Jet2d::var_v(v);
  const Jet2d sy = sin(y);
  const Jet2d s2 = sy * sy;
  if (std::abs(u) <= R_) return {s2, kZero, s2};
  const Jet2d x = Jet2d::var_u(u);
  const Jet2d t = (u > 0.0) ? x - Jet2d::constant(R_) : Jet2d::constant(-R_) - x;
  const Jet2d B = cap_factor(t);
  return {B * s2, kZero, B * B * s2};
}

double NeckChart::gauss(const Vector2d& p) const {
  const double sy = std::sin(p.y());
  if (std::abs(p.x()) <= R_) return 1.0 / (sy * sy * sy * sy);
  if (smooth_) return Chart::gauss(p);
  const double ct = std::cos(std::abs(p.x()) - R_);
  const double c2 = ct * ct, s2 = sy * sy;
  return 2.0 / (c2 * s2) + 1.0 / (c2 * c2 * s2 * s2);
}

double NeckChart::locus_metric_distance(const Vector2d& p) const {
  const double to_bottom = 1.0 - std::cos(p.y());
  const double to_top = 1.0 + std::cos(p.y());
  double d = std::min(to_bottom, to_top);
  if (std::abs(p.x()) > R_) d *= std::cos(std::abs(p.x()) - R_);
  return d;
}

std::vector<AffineMap> NeckChart::symmetries() const {
  AffineMap flip_y;
  flip_y.A << 1, 0, 0, -1;
  flip_y.b = Vector2d(0.0, M_PI);
  return {reflect_u(), flip_y};
}

}  // namespace geoflow
