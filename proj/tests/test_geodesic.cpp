#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "geoflow/charts.hpp"
#include "geoflow/geodesic.hpp"
#include "test_helpers.hpp"

using namespace geoflow;

TEST_CASE("geodesic rhs matches the product-square equations") {
  ProductSquareChart sq;
  auto r = testor::rng(11);
  std::uniform_real_distribution<double> up(-0.8, 0.8), uv(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vector2d p(up(r), up(r));
    Vector2d v(uv(r), uv(r));
    const double x = p.x(), y = p.y();
    const Vector2d a = geodesic_acceleration(sq, p, v);
    const double xdd = 2 * y / (1 - y * y) * v.x() * v.y() - x / (1 - y * y) * v.y() * v.y();
    const double ydd = -y / (1 - x * x) * v.x() * v.x() + 2 * x / (1 - x * x) * v.x() * v.y();
    CHECK(a.x() == doctest::Approx(xdd).epsilon(1e-10));
    CHECK(a.y() == doctest::Approx(ydd).epsilon(1e-10));
  }
  // Horizontal motion at (0, 0.5) gains downward acceleration.
  const Vector2d acc = geodesic_acceleration(sq, {0.0, 0.5}, {1.0, 0.0});
  CHECK(acc.y() < 0.0);
}

TEST_CASE("geodesic rhs matches the cap equations") {
  NeckChart neck(M_PI);
  const double R = neck.R();
  auto r = testor::rng(12);
  std::uniform_real_distribution<double> ut(0.05, 1.4), uy(0.3, M_PI - 0.3), uv(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double t = ut(r);
    const Vector2d p(R + t, uy(r));
    const Vector2d v(uv(r), uv(r));
    const Vector2d a = geodesic_acceleration(neck, p, v);
    const double xd = v.x(), yd = v.y();
    const double xdd = xd * xd * std::tan(t) - 2 * xd * yd / std::tan(p.y()) -
                       yd * yd * std::sin(2 * t);
    const double ydd = xd * xd / (std::cos(t) * std::cos(t)) / std::tan(p.y()) +
                       4 * xd * yd * std::tan(t) - yd * yd / std::tan(p.y());
    CHECK(a.x() == doctest::Approx(xdd).epsilon(1e-9));
    CHECK(a.y() == doctest::Approx(ydd).epsilon(1e-9));
    // x_dot = 0 forces x_dotdot < 0 in the right cap.
    const Vector2d av = geodesic_acceleration(neck, p, {0.0, 1.0});
    CHECK(av.x() < 0.0);
  }
}

TEST_CASE("meridians have no angular acceleration") {
  RevolutionChart cl(clifford_profile(), "clifford");
  const Vector2d a = geodesic_acceleration(cl, {0.4, 1.0}, {1.0, 0.0});
  CHECK(a.y() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("integrator order check on the round sphere") {
  // A great circle through the pole: meridian of sin r, length 2 pi returns
  // to the start.
  RevolutionChart sphere(sine_profile(), "sphere");
  GeodesicState st;
  st.p = {M_PI / 2, 0.0};
  st.v = {0.0, 1.0};
  IntegrateControls c;
  c.max_length = 2 * M_PI;
  auto traj = integrate(sphere, st, c);
  REQUIRE(traj.status == Trajectory::Status::MaxLength);
  const auto& e = traj.back();
  CHECK(e.p.x() == doctest::Approx(M_PI / 2).epsilon(1e-9));
  CHECK(std::abs(e.p.y() - 2 * M_PI) < 1e-8);
}

TEST_CASE("critical circle is invariant") {
  RevolutionChart cl(clifford_profile(), "clifford");
  const double r0 = 1.0 / std::sqrt(2.0);
  GeodesicState st;
  st.p = {r0, 0.0};
  st.v = {0.0, 1.0};
  IntegrateControls c;
  c.max_length = 20.0;
  auto traj = integrate(cl, st, c);
  for (const auto& s : traj.samples) CHECK(std::abs(s.p.x() - r0) < 1e-8);
}

TEST_CASE("neck vertical geodesics stay vertical") {
  NeckChart neck(M_PI);
  GeodesicState st;
  st.p = {0.0, 1.0};
  st.v = {0.0, 1.0};
  IntegrateControls c;
  c.max_length = 1.5;
  auto traj = integrate(neck, st, c);
  for (const auto& s : traj.samples) CHECK(std::abs(s.p.x()) < 1e-10);
}

TEST_CASE("unit speed defect and clairaut drift stay below 1e-8") {
  RevolutionChart cl(clifford_profile(), "clifford");
  auto r = testor::rng(13);
  std::uniform_real_distribution<double> ur(0.15, 0.9), uth(0.0, 2 * M_PI), uang(0.0, 2 * M_PI);
  for (int i = 0; i < 100; ++i) {
    GeodesicState st;
    st.p = {ur(r), uth(r)};
    const double a = uang(r);
    st.v = {std::cos(a), std::sin(a)};
    st = normalized(cl, st);
    const double c0 = clairaut_constant(cl, st);
    IntegrateControls c;
    c.max_length = 10.0;
    auto traj = integrate(cl, st, c);
    CHECK(traj.max_unit_defect < 1e-8);
    double drift = 0.0;
    double fmin = 1e9;
    for (const auto& s : traj.samples) {
      drift = std::max(drift, std::abs(clairaut_constant(cl, s) - c0));
      fmin = std::min(fmin, clifford_profile().f(s.p.x()));
    }
    CHECK(drift < 1e-8);
    // Clairaut bound: f(r) >= |c| along the trajectory.
    CHECK(fmin >= std::abs(c0) - 1e-9);
  }
}

TEST_CASE("reversibility returns to the start") {
  CliffordDiskChart disk;
  auto r = testor::rng(14);
  std::uniform_real_distribution<double> u(-0.6, 0.6), uang(0.0, 2 * M_PI);
  for (int i = 0; i < 25; ++i) {
    GeodesicState st;
    st.p = {u(r), u(r)};
    const double a = uang(r);
    st.v = {std::cos(a), std::sin(a)};
    st = normalized(disk, st);
    IntegrateControls c;
    c.max_length = 2.0;
    auto fwd = integrate(disk, st, c);
    if (fwd.status != Trajectory::Status::MaxLength) continue;
    auto bwd = integrate(disk, reversed(fwd.back()), c);
    REQUIRE(bwd.status == Trajectory::Status::MaxLength);
    CHECK((bwd.back().p - st.p).norm() < 1e-6);
  }
}

TEST_CASE("event location finds the diagonal crossing") {
  ProductSquareChart sq;
  GeodesicState st;
  st.p = {0.0, 0.2};
  st.v = {1.0, 0.0};
  st = normalized(sq, st);
  IntegrateControls c;
  c.max_length = 4.0;
  Event diag;
  diag.id = "x=y";
  diag.fn = [](const GeodesicState& s) { return s.p.x() - s.p.y(); };
  diag.stop = true;
  c.events.push_back(diag);
  auto traj = integrate(sq, st, c);
  REQUIRE(traj.status == Trajectory::Status::StoppedAtEvent);
  REQUIRE(traj.events.size() == 1);
  CHECK(std::abs(traj.events[0].state.p.x() - traj.events[0].state.p.y()) < 1e-10);

  // Small launch ordinate: crossing angle close to pi/4.
  const auto& hit = traj.events[0].state;
  const Matrix2d g = metric_matrix(sq, hit.p);
  const double ang = angle_g(g, hit.v, Vector2d(1.0, 1.0));
  CHECK(ang == doctest::Approx(M_PI / 4).epsilon(0.08));
}

TEST_CASE("integration truncates at the incomplete locus") {
  ModelChart model(1.0);
  GeodesicState st;
  st.p = {0.5, 0.0};
  st.v = {-1.0, 0.0};
  IntegrateControls c;
  c.max_length = 2.0;
  auto traj = integrate(model, st, c);
  CHECK(traj.status == Trajectory::Status::TruncatedAtLocus);
  CHECK(traj.length() < 0.55);  // truncated before the requested 2.0
}
