#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>
#include <vector>

#include "geoflow/charts.hpp"
#include "test_helpers.hpp"

using namespace geoflow;

namespace {

struct Sample {
  std::shared_ptr<Chart> chart;
  std::function<Vector2d(std::mt19937_64&)> draw;
};

std::vector<Sample> catalog_samples() {
  std::vector<Sample> out;
  auto unif = [](double a, double b, std::mt19937_64& r) {
    return std::uniform_real_distribution<double>(a, b)(r);
  };
  out.push_back({std::make_shared<RevolutionChart>(clifford_profile(), "clifford"),
                 [unif](std::mt19937_64& r) { return Vector2d(unif(0.08, 0.92, r), unif(-3, 3, r)); }});
  out.push_back({std::make_shared<RevolutionChart>(sine_profile(), "sphere"),
                 [unif](std::mt19937_64& r) { return Vector2d(unif(0.2, 2.9, r), unif(-3, 3, r)); }});
  out.push_back({std::make_shared<ModelChart>(1.0),
                 [unif](std::mt19937_64& r) { return Vector2d(unif(0.05, 3.0, r), unif(-3, 3, r)); }});
  out.push_back({std::make_shared<CornerChart>(),
                 [unif](std::mt19937_64& r) { return Vector2d(unif(0.05, 3.0, r), unif(0.05, 3.0, r)); }});
  out.push_back({std::make_shared<ProductSquareChart>(),
                 [unif](std::mt19937_64& r) { return Vector2d(unif(-0.9, 0.9, r), unif(-0.9, 0.9, r)); }});
  out.push_back({std::make_shared<ProductTriangleChart>(), [unif](std::mt19937_64& r) {
                   for (;;) {
                     Vector2d p(unif(-0.9, 1.9, r), unif(-0.9, 1.9, r));
                     if (1.0 - p.x() - p.y() > 0.1 && p.x() > -0.9 && p.y() > -0.9) return p;
                   }
                 }});
  out.push_back({std::make_shared<ProductHexagonChart>(), [unif](std::mt19937_64& r) {
                   for (;;) {
                     Vector2d p(unif(-0.9, 0.9, r), unif(-0.9, 0.9, r));
                     if (std::abs(p.x() + p.y()) < 0.9) return p;
                   }
                 }});
  out.push_back({std::make_shared<CliffordDiskChart>(), [unif](std::mt19937_64& r) {
                   for (;;) {
                     Vector2d p(unif(-0.9, 0.9, r), unif(-0.9, 0.9, r));
                     if (p.norm() < 0.9) return p;
                   }
                 }});
  out.push_back({std::make_shared<NeckChart>(M_PI), [unif](std::mt19937_64& r) {
                   return Vector2d(unif(-M_PI - 1.2, M_PI + 1.2, r), unif(0.3, M_PI - 0.3, r));
                 }});
  out.push_back({std::make_shared<NeckChart>(M_PI, true), [unif](std::mt19937_64& r) {
                   return Vector2d(unif(-M_PI - 1.2, M_PI + 1.2, r), unif(0.3, M_PI - 0.3, r));
                 }});
  return out;
}

}  // namespace

TEST_CASE("catalog coefficient spot values") {
  ModelChart model(1.0);
  auto c = model.coeffs(0.25, 0.0);
  CHECK(c.E.f == doctest::Approx(1.0));
  CHECK(c.G.f == doctest::Approx(0.25));

  RevolutionChart cone(flat_cone_profile(2.0), "flat");
  auto cc = cone.coeffs(0.5, 0.3);
  CHECK(cc.E.f == doctest::Approx(1.0));
  CHECK(cc.G.f == doctest::Approx(0.25));

  ProductSquareChart sq;
  auto cs = sq.coeffs(0.0, 0.0);
  CHECK(cs.E.f == doctest::Approx(1.0));
  CHECK(cs.F.f == doctest::Approx(0.0));
  CHECK(cs.G.f == doctest::Approx(1.0));
}

TEST_CASE("analytic curvature values from the catalog") {
  // Model chart: K = 1/(4 r^2).  At r = 0.5 this is 1.  (The coefficient in
  // front of 1/r^2 is fixed by the exact circle flow r0 e^{-2t} and by the
  // corner-chart asymptotics; see the flow tests.)
  ModelChart model(1.0);
  CHECK(model.gauss({0.5, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));

  CornerChart corner;
  CHECK(corner.gauss({1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-12));

  RevolutionChart sphere(sine_profile(), "sphere");
  CHECK(sphere.gauss({M_PI / 4, 0.0}) == doctest::Approx(1.0).epsilon(1e-10));

  // Clifford quotient: K = (3 - 2 r^2)/(1 - r^2)^2; at the critical circle
  // r = 1/sqrt(2) this equals 8.
  RevolutionChart clifford(clifford_profile(), "clifford");
  CHECK(clifford.gauss({1.0 / std::sqrt(2.0), 0.0}) == doctest::Approx(8.0).epsilon(1e-10));
  CliffordDiskChart disk;
  CHECK(disk.gauss({0.5, 0.5}) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("finite-difference curvature agrees with evaluators") {
  auto samples = catalog_samples();
  auto r = testor::rng(1);
  for (const auto& s : samples) {
    for (int i = 0; i < 40; ++i) {
      const Vector2d p = s.draw(r);
      const double k_eval = s.chart->gauss(p);
      const double k_fd = testor::fd_gauss(*s.chart, p);
      const double scale = std::max(1.0, std::abs(k_eval));
      INFO(s.chart->id(), " at ", p.x(), ",", p.y());
      CHECK(std::abs(k_eval - k_fd) / scale < 1e-4);
    }
  }
}

TEST_CASE("coframe curvature matches closed forms") {
  // The generic jet-based path (Chart::gauss default) against the overrides.
  auto samples = catalog_samples();
  auto r = testor::rng(2);
  for (const auto& s : samples) {
    for (int i = 0; i < 25; ++i) {
      const Vector2d p = s.draw(r);
      const ConnectionForm cf = connection_form(*s.chart, p);
      const double k_generic = (cf.a.fv - cf.b.fu) / cf.area_density;
      INFO(s.chart->id());
      CHECK(k_generic == doctest::Approx(s.chart->gauss(p)).epsilon(1e-7));
    }
  }
}

TEST_CASE("declared symmetries are isometries") {
  auto samples = catalog_samples();
  auto r = testor::rng(3);
  for (const auto& s : samples) {
    for (const auto& m : s.chart->symmetries()) {
      for (int i = 0; i < 30; ++i) {
        const Vector2d p = s.draw(r);
        const Vector2d q = m(p);
        if (!s.chart->inside(q)) continue;
        const Matrix2d g_p = metric_matrix(*s.chart, p);
        const Matrix2d g_q = metric_matrix(*s.chart, q);
        const Matrix2d pullback = m.A.transpose() * g_q * m.A;
        INFO(s.chart->id());
        CHECK((pullback - g_p).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, g_p.norm()));
      }
    }
  }
}

TEST_CASE("positive curvature charts") {
  auto r = testor::rng(4);
  std::vector<Sample> pos;
  auto all = catalog_samples();
  // product_square, clifford, corner, model, neck are positively curved.
  // The sphere has K = 1 > 0 too but is complete; the smooth-cap variant
  // trades positivity in the cap for C^2 regularity at the seam.
  for (const auto& s : all)
    if (s.chart->id() != "sphere" && s.chart->id() != "neck_smooth") pos.push_back(s);
  for (const auto& s : pos) {
    for (int i = 0; i < 1000; ++i) {
      const Vector2d p = s.draw(r);
      INFO(s.chart->id(), " at ", p.x(), " ", p.y());
      CHECK(s.chart->gauss(p) > 0.0);
    }
  }
}

TEST_CASE("metric determinant vanishes on the incomplete locus") {
  ProductSquareChart sq;
  CHECK(metric_det(sq, {1.0 - 1e-9, 0.3}) < 1e-8);
  CliffordDiskChart disk;
  const double r = 1.0 - 1e-9;
  CHECK(metric_det(disk, {r, 0.0}) < 1e-8);
  NeckChart neck(M_PI);
  CHECK(metric_det(neck, {0.0, 1e-6}) < 1e-11);
}

TEST_CASE("clifford disk and polar charts describe the same metric") {
  // Pull the disk-coordinate metric back to polar coordinates and compare
  // with the revolution chart at matching points.
  RevolutionChart polar(clifford_profile(), "clifford");
  CliffordDiskChart disk;
  auto rgen = testor::rng(5);
  std::uniform_real_distribution<double> ur(0.1, 0.9), ut(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double r = ur(rgen), th = ut(rgen);
    const Vector2d xy(r * std::cos(th), r * std::sin(th));
    Matrix2d J;  // d(X,Y)/d(r,theta)
    J << std::cos(th), -r * std::sin(th), std::sin(th), r * std::cos(th);
    const Matrix2d gd = metric_matrix(disk, xy);
    const Matrix2d gp = J.transpose() * gd * J;
    const Matrix2d gref = metric_matrix(polar, {r, th});
    CHECK((gp - gref).cwiseAbs().maxCoeff() < 1e-12);
  }
}
