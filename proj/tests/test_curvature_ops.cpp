#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "geoflow/charts.hpp"
#include "geoflow/curvature_ops.hpp"
#include "test_helpers.hpp"

using namespace geoflow;

TEST_CASE("whole round sphere integrates to 4 pi") {
  RevolutionChart sphere(sine_profile(), "sphere");
  const auto res = curvature_integral(sphere, RegionSpec::whole());
  REQUIRE(!res.unbounded);
  CHECK(res.value == doctest::Approx(4 * M_PI).epsilon(1e-9));
}

TEST_CASE("whole clifford quotient has infinite total curvature") {
  RevolutionChart cl(clifford_profile(), "clifford");
  const auto res = curvature_integral(cl, RegionSpec::whole());
  CHECK(res.unbounded);
}

TEST_CASE("sublevel disks match the closed form 2pi (f'(0) - f'(r0))") {
  RevolutionChart cl(clifford_profile(), "clifford");
  const auto prof = clifford_profile();
  for (double r0 : {0.2, 0.45, 0.707, 0.9}) {
    const auto res = curvature_integral(cl, RegionSpec::sublevel(r0));
    REQUIRE(!res.unbounded);
    const double expect = 2 * M_PI * (prof.df(1e-12) - prof.df(r0));
    CHECK(res.value == doctest::Approx(expect).epsilon(1e-6));
  }
  // Increasing in r0 and below 2 pi for r0 < critical radius.
  const auto small = curvature_integral(cl, RegionSpec::sublevel(0.3));
  const auto mid = curvature_integral(cl, RegionSpec::sublevel(0.5));
  CHECK(small.value < mid.value);
  CHECK(mid.value < 2 * M_PI);
}

TEST_CASE("background disk touching the model-chart puncture diverges") {
  ModelChart model(1.0);
  const double a = 0.8;
  const auto res = curvature_integral(model, RegionSpec::disk({a, 0.0}, a, 1024));
  CHECK(res.unbounded);
  REQUIRE(res.annulus_partial_sums.size() >= 2);
  CHECK(res.annulus_partial_sums.back() > res.annulus_partial_sums.front());
}

TEST_CASE("interior disks agree with the brute-force 2d oracle") {
  // Independent oracle: midpoint grid sums of K sqrt(det g).
  ProductSquareChart sq;
  const Vector2d c0(0.1, -0.2);
  const double rad = 0.35;
  const auto res = curvature_integral(sq, RegionSpec::disk(c0, rad, 1024));
  REQUIRE(!res.unbounded);
  const double brute = testor::brute_curvature_integral(
      sq, c0 - Vector2d(rad, rad), c0 + Vector2d(rad, rad),
      [&](const Vector2d& p) { return (p - c0).norm() <= rad; }, 1200);
  CHECK(res.value == doctest::Approx(brute).epsilon(2e-3));

  CliffordDiskChart disk;
  const auto res2 = curvature_integral(disk, RegionSpec::disk({0.3, 0.2}, 0.3, 1024));
  const double brute2 = testor::brute_curvature_integral(
      disk, Vector2d(0.0, -0.1), Vector2d(0.6, 0.5),
      [&](const Vector2d& p) { return (p - Vector2d(0.3, 0.2)).norm() <= 0.3; }, 1200);
  CHECK(res2.value == doctest::Approx(brute2).epsilon(2e-3));
}

static double sq_disk_helper();

TEST_CASE("gauss-bonnet residual vanishes on smooth disks") {
  RevolutionChart sphere(sine_profile(), "sphere");
  // Polar cap r <= pi/3 about the pole.
  CHECK(std::abs(gauss_bonnet_residual(sphere, RegionSpec::sublevel(M_PI / 3, 2048))) < 1e-6);

  // Shrinking caps on the clifford chart: residual -> f'(0) - 1 = 0.
  RevolutionChart cl(clifford_profile(), "clifford");
  double prev = 1.0;
  for (double eps : {0.3, 0.15, 0.075}) {
    const double r = std::abs(gauss_bonnet_residual(cl, RegionSpec::sublevel(eps, 2048)));
    CHECK(r < prev + 1e-9);
    prev = r;
  }
  CHECK(prev < 2e-4);

  // Coordinate disk away from the locus on the product square.
  CHECK(std::abs(sq_disk_helper()) < 1e-5);
}

// Helper kept out of the test body so the pair (chart, curve) stays alive.
static std::pair<std::shared_ptr<Chart>, DiscreteCurve> sq_disk_pair() {
  auto chart = std::make_shared<ProductSquareChart>();
  auto c = DiscreteCurve::coord_circle({0.05, 0.1}, 0.2, 512);
  return {chart, c};
}
static double sq_disk_helper() {
  auto [chart, c] = sq_disk_pair();
  return gauss_bonnet_residual(*chart, c);
}

TEST_CASE("vertex curvature on catalog curves") {
  // Flat chart (f = r): any simple ccw loop has total turning 2 pi.
  RevolutionChart flat(flat_cone_profile(10.0), "flat");
  // Use an off-center coordinate circle in disk-like coordinates: build in
  // polar coordinates via lifted circle around (3, 0).
  DiscreteCurve loop;
  loop.closed = true;
  const int n = 512;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * M_PI * i / n;
    const double X = 3.0 + 0.7 * std::cos(a), Y = 0.9 * std::sin(a);
    loop.pts.emplace_back(std::hypot(X, Y), std::atan2(Y, X));
  }
  const double total = total_geodesic_curvature(flat, loop);
  CHECK(total == doctest::Approx(2 * M_PI).epsilon(1e-3));
  // The residual (with its Richardson-corrected k term) is much tighter.
  CHECK(std::abs(gauss_bonnet_residual(flat, loop)) < 1e-6);

  // r = const circle of a revolution chart: k = f'/f with the enclosed pole
  // side on the left (theta increasing).
  RevolutionChart cl(clifford_profile(), "clifford");
  const auto prof = clifford_profile();
  for (double r0 : {0.3, 0.5, 0.707106781, 0.8}) {
    DiscreteCurve circ = DiscreteCurve::level_circle(r0, 256);
    const auto vc = vertex_curvature(cl, circ, 7);
    CHECK(vc.k == doctest::Approx(prof.df(r0) / prof.f(r0)).epsilon(1e-4));
  }

  // Corner-chart level set xy = 1 at (1,1): k = 2^{-3/2} when oriented with
  // decreasing x so the corner side is on the left.
  CornerChart corner;
  DiscreteCurve hyp;
  hyp.closed = false;
  for (int i = 0; i <= 400; ++i) {
    const double x = 3.0 * std::pow(3.0 / 0.33, -i / 400.0);
    hyp.pts.emplace_back(x, 1.0 / x);
  }
  long mid = -1;
  for (long i = 0; i < static_cast<long>(hyp.n()); ++i)
    if (std::abs(hyp.pts[static_cast<size_t>(i)].x() - 1.0) < 5e-3) mid = i;
  REQUIRE(mid > 0);
  const auto vc = vertex_curvature(corner, hyp, mid);
  CHECK(vc.k == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-3));
  // Paper normal direction: -(1,1)/sqrt(x+y) at (1,1).
  CHECK(vc.normal.x() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-2));
  CHECK(vc.normal.y() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-2));
}

TEST_CASE("straight lines in a flat chart have zero geodesic curvature") {
  RevolutionChart flat(flat_cone_profile(10.0), "flat");
  DiscreteCurve seg;
  seg.closed = false;
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    const double X = 1.0 + 2.0 * t, Y = 0.5 + 0.4 * t;
    seg.pts.emplace_back(std::hypot(X, Y), std::atan2(Y, X));
  }
  for (long i = 10; i <= 90; i += 20)
    CHECK(std::abs(vertex_curvature(flat, seg, i).k) < 1e-5);
}

TEST_CASE("gauss-bonnet residual small on 100 random smooth disks per chart") {
  struct Case {
    std::shared_ptr<Chart> chart;
    Vector2d lo, hi;
    double rmax;
  };
  std::vector<Case> cases = {
      {std::make_shared<ProductSquareChart>(), {-0.55, -0.55}, {0.55, 0.55}, 0.25},
      {std::make_shared<CliffordDiskChart>(), {-0.4, -0.4}, {0.4, 0.4}, 0.2},
      {std::make_shared<CornerChart>(), {0.8, 0.8}, {2.5, 2.5}, 0.3},
      {std::make_shared<ModelChart>(1.0), {0.8, -1.5}, {2.5, 1.5}, 0.3},
      {std::make_shared<NeckChart>(M_PI), {-1.5, 1.0}, {1.5, 2.0}, 0.3},
  };
  auto rng = testor::rng(21);
  for (const auto& cs : cases) {
    std::uniform_real_distribution<double> ux(cs.lo.x(), cs.hi.x()), uy(cs.lo.y(), cs.hi.y()),
        ur(0.3 * cs.rmax, cs.rmax);
    for (int i = 0; i < 100; ++i) {
      const Vector2d c(ux(rng), uy(rng));
      const double res = gauss_bonnet_residual(*cs.chart, RegionSpec::disk(c, ur(rng), 1024));
      INFO(cs.chart->id(), " center ", c.x(), ",", c.y());
      CHECK(std::abs(res) < 1e-5);
    }
  }
}
