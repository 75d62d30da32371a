#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geoflow/quadrature.hpp"
#include "geoflow/rootfind.hpp"

using namespace geoflow;

TEST_CASE("gauss rule integrates polynomials exactly") {
  auto f = [](double x) { return 5 * std::pow(x, 9) - x * x + 3; };
  const double v = quad::fixed_gauss(f, -1.0, 2.0, 8);
  // antiderivative: x^10/2 - x^3/3 + 3x
  auto F = [](double x) { return std::pow(x, 10) / 2 - x * x * x / 3 + 3 * x; };
  CHECK(v == doctest::Approx(F(2) - F(-1)).epsilon(1e-13));
}

TEST_CASE("adaptive quadrature on oscillatory integrand") {
  auto f = [](double x) { return std::sin(40.0 * x) * std::exp(-x); };
  const double v = quad::adaptive(f, 0.0, 3.0, {1e-12, 1e-14, 48});
  // exact: int sin(a x) e^{-x} = [ -e^{-x}(sin(ax) + a cos(ax)) ] / (1+a^2)
  auto F = [](double x) {
    const double a = 40.0;
    return -std::exp(-x) * (std::sin(a * x) + a * std::cos(a * x)) / (1 + a * a);
  };
  CHECK(v == doctest::Approx(F(3) - F(0)).epsilon(1e-11));
}

TEST_CASE("tanh-sinh handles inverse square root endpoints") {
  auto f = [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); };
  CHECK(quad::tanh_sinh(f, 0.0, 1.0, 1e-12) == doctest::Approx(M_PI).epsilon(1e-7));
  // With exact endpoint distances the full precision is recovered.
  auto fs = [](double, double da, double db) { return 1.0 / std::sqrt(da * db); };
  CHECK(quad::tanh_sinh_sing(fs, 0.0, 1.0, 1e-13) == doctest::Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("brent and scan_roots") {
  auto f = [](double x) { return std::cos(x) - x; };
  const double r = roots::brent(f, 0.0, 1.0);
  CHECK(f(r) == doctest::Approx(0.0).epsilon(1e-13));

  auto g = [](double x) { return (x - 0.3) * (x - 0.5) * (x - 0.7); };
  auto rs = roots::scan_roots(g, 0.0, 1.0, 128);
  REQUIRE(rs.size() == 3);
  CHECK(rs[0] == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(rs[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rs[2] == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("golden section minimizer") {
  auto f = [](double x) { return (x - 0.832) * (x - 0.832) + 1.0; };
  CHECK(roots::golden_min(f, 0.0, 2.0, 1e-10) == doctest::Approx(0.832).epsilon(1e-7));
}
