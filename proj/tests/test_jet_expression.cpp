#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geoflow/expression.hpp"
#include "geoflow/jet.hpp"

using namespace geoflow;

TEST_CASE("jet arithmetic against hand derivatives") {
  // w(u,v) = sin(u v) / (1 + u^2)
  auto w = [](auto u, auto v) { return sin(u * v) / (make_constant<decltype(u)>(1.0) + u * u); };
  const double u0 = 0.7, v0 = -0.4;
  const Jet2d r = w(Jet2d::var_u(u0), Jet2d::var_v(v0));

  const double denom = 1.0 + u0 * u0;
  CHECK(r.f == doctest::Approx(std::sin(u0 * v0) / denom).epsilon(1e-14));

  const double h = 1e-5;
  auto wd = [&](double u, double v) { return std::sin(u * v) / (1.0 + u * u); };
  const double fu = (wd(u0 + h, v0) - wd(u0 - h, v0)) / (2 * h);
  const double fv = (wd(u0, v0 + h) - wd(u0, v0 - h)) / (2 * h);
  const double fuu = (wd(u0 + h, v0) - 2 * wd(u0, v0) + wd(u0 - h, v0)) / (h * h);
  const double fuv =
      (wd(u0 + h, v0 + h) - wd(u0 + h, v0 - h) - wd(u0 - h, v0 + h) + wd(u0 - h, v0 - h)) /
      (4 * h * h);
  CHECK(r.fu == doctest::Approx(fu).epsilon(1e-8));
  CHECK(r.fv == doctest::Approx(fv).epsilon(1e-8));
  CHECK(r.fuu == doctest::Approx(fuu).epsilon(1e-5));
  CHECK(r.fuv == doctest::Approx(fuv).epsilon(1e-5));
}

TEST_CASE("nested jets give fourth derivatives of sin") {
  // Outer jet in u of inner jets: value slot tracks sin, outer derivatives
  // of the inner coefficients line up with higher derivatives.
  using JJ = Jet2<Jet2d>;
  const double x0 = 0.3;
  JJ X;
  X.f = Jet2d::var_u(x0);
  X.fu = Jet2d::constant(1.0);
  const JJ s = sin(X);
  CHECK(s.f.f == doctest::Approx(std::sin(x0)));
  CHECK(s.f.fu == doctest::Approx(std::cos(x0)));
  CHECK(s.fu.f == doctest::Approx(std::cos(x0)));
  CHECK(s.fuu.f == doctest::Approx(-std::sin(x0)));
  CHECK(s.fuu.fu == doctest::Approx(-std::cos(x0)));   // third derivative
  CHECK(s.fuu.fuu == doctest::Approx(std::sin(x0)));   // fourth derivative
}

TEST_CASE("expression parsing and evaluation") {
  const auto f = Expression::parse("r*sqrt(1-r^2)", {"r"});
  const double r0 = 1.0 / std::sqrt(2.0);
  CHECK(f.eval<double>({r0}) == doctest::Approx(0.5).epsilon(1e-14));

  const Jet2d j = f.eval<Jet2d>({Jet2d::var_u(r0)});
  CHECK(j.fu == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(j.fuu == doctest::Approx(-4.0).epsilon(1e-10));

  const auto g = Expression::parse("sin(r)", {"r"});
  CHECK(g.eval<Jet2d>({Jet2d::var_u(0.0)}).fu == doctest::Approx(1.0));
}

TEST_CASE("expression autodiff matches central differences") {
  const auto f = Expression::parse("sin(x*y) + x^3/(2+cos(y)) - ln(1+x^2)", {"x", "y"});
  std::mt19937_64 rng(20260811);
  std::uniform_real_distribution<double> dist(-1.2, 1.2);
  for (int i = 0; i < 50; ++i) {
    const double x = dist(rng), y = dist(rng);
    const Jet2d v = f.eval<Jet2d>({Jet2d::var_u(x), Jet2d::var_v(y)});
    const double h = 1e-6;
    const double fx = (f({x + h, y}) - f({x - h, y})) / (2 * h);
    const double fy = (f({x, y + h}) - f({x, y - h})) / (2 * h);
    CHECK(v.fu == doctest::Approx(fx).epsilon(1e-7));
    CHECK(v.fv == doctest::Approx(fy).epsilon(1e-7));
  }
}

TEST_CASE("expression errors carry positions") {
  CHECK_THROWS_AS(Expression::parse("r*", {"r"}), ParseError);
  try {
    Expression::parse("r*", {"r"});
  } catch (const ParseError& e) {
    CHECK(e.column == 3);
  }
  CHECK_THROWS_AS(Expression::parse("bogus(r)", {"r"}), ParseError);
  CHECK_THROWS_AS(Expression::parse("r + q", {"r"}), ParseError);
}

TEST_CASE("printer round-trips through the parser") {
  const std::string texts[] = {"r*sqrt(1-r^2)", "sin(x)*cos(y)-x/(y+2)", "2^x^2", "-(x+y)*3"};
  for (const auto& t : texts) {
    const auto e = Expression::parse(t, {"x", "y", "r"});
    const auto e2 = Expression::parse(e.print(), {"x", "y", "r"});
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 0.9);
    for (int i = 0; i < 10; ++i) {
      std::vector<double> v{dist(rng), dist(rng), dist(rng)};
      CHECK(e(v) == doctest::Approx(e2(v)).epsilon(1e-15));
    }
  }
}
