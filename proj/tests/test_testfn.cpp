#include <doctest.h>

#include <cmath>
#include <random>

#include "bellqft/errors.hpp"
#include "bellqft/testfn.hpp"

using namespace bellqft;

TEST_CASE("bump values") {
  const DiamondBump right{Side::Right, 1.0, 1.0};
  CHECK(bump_value(right, {0, 1}) == doctest::Approx(0.36787944).epsilon(1e-8));
  CHECK(bump_value(right, {0, 2}) == 0.0);
  const DiamondBump left{Side::Left, 1.0, 2.0};
  CHECK(bump_value(left, {0.5, -1}) == doctest::Approx(0.06948345).epsilon(1e-7));
}

TEST_CASE("light-cone coordinates") {
  const DiamondBump right{Side::Right, 1.0, 1.0};
  auto p = lightcone_coords(right, 0.5, 0.5);
  CHECK(p.t == 0.0);
  CHECK(p.x == 1.0);
  p = lightcone_coords(right, 1.0, 0.0);
  CHECK(p.t == 1.0);
  CHECK(p.x == 1.0);
  p = lightcone_coords({Side::Left, 2.0, 1.0}, 0.0, 0.0);
  CHECK(p.t == 0.0);
  CHECK(p.x == 0.0);
  CHECK(right.area() == 2.0);
}

TEST_CASE("support is exactly the diamond") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(-3.0, 3.0), x(-5.0, 5.0);
  const DiamondBump bumps[] = {{Side::Right, 1.5, 1.0}, {Side::Left, 1.5, 1.0}};
  for (int i = 0; i < 100000; ++i) {
    const SpacetimePoint p{t(rng), x(rng)};
    for (const auto& b : bumps) {
      const double rho = std::fabs(p.x - b.center_x()) + std::fabs(p.t);
      // The bump underflows to zero in a thin shell before the boundary.
      if (rho >= b.R) CHECK(bump_value(b, p) == 0.0);
      if (rho < 0.95 * b.R) CHECK(bump_value(b, p) > 0.0);
    }
  }
}

TEST_CASE("smooth decay at the boundary") {
  for (double s : {1.0, 2.0, 10.0}) {
    const DiamondBump b{Side::Right, 1.0, s};
    for (double rho = 0.9991; rho < 1.0; rho += 0.0002) CHECK(bump_value(b, {0.0, 1.0 + rho}) < 1e-12);
  }
}

TEST_CASE("round trip through the unit square") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& b : {DiamondBump{Side::Right, 0.7, 1.0}, DiamondBump{Side::Left, 3.0, 1.0}}) {
    for (int i = 0; i < 1000; ++i) {
      const double a = u(rng), c = u(rng);
      const auto back = unit_coords(b, lightcone_coords(b, a, c));
      CHECK(std::fabs(back.u - a) < 1e-14);
      CHECK(std::fabs(back.v - c) < 1e-14);
    }
  }
}

TEST_CASE("tangent diamonds meet only at the origin") {
  const DiamondBump r{Side::Right, 1.0, 1.0}, l{Side::Left, 1.0, 1.0};
  const auto tip_r = lightcone_coords(r, 0.0, 0.0);
  const auto tip_l = lightcone_coords(l, 0.0, 0.0);
  CHECK(tip_r.x == 0.0);
  CHECK(tip_l.x == 0.0);
  // Every other pair of points is spacelike separated.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const auto a = lightcone_coords(r, u(rng), u(rng));
    const auto b = lightcone_coords(l, u(rng), u(rng));
    CHECK(interval({a.t - b.t, a.x - b.x}) <= 0.0);
  }
}

TEST_CASE("parsing and validation") {
  const auto b = DiamondBump::parse("side=left,R=2,sharpness=0.5");
  CHECK(b == DiamondBump{Side::Left, 2.0, 0.5});
  CHECK(DiamondBump::parse("side=right,R=1,a=3").sharpness == 3.0);
  CHECK(DiamondBump::parse(b.to_string()) == b);
  CHECK_THROWS_AS(DiamondBump::parse("side=right,R=-1,sharpness=1"), ConfigError);
  CHECK_THROWS_AS(DiamondBump::parse("side=right,R=1,sharpness=0"), ConfigError);
  CHECK_THROWS_AS(DiamondBump::parse("side=right,R=1,sharpness=1,colour=red"), ConfigError);
}

TEST_CASE("normalized test function scaling") {
  const DiamondBump b{Side::Right, 1.0, 2.0};
  const NormalizedTestFunction f(b, 0.5, 0.884, 0.0355);
  CHECK(f.scale() == doctest::Approx(0.5 * std::sqrt((1 + 0.884 * 0.884) / 0.0355)));
  CHECK(f({0.0, 1.0}) == doctest::Approx(f.scale() * std::exp(-2.0)));
  CHECK_THROWS(NormalizedTestFunction(b, 1.0, 0.5, 0.0));
}
