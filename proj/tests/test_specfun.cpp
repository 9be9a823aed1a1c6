#include <doctest.h>

#include <cmath>
#include <limits>

#include "bellqft/errors.hpp"
#include "bellqft/quadrature.hpp"
#include "bellqft/specfun.hpp"
#include "oracles.hpp"

using namespace bellqft;
using oracle::mp;
using namespace oracle;

TEST_CASE("quoted values of J0, Y0, K0 and sech") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-15));
  CHECK(std::fabs(bessel_j0(2.404825557695773)) < 1e-10);
  CHECK(bessel_y0(1.0) == doctest::Approx(0.08825696421567696).epsilon(1e-14));
  CHECK(bessel_y0(1e-8) == doctest::Approx(2 / kPi * (std::log(5e-9) + 0.5772156649)).epsilon(1e-4));
  CHECK(std::fabs(bessel_y0(0.8935769662791675)) < 1e-9);
  CHECK(bessel_k0(1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-14));
  CHECK(bessel_k0(1e-10) == doctest::Approx(-std::log(5e-11) - 0.5772156649).epsilon(1e-9));
  CHECK(bessel_k0(10.0) == doctest::Approx(1.778006231616765e-5).epsilon(1e-12));
  CHECK(sech(0.0) == 1.0);
  CHECK(sech(1000.0) == 0.0);
  CHECK(sech(1.0) == doctest::Approx(0.6480542736638855).epsilon(1e-15));
}

TEST_CASE("series oracles agree with the independent double-precision library at the switch") {
  for (double x : {5.0, 12.5, 25.0}) {
    CHECK(static_cast<double>(j0_series(mp(x))) == doctest::Approx(boost::math::cyl_bessel_j(0, x)).epsilon(1e-13));
    CHECK(y0_oracle(x) == doctest::Approx(boost::math::cyl_neumann(0, x)).epsilon(1e-12));
    CHECK(k0_oracle(x) == doctest::Approx(boost::math::cyl_bessel_k(0, x)).epsilon(1e-12));
  }
}

TEST_CASE("J0, Y0, K0 against extended precision on a log grid") {
  double worst_j = 0, worst_y = 0, worst_k = 0;
  for (int i = 0; i <= 260; ++i) {
    const double x = std::pow(10.0, -10.0 + 13.0 * i / 260.0);
    worst_j = std::max(worst_j, std::fabs(bessel_j0(x) - j0_oracle(x)));
    worst_y = std::max(worst_y, std::fabs(bessel_y0(x) - y0_oracle(x)));
    const double k = k0_oracle(x);
    worst_k = std::max(worst_k, std::fabs(bessel_k0(x) - k) / std::max(k, 1e-300));
  }
  CHECK(worst_j < 1e-10);
  CHECK(worst_y < 1e-10);
  CHECK(worst_k < 1e-10);
}

TEST_CASE("K0 matches its integral representation") {
  auto integrand = [](double t) { return std::exp(-std::cosh(t)); };
  const auto r = quad::integrate(integrand, 0.0, 8.0, {1e-15, 1e-13, 2000});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(bessel_k0(1.0)).epsilon(1e-13));
}

TEST_CASE("Wronskian of J0 and Y0") {
  for (double x = 0.1; x <= 100.0; x *= 1.37) {
    const double h = 1e-5 * std::max(1.0, x);
    const double dj = (bessel_j0(x + h) - bessel_j0(x - h)) / (2 * h);
    const double dy = (bessel_y0(x + h) - bessel_y0(x - h)) / (2 * h);
    CHECK(bessel_j0(x) * dy - dj * bessel_y0(x) == doctest::Approx(2.0 / (kPi * x)).epsilon(1e-7));
  }
}

TEST_CASE("symmetry, monotonicity and range properties") {
  for (double x = 0.01; x < 2000; x *= 1.9) {
    CHECK(bessel_j0(-x) == bessel_j0(x));
    CHECK(sech(-x) == sech(x));
    CHECK(sech(x) >= 0.0);
    if (x < 700) CHECK(sech(x) > 0.0);
    CHECK(sech(x) <= 1.0);
  }
  double previous = std::numeric_limits<double>::infinity();
  for (double x = 1e-12; x < 700; x *= 1.2) {
    const double k = bessel_k0(x);
    CHECK(k > 0.0);
    CHECK(k < previous);
    previous = k;
  }
}

TEST_CASE("invalid arguments are domain errors") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(bessel_j0(nan), DomainError);
  CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(bessel_y0(0.0), DomainError);
  CHECK_THROWS_AS(bessel_y0(-1.0), DomainError);
  CHECK_THROWS_AS(bessel_k0(0.0), DomainError);
  CHECK_THROWS_AS(bessel_k0(nan), DomainError);
}
