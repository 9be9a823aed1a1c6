#include <doctest.h>

#include <cmath>
#include <random>

#include "bellqft/propagators.hpp"
#include "bellqft/specfun.hpp"

using namespace bellqft;

TEST_CASE("interval") {
  CHECK(interval({1, 0}) == 1.0);
  CHECK(interval({1, 1}) == 0.0);
  CHECK(interval({0, 2}) == -4.0);
}

TEST_CASE("Pauli-Jordan function values") {
  const MassParam one(1.0);
  CHECK(pauli_jordan_point({0, 1}, one) == 0.0);
  CHECK(pauli_jordan_point({1, 0}, one) == doctest::Approx(-0.3825988432789833).epsilon(1e-15));
  CHECK(pauli_jordan_point({-1, 0}, one) == doctest::Approx(0.3825988432789833).epsilon(1e-15));
  CHECK(pauli_jordan_point({0.5, 3}, one) == 0.0);
}

TEST_CASE("light-cone conventions") {
  const MassParam one(1.0);
  CHECK(pauli_jordan_point({2, 2}, one) == -0.5);
  CHECK(pauli_jordan_point({-2, 2}, one) == 0.5);
  CHECK(pauli_jordan_point({2, 2}, one, LightCone::ThetaZero) == 0.0);
  CHECK_THROWS_AS(pauli_jordan_point({2, -2}, one, LightCone::Throw), LightConeError);
  CHECK_THROWS_AS(hadamard_point({1, 1}, one), LightConeError);
  CHECK_THROWS_AS(hadamard_point({0, 0}, one), LightConeError);
}

TEST_CASE("Hadamard function values") {
  CHECK(hadamard_point({0, 1}, MassParam(1.0)) == doctest::Approx(0.42102443824070834 / kPi).epsilon(1e-14));
  CHECK(hadamard_point({1, 0}, MassParam(1.0)) == doctest::Approx(-0.04412848210783848).epsilon(1e-13));
  CHECK(hadamard_point({0, 1}, MassParam(1e-8)) == doctest::Approx((-std::log(5e-9) - 0.5772156649) / kPi).epsilon(1e-6));
}

TEST_CASE("parity and causality on a sampled grid") {
  const MassParam m(0.7);
  for (double t = -3.0; t <= 3.0; t += 0.37) {
    for (double x = -3.0; x <= 3.0; x += 0.41) {
      if (interval({t, x}) == 0.0) continue;
      CHECK(pauli_jordan_point({-t, x}, m) == -pauli_jordan_point({t, x}, m));
      CHECK(hadamard_point({-t, x}, m) == hadamard_point({t, x}, m));
      CHECK(hadamard_point({t, -x}, m) == hadamard_point({t, x}, m));
      if (interval({t, x}) < 0) CHECK(pauli_jordan_point({t, x}, m) == 0.0);
    }
  }
}

TEST_CASE("Lorentz invariance under random boosts") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-4.0, 4.0), rapidity(-1.5, 1.5);
  const MassParam m(1.3);
  int checked = 0;
  while (checked < 500) {
    const SpacetimePoint p{coord(rng), coord(rng)};
    if (std::fabs(interval(p)) < 1e-2) continue;
    const double chi = rapidity(rng);
    const SpacetimePoint q{p.t * std::cosh(chi) + p.x * std::sinh(chi),
                           p.x * std::cosh(chi) + p.t * std::sinh(chi)};
    CHECK(hadamard_point(q, m) == doctest::Approx(hadamard_point(p, m)).epsilon(1e-9));
    // Boosts with |chi| < 1.5 keep the sign of t for timelike points.
    if (interval(p) > 0) CHECK(pauli_jordan_point(q, m) == doctest::Approx(pauli_jordan_point(p, m)).epsilon(1e-9));
    ++checked;
  }
}

TEST_CASE("guarded Hadamard function") {
  const MassParam m(1e-8);
  // Outside the band it is the exact function.
  CHECK(hadamard_guarded({0.3, 1.0}, m, 1e-12) == hadamard_point({0.3, 1.0}, m));
  // Inside the band the small-argument form agrees with the exact value.
  const SpacetimePoint near{1.0, 1.0 + 1e-14};
  CHECK(hadamard_guarded(near, m, 1e-12) == doctest::Approx(hadamard_point(near, m)).epsilon(1e-12));
  const SpacetimePoint near_timelike{1.0 + 1e-14, 1.0};
  CHECK(hadamard_guarded(near_timelike, m, 1e-12) ==
        doctest::Approx(hadamard_point(near_timelike, m)).epsilon(1e-12));
  CHECK(std::isfinite(hadamard_guarded({1.0, 1.0}, m, 1e-12)));
  CHECK(std::isfinite(hadamard_guarded({0.0, 0.0}, m, 1e-12)));
}

TEST_CASE("mass validation") {
  CHECK(MassParam().value() == 1e-8);
  CHECK_THROWS_AS(MassParam(0.0), DomainError);
  CHECK_THROWS_AS(MassParam(-1.0), DomainError);
  CHECK_THROWS_AS(MassParam(std::nan("")), DomainError);
}
