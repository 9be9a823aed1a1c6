#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "bellqft/qmc.hpp"

using namespace bellqft::qmc;

TEST_CASE("unscrambled Sobol' points") {
  // Natural (not Gray-code) order: the first coordinate is the base-2
  // radical inverse.
  const double x[] = {0.0, 0.5, 0.25, 0.75, 0.125, 0.625};
  const double y[] = {0.0, 0.5, 0.75, 0.25, 0.625, 0.125};
  for (std::uint32_t i = 0; i < 6; ++i) {
    CHECK(sobol_raw(i, 0) / 4294967296.0 == x[i]);
    CHECK(sobol_raw(i, 1) / 4294967296.0 == y[i]);
  }
}

TEST_CASE("scrambled points are deterministic, inside the cube and balanced") {
  ScrambledSobol a(4, 42), b(4, 42), c(4, 43);
  std::array<double, 4> pa{}, pb{}, pc{};
  std::array<double, 4> mean{};
  bool differs = false;
  const int n = 1 << 12;
  for (int i = 0; i < n; ++i) {
    a.next(pa);
    b.next(pb);
    c.next(pc);
    CHECK(pa == pb);
    differs = differs || pa != pc;
    for (int d = 0; d < 4; ++d) {
      CHECK(pa[d] > 0.0);
      CHECK(pa[d] < 1.0);
      mean[d] += pa[d] / n;
    }
  }
  CHECK(differs);
  // A scrambled net of size 2^12 has stratified marginals.
  for (double m : mean) CHECK(std::fabs(m - 0.5) < 1e-3);
}

TEST_CASE("scrambled Sobol' beats pseudo-random on a smooth integral") {
  auto f = [](const std::array<double, 4>& p) { return p[0] * p[1] + std::sin(p[2]) * p[3]; };
  const double exact = 0.25 + 0.5 * (1.0 - std::cos(1.0));
  ScrambledSobol s(4, 1);
  PseudoRandom r(4, 1);
  double qs = 0, qr = 0;
  std::array<double, 4> p{};
  const int n = 1 << 14;
  for (int i = 0; i < n; ++i) {
    s.next(p);
    qs += f(p) / n;
    r.next(p);
    qr += f(p) / n;
  }
  CHECK(std::fabs(qs - exact) < 1e-5);
  CHECK(std::fabs(qr - exact) < 1e-2);
}

TEST_CASE("seed derivation separates streams and replicates") {
  CHECK(derive_seed(0, 1, 0) != derive_seed(0, 1, 1));
  CHECK(derive_seed(0, 1, 0) != derive_seed(0, 2, 0));
  CHECK(derive_seed(0, 1, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(7, 3, 2) == derive_seed(7, 3, 2));
}
