#include <doctest.h>

#include <cmath>

#include "bellqft/errors.hpp"
#include "bellqft/modular.hpp"

using namespace bellqft;

TEST_CASE("closed-form Gram entries") {
  auto g = tt_gram({1, 1, 1, 1, 0.0});
  CHECK(g.Hfg == 0.0);
  CHECK(g.Hff == 1.0);
  CHECK(g.Hgg == 1.0);
  g = tt_gram({1, 1, 1, 1, 1.0});
  CHECK(g.Hfg == 2.0);
  CHECK(g.Hff == 2.0);
  CHECK(overlap_coefficients(g).alpha == 1.0);
  g = tt_gram({0.024, 4.732, 0.086, 9.307, 0.884});
  CHECK(g.Hff == doctest::Approx(1.0261e-3).epsilon(1e-4));
  CHECK(g.Hfgp == 0.0);
  CHECK(g.Hfpg == 0.0);
  CHECK(g.Hfpgp == doctest::Approx(2 * 4.732 * 9.307 * 0.884));
  CHECK(g.PJfg == 0.0);
}

TEST_CASE("closed-form overlaps") {
  const Overlaps one = tt_overlaps(1.0);
  CHECK(one.alpha == 1.0);
  CHECK(one.delta == 1.0);
  CHECK(tt_overlaps(0.884).alpha == doctest::Approx(0.992).epsilon(5e-4));
  CHECK(tt_overlaps(1e-12).alpha < 1e-11);
  double previous = 0.0;
  for (double l = 0.01; l < 1.0; l += 0.01) {
    const double a = tt_overlaps(l).alpha;
    CHECK(a > previous);
    previous = a;
    const BellParams p{0.3, -1.7, 2.2, 0.9, l};
    const Overlaps o = overlap_coefficients(tt_gram(p));
    CHECK(std::fabs(std::fabs(o.alpha) - a) <= 1e-15);
    CHECK(std::fabs(std::fabs(o.delta) - a) <= 1e-15);
    CHECK(o.beta == 0.0);
    CHECK(o.gamma == 0.0);
  }
  CHECK_THROWS_AS(tt_overlaps(1.5), DomainError);
}

TEST_CASE("2x2 blocks are positive semidefinite") {
  for (double l = 0.0; l <= 1.0; l += 0.05) {
    const auto g = tt_gram({1.3, 0.2, -0.7, 5.0, l});
    CHECK(g.Hfg * g.Hfg <= g.Hff * g.Hgg * (1 + 1e-15));
    CHECK(g.Hfpgp * g.Hfpgp <= g.Hfpfp * g.Hgpgp * (1 + 1e-15));
  }
}

TEST_CASE("overlap-built Gram reduces to the closed form") {
  const BellParams p{0.024, 4.732, 0.086, 9.307, 0.884};
  const GramMatrix a = tt_gram(p);
  const GramMatrix b = gram_from_overlaps(p, tt_overlaps(p.lambda));
  CHECK(b.Hfg == doctest::Approx(a.Hfg).epsilon(1e-15));
  CHECK(b.Hfpgp == doctest::Approx(a.Hfpgp).epsilon(1e-15));
  CHECK(b.Hff == a.Hff);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((BellParams{1, 1, 1, 1, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((BellParams{1, 1, 1, 1, 0.0}.validate()), ConfigError);
  CHECK_THROWS_AS((BellParams{NAN, 1, 1, 1, 0.5}.validate()), ConfigError);
  CHECK_NOTHROW((BellParams{-1, 1, 1, 1, 0.5}.validate()));
}
