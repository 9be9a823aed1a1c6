#include "bellqft/specfun.hpp"

#include <cmath>
#include <limits>

#include "bellqft/errors.hpp"

namespace bellqft {
namespace {

// Below this argument J0/Y0 use the power series (long double keeps the
// cancellation error near 1e-14); above it the Hankel expansion's smallest
// term is ~exp(-2x) and already negligible.
constexpr double kSeriesLimitJY = 16.0;
constexpr double kSeriesLimitK = 2.0;
constexpr double kAsymptoticLimitK = 16.0;

struct HankelPQ {
  long double p;
  long double q;
};

// P(0,x), Q(0,x) of the Hankel expansion, summed until the terms stop
// decreasing.
HankelPQ hankel_pq(long double x) {
  long double p = 1.0L;
  long double q = 0.0L;
  long double term = 1.0L;
  long double previous = std::numeric_limits<long double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= odd * odd / (k * 8.0L * x);
    if (term >= previous || term < 1e-22L) break;
    previous = term;
    // Signs: P = t0 - t2 + t4 ..., Q = -t1 + t3 - t5 ...
    switch (k % 4) {
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
      case 0: p += term; break;
    }
  }
  return {p, q};
}

struct SeriesJY {
  long double j0;
  long double y0_tail;  // (2/pi) * sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
};

SeriesJY series_jy(long double x) {
  const long double q = x * x / 4.0L;
  long double term = 1.0L;
  long double j0 = 1.0L;
  long double tail = 0.0L;
  long double harmonic = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    j0 += term;
    tail -= harmonic * term;
    if (std::fabs(term) * (1.0L + harmonic) < 1e-24L) break;
  }
  return {j0, tail * 2.0L / static_cast<long double>(kPi)};
}

long double k0_series(long double x) {
  const long double q = x * x / 4.0L;
  long double term = 1.0L;
  long double i0 = 1.0L;
  long double tail = 0.0L;
  long double harmonic = 0.0L;
  for (int k = 1; k < 100; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    i0 += term;
    tail += harmonic * term;
    if (term * (1.0L + harmonic) < 1e-24L * (i0 + tail)) break;
  }
  return -(std::log(x / 2.0L) + static_cast<long double>(kEulerGamma)) * i0 + tail;
}

// exp(x) K0(x) = int_0^inf exp(-2x sinh^2(t/2)) dt; the trapezoid rule
// converges geometrically for this entire integrand.
long double k0_scaled_trapezoid(long double x) {
  constexpr long double h = 0.1L;
  long double sum = 0.5L;
  for (int j = 1; j < 2000; ++j) {
    const long double s = std::sinh(0.5L * h * j);
    const long double value = std::exp(-2.0L * x * s * s);
    sum += value;
    if (value < 1e-22L) break;
  }
  return h * sum;
}

long double k0_asymptotic_scaled(long double x) {
  long double sum = 1.0L;
  long double term = 1.0L;
  long double previous = std::numeric_limits<long double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= -odd * odd / (k * 8.0L * x);
    if (std::fabs(term) >= previous || std::fabs(term) < 1e-22L) break;
    previous = std::fabs(term);
    sum += term;
  }
  return std::sqrt(static_cast<long double>(kPi) / (2.0L * x)) * sum;
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j0: non-finite argument");
  const long double ax = std::fabs(static_cast<long double>(x));
  if (ax <= kSeriesLimitJY) return static_cast<double>(series_jy(ax).j0);

  const auto [p, q] = hankel_pq(ax);
  const long double s = std::sin(ax);
  const long double c = std::cos(ax);
  // cos(x - pi/4) = (c + s)/sqrt2, sin(x - pi/4) = (s - c)/sqrt2
  const long double amplitude = std::sqrt(1.0L / (static_cast<long double>(kPi) * ax));
  return static_cast<double>(amplitude * (p * (c + s) - q * (s - c)));
}

double bessel_y0(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("bessel_y0: argument must be finite and positive");
  }
  const long double lx = x;
  if (lx <= kSeriesLimitJY) {
    const auto [j0, tail] = series_jy(lx);
    const long double log_term = std::log(lx / 2.0L) + static_cast<long double>(kEulerGamma);
    return static_cast<double>(2.0L / static_cast<long double>(kPi) * log_term * j0 + tail);
  }
  const auto [p, q] = hankel_pq(lx);
  const long double s = std::sin(lx);
  const long double c = std::cos(lx);
  const long double amplitude = std::sqrt(1.0L / (static_cast<long double>(kPi) * lx));
  return static_cast<double>(amplitude * (p * (s - c) + q * (c + s)));
}

double bessel_k0(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("bessel_k0: argument must be finite and positive");
  }
  const long double lx = x;
  if (lx <= kSeriesLimitK) return static_cast<double>(k0_series(lx));
  if (lx > 745.0L) return 0.0;
  const long double scaled =
      lx <= kAsymptoticLimitK ? k0_scaled_trapezoid(lx) : k0_asymptotic_scaled(lx);
  return static_cast<double>(scaled * std::exp(-lx));
}

double sech(double x) noexcept {
  const double e = std::exp(-std::fabs(x));
  return 2.0 * e / (1.0 + e * e);
}

}  // namespace bellqft
