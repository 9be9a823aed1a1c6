#pragma once

// Extended-precision reference values for the order-zero Bessel functions:
// 50-digit power series up to x = 25, the double-precision Boost.Math
// implementation beyond.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

// 50-digit power series; accurate well beyond double precision for x <= 25.
inline mp j0_series(const mp& x) {
  const mp q = x * x / 4;
  mp term = 1, sum = 1;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (k * k);
    sum += term;
    if (abs(term) < 1e-48 * abs(sum) && k > q) break;
  }
  return sum;
}

inline mp i0_series(const mp& x) {
  const mp q = x * x / 4;
  mp term = 1, sum = 1;
  for (int k = 1; k < 400; ++k) {
    term *= q / (k * k);
    sum += term;
    if (term < 1e-48 * sum) break;
  }
  return sum;
}

// sum_{k>=1} s^k H_k q^k / (k!)^2 with s = -1 (Y0) or +1 (K0)
inline mp harmonic_series(const mp& x, int sign) {
  const mp q = x * x / 4;
  mp term = 1, harmonic = 0, sum = 0;
  for (int k = 1; k < 400; ++k) {
    term *= sign * q / (k * k);
    harmonic += mp(1) / k;
    sum += term * harmonic;
    if (abs(term * harmonic) < 1e-48 * (abs(sum) + 1) && k > q) break;
  }
  return sum;
}

inline const mp kPiMp = boost::math::constants::pi<mp>();
inline const mp kGammaMp = boost::math::constants::euler<mp>();

inline double j0_oracle(double x) {
  if (x > 25) return boost::math::cyl_bessel_j(0, x);
  return static_cast<double>(j0_series(mp(x)));
}

inline double y0_oracle(double x) {
  if (x > 25) return boost::math::cyl_neumann(0, x);
  const mp X(x);
  return static_cast<double>(2 / kPiMp * ((log(X / 2) + kGammaMp) * j0_series(X) - harmonic_series(X, -1)));
}

inline double k0_oracle(double x) {
  if (x > 25) return boost::math::cyl_bessel_k(0, x);
  const mp X(x);
  return static_cast<double>(-(log(X / 2) + kGammaMp) * i0_series(X) + harmonic_series(X, 1));
}


}  // namespace oracle
