#pragma once

#include <string>

namespace bellqft {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

struct AccuracyReport {
  double max_abs_error = 0.0;
  std::string grid_description;
};

// Bessel functions of order zero. Accuracy contracts:
//   bessel_j0, bessel_y0: absolute error < 1e-10 for |x| <= 1e4
//   bessel_k0:            relative error < 1e-10 for 1e-12 <= x <= 700
// Non-finite input (and x <= 0 for Y0/K0) throws DomainError.
double bessel_j0(double x);
double bessel_y0(double x);
double bessel_k0(double x);

/// 1/cosh(x); returns 0 once cosh overflows.
double sech(double x) noexcept;

}  // namespace bellqft
