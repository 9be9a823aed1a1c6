#include "bellqft/propagators.hpp"

#include <cmath>
#include <limits>

#include "bellqft/specfun.hpp"

namespace bellqft {

double pauli_jordan_point(SpacetimePoint p, MassParam m, LightCone on_cone) {
  const double lambda = interval(p);
  if (p.t == 0.0 || lambda < 0.0) return 0.0;
  const double sign = p.t > 0.0 ? 1.0 : -1.0;
  if (lambda == 0.0) {
    switch (on_cone) {
      case LightCone::Throw:
        throw LightConeError("pauli_jordan_point: point on the light cone");
      case LightCone::ThetaZero:
        return 0.0;
      case LightCone::ThetaOne:
        return -0.5 * sign;
    }
  }
  return -0.5 * sign * bessel_j0(m.value() * std::sqrt(lambda));
}

double hadamard_point(SpacetimePoint p, MassParam m) {
  const double lambda = interval(p);
  if (lambda == 0.0) throw LightConeError("hadamard_point: point on the light cone");
  if (lambda > 0.0) return -0.5 * bessel_y0(m.value() * std::sqrt(lambda));
  return bessel_k0(m.value() * std::sqrt(-lambda)) / kPi;
}

double hadamard_guarded(SpacetimePoint p, MassParam m, double guard) noexcept {
  const double lambda = interval(p);
  const double band = guard * std::fmax(1.0, p.t * p.t + p.x * p.x);
  const double abs_lambda = std::fabs(lambda);
  // Both branches share the leading term -(1/pi)(ln(z/2) + gamma) as z -> 0;
  // for tiny z the corrections are O(z^2 ln z) and below double precision.
  const double z2 = m.value() * m.value() * abs_lambda;
  if (abs_lambda < band || z2 < 1e-24) {
    const double safe = std::fmax(abs_lambda, std::numeric_limits<double>::min());
    return -(std::log(0.5 * m.value()) + 0.5 * std::log(safe) + kEulerGamma) / kPi;
  }
  const double z = std::sqrt(z2);
  if (lambda > 0.0) return -0.5 * bessel_y0(z);
  return bessel_k0(z) / kPi;
}

}  // namespace bellqft
