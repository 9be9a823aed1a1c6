#pragma once

#include <limits>

#include "bellqft/errors.hpp"

namespace bellqft {

struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
};

/// Field mass (inverse length). The default is the infrared cutoff used for
/// the diamond computations.
class MassParam {
 public:
  static constexpr double kInfraredDefault = 1e-8;

  constexpr MassParam() = default;
  explicit MassParam(double m) : m_(m) {
    if (!(m > 0.0) || m == std::numeric_limits<double>::infinity()) {
      throw DomainError("mass must be positive and finite");
    }
  }
  constexpr double value() const noexcept { return m_; }

 private:
  double m_ = kInfraredDefault;
};

/// How a pointwise evaluation treats lambda = 0 with t != 0.
enum class LightCone {
  ThetaOne,   // theta(0) = 1
  ThetaZero,  // theta(0) = 0
  Throw,      // raise LightConeError
};

/// lambda(t, x) = t^2 - x^2.
constexpr double interval(SpacetimePoint p) noexcept { return p.t * p.t - p.x * p.x; }

/// -1/2 sign(t) theta(lambda) J0(m sqrt(lambda)); zero at spacelike separation
/// and at t = 0.
double pauli_jordan_point(SpacetimePoint p, MassParam m, LightCone on_cone = LightCone::ThetaOne);

/// -1/2 theta(lambda) Y0(m sqrt(lambda)) + (1/pi) theta(-lambda) K0(m sqrt(-lambda)).
/// Throws LightConeError at lambda = 0, where the function diverges
/// logarithmically.
double hadamard_point(SpacetimePoint p, MassParam m);

/// Hadamard function for integrators. Inside the band
/// |lambda| < guard * max(1, t^2 + x^2) the leading small-argument form
/// -(1/pi)(ln(m sqrt|lambda| / 2) + gamma) is used, which is finite for any
/// lambda != 0 and clamps lambda = 0 to the smallest normal double.
double hadamard_guarded(SpacetimePoint p, MassParam m, double guard) noexcept;

}  // namespace bellqft
