#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bellqft/propagators.hpp"

namespace bellqft {

enum class Side { Right, Left };

/// Smooth bump exp(-sharpness / (R^2 - rho^2)) on the causal diamond
/// rho = |x -+ R| + |t - t_shift| < R (Right centred at x = R, Left at x = -R).
/// Right and Left diamonds of equal size touch only at the origin.
/// `t_shift` translates the diamond in time; it is zero for the tangent pair.
struct DiamondBump {
  Side side = Side::Right;
  double R = 1.0;
  double sharpness = 1.0;
  double t_shift = 0.0;

  void validate() const;  // throws ConfigError
  double center_x() const noexcept { return side == Side::Right ? R : -R; }
  /// Coordinate area of the diamond, 2 R^2 (the Jacobian of lightcone_coords).
  double area() const noexcept { return 2.0 * R * R; }

  /// Parses "side=right,R=1,sharpness=2[,t_shift=0]" (keys also accept a/b
  /// for sharpness).
  static DiamondBump parse(std::string_view spec);
  std::string to_string() const;

  friend bool operator==(const DiamondBump&, const DiamondBump&) = default;
};

double bump_value(const DiamondBump& b, SpacetimePoint p) noexcept;

/// Unit square -> diamond. For Right: x + t = 2R u, x - t = 2R v; Left is
/// the mirror image x -> -x.
SpacetimePoint lightcone_coords(const DiamondBump& b, double u, double v) noexcept;

struct UnitSquarePoint {
  double u, v;
};

/// Inverse of lightcone_coords.
UnitSquarePoint unit_coords(const DiamondBump& b, SpacetimePoint p) noexcept;

/// A bump scaled so that its squared Hadamard norm equals
/// amplitude^2 (1 + lambda^2).
class NormalizedTestFunction {
 public:
  /// `hadamard_norm` is H(bump, bump) and must be positive.
  NormalizedTestFunction(DiamondBump bump, double amplitude, double lambda_factor,
                         double hadamard_norm);

  const DiamondBump& bump() const noexcept { return bump_; }
  double amplitude() const noexcept { return amplitude_; }
  double lambda_factor() const noexcept { return lambda_; }
  double norm_cache() const noexcept { return norm_; }
  /// Multiplier applied to the raw bump.
  double scale() const noexcept;
  double operator()(SpacetimePoint p) const noexcept { return scale() * bump_value(bump_, p); }

 private:
  DiamondBump bump_;
  double amplitude_;
  double lambda_;
  double norm_;
};

}  // namespace bellqft
