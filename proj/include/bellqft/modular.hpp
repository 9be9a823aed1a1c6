#pragma once

#include "bellqft/smear.hpp"

namespace bellqft {

/// Amplitudes of f, f', g, g' and the spectral parameter lambda of the
/// modular construction. Amplitudes may carry either sign.
struct BellParams {
  double eta = 0.0;
  double eta_p = 0.0;
  double sigma = 0.0;
  double sigma_p = 0.0;
  double lambda = 0.5;

  /// Throws ConfigError unless lambda is in (0, 1) and amplitudes are finite.
  void validate() const;
};

/// Closed-form Gram matrix of the modular construction:
///   ||f||^2 = eta^2 (1 + lambda^2), ... , <f|g> = 2 eta sigma lambda,
///   <f'|g'> = 2 eta' sigma' lambda, <f|g'> = <f'|g> = 0, all PJ entries 0.
/// Accepts lambda in the closed interval [0, 1] (DomainError otherwise).
GramMatrix tt_gram(const BellParams& p);

/// (2 lambda / (1 + lambda^2), 0, 0, 2 lambda / (1 + lambda^2)).
Overlaps tt_overlaps(double lambda);

/// Gram matrix of normalized bumps with the given overlap coefficients:
/// norms as in tt_gram and cross entries amplitude products times
/// (1 + lambda^2) times the corresponding overlap.
GramMatrix gram_from_overlaps(const BellParams& p, const Overlaps& o);

}  // namespace bellqft
