#include "bellqft/modular.hpp"

#include <cmath>

#include "bellqft/errors.hpp"

namespace bellqft {

void BellParams::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in (0, 1)");
  for (double a : {eta, eta_p, sigma, sigma_p}) {
    if (!std::isfinite(a)) throw ConfigError("amplitudes must be finite");
  }
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
}

}  // namespace

GramMatrix tt_gram(const BellParams& p) {
  check_lambda(p.lambda);
  const double norm = 1.0 + p.lambda * p.lambda;
  GramMatrix g;
  g.Hff = p.eta * p.eta * norm;
  g.Hfpfp = p.eta_p * p.eta_p * norm;
  g.Hgg = p.sigma * p.sigma * norm;
  g.Hgpgp = p.sigma_p * p.sigma_p * norm;
  g.Hfg = 2.0 * p.eta * p.sigma * p.lambda;
  g.Hfpgp = 2.0 * p.eta_p * p.sigma_p * p.lambda;
  return g;
}

Overlaps tt_overlaps(double lambda) {
  check_lambda(lambda);
  const double a = 2.0 * lambda / (1.0 + lambda * lambda);
  return {a, 0.0, 0.0, a};
}

GramMatrix gram_from_overlaps(const BellParams& p, const Overlaps& o) {
  check_lambda(p.lambda);
  const double norm = 1.0 + p.lambda * p.lambda;
  GramMatrix g;
  g.Hff = p.eta * p.eta * norm;
  g.Hfpfp = p.eta_p * p.eta_p * norm;
  g.Hgg = p.sigma * p.sigma * norm;
  g.Hgpgp = p.sigma_p * p.sigma_p * norm;
  g.Hfg = p.eta * p.sigma * norm * o.alpha;
  g.Hfpg = p.eta_p * p.sigma * norm * o.beta;
  g.Hfgp = p.eta * p.sigma_p * norm * o.gamma;
  g.Hfpgp = p.eta_p * p.sigma_p * norm * o.delta;
  return g;
}

}  // namespace bellqft
