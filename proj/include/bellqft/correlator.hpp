#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "bellqft/kernels.hpp"
#include "bellqft/modular.hpp"
#include "bellqft/smear.hpp"

namespace bellqft {

/// Exponent data of <e^{ik phi(f)} e^{ip phi(g)}>: F = H(f,f), G = H(g,g),
/// X = H(f,g).
struct PairQuadratic {
  double F = 0.0;
  double G = 0.0;
  double X = 0.0;

  /// Throws DomainError if F or G is negative or X^2 > F G beyond round-off.
  void validate() const;
};

/// exp(-(k^2 F + p^2 G + 2 k p X) / 2).
double weyl_two_point(double k, double p, const PairQuadratic& q);

enum class PairMethod {
  NestedGaussKronrod,  // adaptive Gauss-Kronrod, p inner
  NestedTanhSinh,      // Boost tanh-sinh, k inner
};

struct CorrelatorOptions {
  PairMethod method = PairMethod::NestedGaussKronrod;
  double abs_tol = 1e-11;
};

/// <A B> = int dk dp sigma_hat(k) sigma_hat(p) weyl_two_point(k, p, q),
/// including the constant and single-integral terms of a nonzero atom weight.
/// std_error carries the quadrature error estimate.
/// Throws NumericalFailure if the requested tolerance is not met.
Estimate pair_correlator(const KernelFamily& fam, const PairQuadratic& q,
                         const CorrelatorOptions& opts = {});

/// Single-operator expectation int dk sigma_hat(k) e^{-k^2 F / 2}.
Estimate kernel_mean(const KernelFamily& fam, double F, const CorrelatorOptions& opts = {});

struct BellResult {
  double value = 0.0;
  /// <AB>, <A'B>, <AB'>, <A'B'>
  std::array<double, 4> terms{};
  double num_error = 0.0;
  KernelFamily family;
  std::vector<std::pair<std::string, std::string>> provenance;
};

/// <AB> + <A'B> + <AB'> - <A'B'> with the quadratics (f,g), (f',g),
/// (f,g'), (f',g') drawn from the Gram matrix.
BellResult bell_chsh(const KernelFamily& fam, const GramMatrix& g,
                     const CorrelatorOptions& opts = {});

/// bell_chsh on the closed-form modular Gram matrix.
BellResult tt_bell(const KernelFamily& fam, const BellParams& p,
                   const CorrelatorOptions& opts = {});

/// bell_chsh on gram_from_overlaps(p, o).
BellResult bell_from_overlaps(const KernelFamily& fam, const BellParams& p, const Overlaps& o,
                              const CorrelatorOptions& opts = {});

}  // namespace bellqft
