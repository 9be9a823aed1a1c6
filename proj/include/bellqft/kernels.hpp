#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "bellqft/specfun.hpp"

namespace bellqft {

enum class Family { Sech, Lorentz, Gauss };

/// Which Gaussian pair the Gauss family uses. PaperKernel keeps the printed
/// momentum kernel (1/sqrt(pi)) e^{-k^2}, whose inverse transform is
/// e^{-x^2/4}; ExactPair uses (1/(2 sqrt(pi))) e^{-k^2/4} <-> e^{-x^2}.
enum class GaussMode { PaperKernel, ExactPair };

/// One of the bounded-operator families A = int dk sigma_hat(k) e^{ik phi}.
/// A nonzero atom_weight c0 represents c0 * 1 + (1 - |c0|) * A instead.
struct KernelFamily {
  Family id = Family::Lorentz;
  GaussMode gauss_mode = GaussMode::PaperKernel;
  double atom_weight = 0.0;

  /// Throws ConfigError unless atom_weight is in [-1, 1].
  void validate() const;

  /// "sech" | "lorentz" | "gauss-paper" | "gauss-exact"
  static KernelFamily from_name(std::string_view name);
  std::string name() const;
};

/// Momentum-space kernel sigma_hat(k).
double kernel_value(const KernelFamily& fam, double k) noexcept;

/// Position-space partner sigma(x) = int dk e^{ikx} sigma_hat(k).
double position_function(const KernelFamily& fam, double x) noexcept;

/// |k| beyond which the kernel's two-sided tail mass is below `mass`.
double kernel_cutoff(const KernelFamily& fam, double mass = 1e-17) noexcept;

/// Integrates int dk e^{ikx} sigma_hat(k) on each grid point and reports the
/// largest deviation from `target` (position_function when empty).
/// Throws NumericalFailure if a quadrature does not converge.
AccuracyReport verify_fourier_pair(const KernelFamily& fam, std::span<const double> grid,
                                   const std::function<double(double)>& target = {});

}  // namespace bellqft
