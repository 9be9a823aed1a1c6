#include "bellqft/kernels.hpp"

#include <cmath>
#include <cstdio>

#include "bellqft/errors.hpp"
#include "bellqft/quadrature.hpp"

namespace bellqft {

namespace {
const double kInvSqrtPi = 1.0 / std::sqrt(kPi);
}

void KernelFamily::validate() const {
  if (!(atom_weight >= -1.0 && atom_weight <= 1.0)) {
    throw ConfigError("kernel atom_weight must lie in [-1, 1]");
  }
}

KernelFamily KernelFamily::from_name(std::string_view name) {
  if (name == "sech") return {Family::Sech};
  if (name == "lorentz") return {Family::Lorentz};
  if (name == "gauss-paper" || name == "gauss") return {Family::Gauss, GaussMode::PaperKernel};
  if (name == "gauss-exact") return {Family::Gauss, GaussMode::ExactPair};
  throw ConfigError("unknown kernel family '" + std::string(name) +
                    "' (expected sech, lorentz, gauss-paper or gauss-exact)");
}

std::string KernelFamily::name() const {
  switch (id) {
    case Family::Sech: return "sech";
    case Family::Lorentz: return "lorentz";
    case Family::Gauss: return gauss_mode == GaussMode::PaperKernel ? "gauss-paper" : "gauss-exact";
  }
  return "unknown";
}

double kernel_value(const KernelFamily& fam, double k) noexcept {
  switch (fam.id) {
    case Family::Sech:
      return 0.5 * sech(0.5 * kPi * k);
    case Family::Lorentz:
      return 0.5 * std::exp(-std::fabs(k));
    case Family::Gauss:
      if (fam.gauss_mode == GaussMode::PaperKernel) return kInvSqrtPi * std::exp(-k * k);
      return 0.5 * kInvSqrtPi * std::exp(-0.25 * k * k);
  }
  return 0.0;
}

double position_function(const KernelFamily& fam, double x) noexcept {
  switch (fam.id) {
    case Family::Sech:
      return sech(x);
    case Family::Lorentz:
      return 1.0 / (1.0 + x * x);
    case Family::Gauss:
      if (fam.gauss_mode == GaussMode::PaperKernel) return std::exp(-0.25 * x * x);
      return std::exp(-x * x);
  }
  return 0.0;
}

double kernel_cutoff(const KernelFamily& fam, double mass) noexcept {
  const double log_inv = std::log(1.0 / mass);
  switch (fam.id) {
    case Family::Sech:
      // tail mass <= (4/pi) e^{-pi K / 2}
      return (2.0 / kPi) * (log_inv + std::log(4.0 / kPi));
    case Family::Lorentz:
      return log_inv;  // tail mass = e^{-K}
    case Family::Gauss:
      // erfc(K) <= e^{-K^2}; the exact pair is stretched by 2
      return (fam.gauss_mode == GaussMode::PaperKernel ? 1.0 : 2.0) * std::sqrt(log_inv);
  }
  return log_inv;
}

AccuracyReport verify_fourier_pair(const KernelFamily& fam, std::span<const double> grid,
                                   const std::function<double(double)>& target) {
  const double tail = 1e-14;
  const double cutoff = kernel_cutoff(fam, tail);
  AccuracyReport report;
  for (double x : grid) {
    // sigma_hat is even, so the transform is 2 int_0^K cos(kx) sigma_hat(k) dk.
    auto integrand = [&](double k) { return 2.0 * std::cos(k * x) * kernel_value(fam, k); };
    const auto r = quad::integrate(integrand, 0.0, cutoff, {1e-13, 1e-12, 20000});
    if (!r.converged) {
      throw NumericalFailure("verify_fourier_pair: quadrature did not converge", r.abs_error);
    }
    const double expected = target ? target(x) : position_function(fam, x);
    report.max_abs_error = std::fmax(report.max_abs_error, std::fabs(r.value - expected));
  }
  char buffer[160];
  if (grid.empty()) {
    std::snprintf(buffer, sizeof buffer, "%s: empty grid", fam.name().c_str());
  } else {
    std::snprintf(buffer, sizeof buffer, "%s: %zu points in [%g, %g], k-cutoff %.3f (tail < %g)",
                  fam.name().c_str(), grid.size(), grid.front(), grid.back(), cutoff, tail);
  }
  report.grid_description = buffer;
  return report;
}

}  // namespace bellqft
